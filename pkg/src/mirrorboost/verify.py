"""Re-derive every training-error bound from a stored trace and check it.

The trace carries the edge sequence (plus ||y||_1 where relevant), which is
all the bounds depend on; the verifier recomputes them from scratch rather
than trusting the bound column written at run time.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .trace_io import TraceFile

SLACK = 1e-9


@dataclass
class FamilyReport:
    family: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.family}: {self.detail}"


def _fail_round(rounds, check) -> int | None:
    for rec in rounds:
        if not check(rec):
            return rec["t"]
    return None


def verify_trace(trace: TraceFile) -> list[FamilyReport]:
    algo = trace.header["algorithm"]
    geometry = trace.header["geometry"]
    rounds = trace.rounds
    reports: list[FamilyReport] = []

    if not rounds:
        return [FamilyReport("empty-trace", True, "no rounds recorded; vacuous pass")]

    if algo in ("maboost-active", "maboost-lazy", "smooth", "combined"):
        sum_gamma_sq = 0.0
        bounds = []
        for rec in rounds:
            sum_gamma_sq += rec["gamma"] ** 2
            if geometry == "entropy":
                bounds.append(math.exp(-0.5 * sum_gamma_sq))
            else:
                bounds.append(1.0 / (1.0 + sum_gamma_sq))
        if algo == "combined":
            # the edge sequence bounds the primary-subset error, scaled by
            # the feasibility of its error distribution inside the mixed set
            n = trace.header["n"]
            first = _fail_round(
                rounds,
                lambda rec: rec["eps_a"]
                <= n / (n - _nb(trace)) * bounds[rec["t"] - 1] + SLACK,
            )
            family = f"combined-primary-error ({geometry})"
        elif algo == "smooth":
            k = trace.header["k"]
            first = _fail_round(
                rounds,
                lambda rec: rec["train_error"] <= bounds[rec["t"] - 1] + SLACK
                or rec["train_error"] < 1.0 / k,
            )
            family = f"smooth-training-error ({geometry})"
        else:
            first = _fail_round(
                rounds, lambda rec: rec["train_error"] <= bounds[rec["t"] - 1] + SLACK
            )
            family = f"training-error ({geometry})"
        reports.append(_report(family, first, len(rounds)))

    elif algo == "sparse":
        c = 0.25 if trace.header.get("alpha_mode") == "half" else 1.0
        n = trace.header["n"]
        sum_term = 0.0
        bounds = []
        for rec in rounds:
            sum_term += rec["gamma"] ** 2 * rec["y_l1"] ** 2
            bounds.append(1.0 / (1.0 + c * sum_term))
        first = _fail_round(
            rounds, lambda rec: rec["train_error"] <= bounds[rec["t"] - 1] + SLACK
        )
        reports.append(_report("sparse-training-error", first, len(rounds)))
        if c == 1.0:
            # ||y_{t+1}||_1 >= 1/N while the ensemble still errs; round t+1's
            # y_l1 column holds the post-update mass of round t
            first = None
            for prev, rec in zip(rounds, rounds[1:]):
                if prev["train_error"] > 0 and rec["y_l1"] < 1.0 / n - SLACK:
                    first = rec["t"]
                    break
            reports.append(_report("sparse-mass-floor", first, len(rounds)))

    elif algo == "mada":
        n = trace.header["n"]
        first = _fail_round(
            rounds, lambda rec: rec["y_l1"] >= n * rec["train_error"] - SLACK
        )
        reports.append(_report("mada-mass-floor", first, len(rounds)))
        gamma_min = math.inf
        first = None
        for rec in rounds:
            gamma_min = min(gamma_min, rec["gamma"])
            if rec["train_error"] ** 2 > 1.0 / (rec["t"] * gamma_min**2) + SLACK:
                first = rec["t"]
                break
        reports.append(_report("mada-convergence-rate", first, len(rounds)))

    elif algo == "maxmargin":
        reports.append(
            FamilyReport(
                "maxmargin",
                True,
                "no per-round error bound applies to the margin schedule; "
                f"final margin {rounds[-1].get('margin')}",
            )
        )
    else:
        reports.append(FamilyReport(algo, False, "unknown algorithm in header"))
    return reports


def _nb(trace: TraceFile) -> int:
    # secondary-subset size is recoverable from eps_b granularity only if
    # stored; the header carries it when the trainer knew it
    return trace.header.get("n_b", 0)


def _report(family: str, first_bad: int | None, total: int) -> FamilyReport:
    if first_bad is None:
        return FamilyReport(family, True, f"{total} rounds within bounds")
    return FamilyReport(family, False, f"first violation at round {first_bad}")
