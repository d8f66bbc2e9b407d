"""JSON-lines trace files: a versioned header line, then one record per round."""

from __future__ import annotations

import json
from dataclasses import dataclass

from .boosting import BoostResult, RoundTrace
from .errors import ParseError

SCHEMA_VERSION = 1


@dataclass
class TraceFile:
    header: dict
    rounds: list[dict]


def write_trace(result: BoostResult, n: int, path: str, k: float | None = None,
                alpha_mode: str | None = None, n_b: int | None = None) -> None:
    header = {
        "schema": SCHEMA_VERSION,
        "algorithm": result.algorithm.value,
        "geometry": result.geometry.kind.value,
        "n": n,
    }
    if k is not None:
        header["k"] = k
    if alpha_mode is not None:
        header["alpha_mode"] = alpha_mode
    if n_b is not None:
        header["n_b"] = n_b
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps(header, sort_keys=True) + "\n")
        for tr in result.traces:
            fh.write(json.dumps(_record(tr), sort_keys=True) + "\n")


def _record(tr: RoundTrace) -> dict:
    rec = {
        "t": tr.t,
        "gamma": tr.gamma,
        "eta": tr.eta,
        "train_error": tr.train_error,
        "bound": tr.bound,
        "max_weight": tr.max_weight,
        "nnz": tr.nnz,
    }
    for key in ("margin", "eps_a", "eps_b", "y_l1"):
        value = getattr(tr, key)
        if value is not None:
            rec[key] = value
    return rec


def read_trace(path: str) -> TraceFile:
    with open(path, encoding="utf-8") as fh:
        lines = fh.readlines()
    if not lines:
        raise ParseError("empty trace file", 1)
    try:
        header = json.loads(lines[0])
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad header: {exc}", 1) from None
    if not isinstance(header, dict) or header.get("schema") != SCHEMA_VERSION:
        raise ParseError("missing or unsupported schema header", 1)
    rounds = []
    last_t = 0
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        try:
            rec = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad record: {exc}", lineno) from None
        if rec.get("t") != last_t + 1:
            raise ParseError(f"round numbers must be consecutive, got {rec.get('t')}", lineno)
        last_t = rec["t"]
        rounds.append(rec)
    return TraceFile(header=header, rounds=rounds)
