"""The five boosters built on the geometry, projection and stump modules.

All boosters share the same skeleton: train a stump on the current
distribution, compute its edge, take an additive step in the dual
coordinates of the chosen geometry, and project back onto the algorithm's
constraint set. They differ in the step-size schedule, the constraint set,
and the auxiliary state (projected weights, unprojected dual point, or an
unnormalized positive vector). Every run appends a per-round trace and
asserts the applicable training-error bound as it goes.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .data import Dataset
from .errors import (
    BoundViolationError,
    ConfigurationError,
    NoWeakLearnabilityError,
    UsageError,
)
from .geometry import Geometry, GeometryKind
from .projection import project_mixed, project_orthant_l1, project_simplex
from .stumps import Stump, edge, loss_vector, sign_pm, train_stump

EDGE_TOL = 1e-12
BOUND_SLACK = 1e-9


class Algorithm(enum.Enum):
    MABOOST_ACTIVE = "maboost-active"
    MABOOST_LAZY = "maboost-lazy"
    MAX_MARGIN = "maxmargin"
    SMOOTH = "smooth"
    COMBINED = "combined"
    SPARSE = "sparse"
    MADA = "mada"


class AlphaMode(enum.Enum):
    ZERO = "zero"
    HALF = "half"


class MadaEta(enum.Enum):
    PREVIOUS_ERROR = "previous_error"
    FIXED_POINT = "fixed_point"


@dataclass
class BoosterConfig:
    algorithm: Algorithm
    geometry: Geometry
    rounds: int
    target_error: float = 0.0
    k: float | None = None               # smoothness parameter (smooth / combined)
    alpha_mode: AlphaMode | None = None  # sparse only
    mada_eta: MadaEta = MadaEta.PREVIOUS_ERROR

    def validate(self) -> None:
        if self.rounds < 1:
            raise ConfigurationError("rounds must be >= 1")
        if not 0.0 <= self.target_error <= 1.0:
            raise ConfigurationError("target_error must be in [0, 1]")
        if self.algorithm is Algorithm.SPARSE:
            if self.geometry.kind is not GeometryKind.QUADRATIC:
                raise ConfigurationError("sparse boosting requires the quadratic geometry")
            if self.alpha_mode is None:
                raise ConfigurationError("sparse boosting requires an alpha mode")
        if self.algorithm is Algorithm.MADA:
            if self.geometry.kind is not GeometryKind.NEGATIVE_ENTROPY:
                raise ConfigurationError("the MadaBoost variant requires the entropy geometry")
        if self.algorithm in (Algorithm.SMOOTH, Algorithm.COMBINED):
            if self.k is None or self.k < 1.0:
                raise ConfigurationError("smoothness parameter k must be >= 1")
        if self.algorithm is Algorithm.SMOOTH and self.k is not None:
            if self.target_error < 1.0 / self.k:
                raise ConfigurationError(
                    "smooth boosting requires target_error >= 1/k"
                )


@dataclass
class RoundTrace:
    t: int
    gamma: float
    eta: float
    train_error: float
    bound: float | None
    max_weight: float
    nnz: int
    margin: float | None = None
    eps_a: float | None = None
    eps_b: float | None = None
    y_l1: float | None = None


@dataclass
class BoostResult:
    algorithm: Algorithm
    geometry: Geometry
    hypotheses: list[tuple[Stump, float]] = field(default_factory=list)
    weights: np.ndarray | None = None
    traces: list[RoundTrace] = field(default_factory=list)
    status: str = "max_rounds"

    @property
    def final_error(self) -> float:
        return self.traces[-1].train_error if self.traces else 1.0


def predict(hypotheses: list[tuple[Stump, float]], features: np.ndarray) -> np.ndarray:
    """Sign of the weighted vote over all stored hypotheses; sign(0) = +1."""
    if not hypotheses:
        raise UsageError("cannot predict with an empty ensemble")
    return sign_pm(vote_score(hypotheses, features))


def vote_score(hypotheses: list[tuple[Stump, float]], features: np.ndarray) -> np.ndarray:
    score = np.zeros(features.shape[0])
    for h, eta in hypotheses:
        score += eta * h.predict(features)
    return score


def ensemble_margin(hypotheses: list[tuple[Stump, float]], dataset: Dataset) -> float:
    """Minimum normalized signed vote min_j a_j f(x_j) / sum_t eta_t."""
    if not hypotheses:
        raise UsageError("cannot compute the margin of an empty ensemble")
    score = vote_score(hypotheses, dataset.features)
    eta_sum = sum(eta for _, eta in hypotheses)
    return float(np.min(dataset.labels * score) / eta_sum)


def _error(score: np.ndarray, labels: np.ndarray) -> float:
    return float(np.mean(sign_pm(score) != labels))


def _check_bound(err: float, bound: float, t: int, what: str) -> None:
    if err > bound + BOUND_SLACK:
        raise BoundViolationError(
            f"round {t}: {what} {err:.6g} exceeds its bound {bound:.6g}"
        )


def worst_margin_reference_divergence(g: Geometry, n: int) -> float:
    """B_R(e_i, uniform): the constant C in the margin accuracy gap."""
    if g.kind is GeometryKind.QUADRATIC:
        return 0.5 * (1.0 - 1.0 / n)
    return math.log(n)


def margin_accuracy_gap(t: int, dual_bound: float, c: float, gamma_min: float) -> float:
    """The accuracy level nu(T) of the max-margin schedule.

    nu = (1 + log T) / (2 sqrt(T+1) - 2) * gamma_min
         + L * C / (gamma_min * (sqrt(T+1) - 1)).
    """
    root = math.sqrt(t + 1.0) - 1.0
    return (1.0 + math.log(t)) / (2.0 * root) * gamma_min + dual_bound * c / (
        gamma_min * root
    )


def run(config: BoosterConfig, dataset: Dataset) -> BoostResult:
    """Dispatch to the booster selected by the config."""
    config.validate()
    if config.algorithm is Algorithm.SPARSE:
        return run_sparse(config, dataset)
    if config.algorithm is Algorithm.MADA:
        return run_mada(config, dataset)
    return _run_projected(config, dataset)


def run_maboost(config: BoosterConfig, dataset: Dataset) -> BoostResult:
    if config.algorithm not in (Algorithm.MABOOST_ACTIVE, Algorithm.MABOOST_LAZY):
        raise ConfigurationError("run_maboost expects an active or lazy config")
    return _run_projected(config, dataset)


def run_max_margin(config: BoosterConfig, dataset: Dataset) -> BoostResult:
    if config.algorithm is not Algorithm.MAX_MARGIN:
        raise ConfigurationError("run_max_margin expects the maxmargin algorithm")
    return _run_projected(config, dataset)


def run_smooth(config: BoosterConfig, dataset: Dataset) -> BoostResult:
    if config.algorithm is not Algorithm.SMOOTH:
        raise ConfigurationError("run_smooth expects the smooth algorithm")
    return _run_projected(config, dataset)


def run_combined(config: BoosterConfig, dataset: Dataset) -> BoostResult:
    if config.algorithm is not Algorithm.COMBINED:
        raise ConfigurationError("run_combined expects the combined algorithm")
    return _run_projected(config, dataset)


def _run_projected(config: BoosterConfig, dataset: Dataset) -> BoostResult:
    """Shared loop for active/lazy MABoost, max-margin, smooth and combined."""
    algo = config.algorithm
    g = config.geometry
    entropic = g.kind is GeometryKind.NEGATIVE_ENTROPY
    features, labels = dataset.features, dataset.labels
    n = dataset.n
    dual_bound = g.dual_norm_sq_bound(n)

    caps = None
    if algo is Algorithm.SMOOTH:
        caps = np.full(n, config.k / n)
    elif algo is Algorithm.COMBINED:
        if dataset.subset_flags is None:
            raise ConfigurationError("combined boosting requires subset flags")
        caps = np.where(dataset.subset_flags, config.k / n, np.inf)
    in_b = dataset.subset_flags if algo is Algorithm.COMBINED else None

    w = np.full(n, 1.0 / n)
    lazy = algo is Algorithm.MABOOST_LAZY
    if lazy:
        # dual trajectory of the unprojected point; log-space under entropy
        # because the accumulated exponent is unbounded
        log_z = np.full(n, -math.log(n))
        z = np.full(n, 1.0 / n)

    result = BoostResult(algorithm=algo, geometry=g)
    score = np.zeros(n)
    sum_gamma_sq = 0.0
    sum_eta = 0.0
    for t in range(1, config.rounds + 1):
        h = train_stump(features, labels, w)
        d = loss_vector(features, labels, h)
        gamma = edge(w, d)
        if gamma <= EDGE_TOL:
            if t == 1:
                raise NoWeakLearnabilityError(
                    "the weak learner found no hypothesis with positive edge"
                )
            result.status = "zero_edge"
            break

        if algo is Algorithm.MAX_MARGIN:
            eta = gamma / (dual_bound * math.sqrt(t))
        else:
            eta = gamma / dual_bound
        result.hypotheses.append((h, eta))
        score += eta * h.predict(features)
        err = _error(score, labels)
        sum_gamma_sq += gamma * gamma
        sum_eta += eta

        # weight update: additive dual step, then Bregman projection
        if entropic:
            if lazy:
                log_z += eta * d
                shifted = np.exp(log_z - log_z.max())
                w = shifted / shifted.sum()
            else:
                zvec = w * np.exp(eta * d)
                if caps is None:
                    w = project_simplex(g, zvec)
                else:
                    w = project_mixed(g, zvec, caps)
        else:
            if lazy:
                z = z + eta * d
                w = project_simplex(g, z)
            else:
                zvec = w + eta * d
                if caps is None:
                    w = project_simplex(g, zvec)
                else:
                    w = project_mixed(g, zvec, caps)

        trace = RoundTrace(
            t=t,
            gamma=gamma,
            eta=eta,
            train_error=err,
            bound=None,
            max_weight=float(w.max()),
            nnz=int(np.count_nonzero(w)),
        )

        if algo is Algorithm.MAX_MARGIN:
            trace.margin = float(np.min(labels * score) / sum_eta)
        elif algo is Algorithm.COMBINED:
            n_a = int((~in_b).sum())
            n_b = n - n_a
            eps_a = _error(score[~in_b], labels[~in_b]) if n_a else 0.0
            eps_b = _error(score[in_b], labels[in_b]) if n_b else 0.0
            trace.eps_a = eps_a
            trace.eps_b = eps_b
            if n_a:
                if entropic:
                    trace.bound = min(1.0, n / n_a * math.exp(-0.5 * sum_gamma_sq))
                else:
                    trace.bound = min(1.0, n / (n_a * (1.0 + sum_gamma_sq)))
                _check_bound(eps_a, trace.bound, t, "primary-subset error")
        else:
            if entropic:
                trace.bound = math.exp(-0.5 * sum_gamma_sq)
            else:
                trace.bound = 1.0 / (1.0 + sum_gamma_sq)
            if algo is Algorithm.SMOOTH:
                # the bound argument needs the error distribution inside the
                # capped simplex, which holds while err >= 1/k
                if err >= 1.0 / config.k:
                    _check_bound(err, trace.bound, t, "training error")
            else:
                _check_bound(err, trace.bound, t, "training error")
        result.traces.append(trace)

        if algo is Algorithm.MAX_MARGIN:
            continue  # the margin schedule runs its full budget
        if algo is Algorithm.COMBINED:
            if (
                trace.eps_a <= config.target_error
                and trace.eps_b <= 1.0 / config.k
            ):
                result.status = "target_reached"
                break
        elif err <= config.target_error:
            result.status = "target_reached"
            break

    result.weights = w
    return result


def run_sparse(config: BoosterConfig, dataset: Dataset) -> BoostResult:
    """l1-regularized booster over the positive orthant with normalization.

    Keeps an unnormalized nonnegative vector y; trains on w = y / ||y||_1,
    applies the additive step z = y + eta d, then the nonnegative
    soft-threshold with penalty alpha * eta. The bound constant is c = 1
    with no explicit penalty and c = 1/4 with the half-edge penalty.
    """
    config.validate()
    features, labels = dataset.features, dataset.labels
    n = dataset.n
    half = config.alpha_mode is AlphaMode.HALF
    c = 0.25 if half else 1.0

    y = np.full(n, 1.0 / n)
    score = np.zeros(n)
    sum_term = 0.0
    result = BoostResult(algorithm=config.algorithm, geometry=config.geometry)
    for t in range(1, config.rounds + 1):
        y_l1 = float(y.sum())
        if y_l1 <= 0.0:
            result.status = "collapsed"
            break
        w = y / y_l1
        h = train_stump(features, labels, w)
        d = loss_vector(features, labels, h)
        gamma = edge(w, d)
        if gamma <= EDGE_TOL:
            if t == 1:
                raise NoWeakLearnabilityError(
                    "the weak learner found no hypothesis with positive edge"
                )
            result.status = "zero_edge"
            break

        if half:
            eta = gamma * y_l1 / (2.0 * n)
            alpha = min(1.0, 0.5 * gamma * y_l1)
        else:
            eta = gamma * y_l1 / n
            alpha = 0.0
        result.hypotheses.append((h, eta))
        score += eta * h.predict(features)
        err = _error(score, labels)

        z = y + eta * d
        y = project_orthant_l1(z, alpha * eta)

        sum_term += gamma * gamma * y_l1 * y_l1
        bound = 1.0 / (1.0 + c * sum_term)
        _check_bound(err, bound, t, "training error")
        if not half and err > 0.0 and y.sum() < 1.0 / n - BOUND_SLACK:
            raise BoundViolationError(
                f"round {t}: ||y||_1 = {y.sum():.6g} fell below 1/N with error {err:.6g}"
            )

        result.traces.append(
            RoundTrace(
                t=t,
                gamma=gamma,
                eta=eta,
                train_error=err,
                bound=bound,
                max_weight=float(w.max()),
                nnz=int(np.count_nonzero(y)),
                y_l1=y_l1,
            )
        )
        if err <= config.target_error:
            result.status = "target_reached"
            break

    result.weights = y
    return result


def run_mada(config: BoosterConfig, dataset: Dataset) -> BoostResult:
    """Lazy entropic booster with the hypercube-then-simplex double projection.

    The dual point accumulates additively (kept in log space); each round
    clamps it to the unit hypercube and normalizes. The step size couples to
    the current ensemble error: eta_t = eps * gamma_t, where eps is the
    previous round's ensemble error by default or a one-step fixed-point
    refinement of the circular definition.
    """
    config.validate()
    features, labels = dataset.features, dataset.labels
    n = dataset.n
    log_z = np.zeros(n)
    y = np.ones(n)
    w = y / n
    score = np.zeros(n)
    prev_err = 1.0  # ensemble error before any hypothesis, taken pessimistically
    result = BoostResult(algorithm=config.algorithm, geometry=config.geometry)
    for t in range(1, config.rounds + 1):
        h = train_stump(features, labels, w)
        d = loss_vector(features, labels, h)
        gamma = edge(w, d)
        if gamma <= EDGE_TOL:
            if t == 1:
                raise NoWeakLearnabilityError(
                    "the weak learner found no hypothesis with positive edge"
                )
            result.status = "zero_edge"
            break

        pred = h.predict(features)
        eta = prev_err * gamma
        if config.mada_eta is MadaEta.FIXED_POINT:
            provisional = _error(score + eta * pred, labels)
            eta = provisional * gamma
        result.hypotheses.append((h, eta))
        score += eta * pred
        err = _error(score, labels)

        log_z += eta * d
        y = np.exp(np.minimum(log_z, 0.0))
        y_l1 = float(y.sum())
        w = y / y_l1
        if y_l1 < n * err - BOUND_SLACK:
            raise BoundViolationError(
                f"round {t}: ||y||_1 = {y_l1:.6g} fell below N * error = {n * err:.6g}"
            )

        result.traces.append(
            RoundTrace(
                t=t,
                gamma=gamma,
                eta=eta,
                train_error=err,
                bound=None,
                max_weight=float(w.max()),
                nnz=int(np.count_nonzero(y)),
                y_l1=y_l1,
            )
        )
        prev_err = err
        if err <= config.target_error or err == 0.0:
            result.status = "target_reached" if err > 0 else "perfect"
            break

    result.weights = w
    return result


def save_model(result: BoostResult, path: str) -> None:
    """Plain-text model: a header line, then one stump per line."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(
            f"# algorithm={result.algorithm.value} geometry={result.geometry.kind.value}\n"
        )
        for h, eta in result.hypotheses:
            fh.write(f"{h.feature} {h.threshold!r} {h.polarity} {eta!r}\n")


def load_model(path: str) -> tuple[str, str, list[tuple[Stump, float]]]:
    """Read a model file back: (algorithm, geometry, hypotheses)."""
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().strip()
        if not header.startswith("# algorithm="):
            raise UsageError("missing model header")
        fields = dict(p.split("=", 1) for p in header[2:].split())
        hypotheses = []
        for line in fh:
            if not line.strip():
                continue
            feat, thr, pol, eta = line.split()
            hypotheses.append(
                (Stump(int(feat), float(thr), int(pol)), float(eta))
            )
    return fields["algorithm"], fields["geometry"], hypotheses
