"""Bregman projections onto the constraint sets used by the boosters.

Simplex, capped simplex, mixed per-coordinate caps, positive orthant with
an l1 penalty, and the unit hypercube (entropic). Quadratic projections use
sort-then-threshold / multiplier bisection; entropic projections use
normalization with greedy capping. All functions are pure.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, DegenerateInputError, DomainError
from .geometry import Geometry, GeometryKind

_SUM_TOL = 1e-12
_MAX_BISECT = 200


class SetKind(enum.Enum):
    SIMPLEX = "simplex"
    CAPPED_SIMPLEX = "capped_simplex"
    MIXED_CAPS = "mixed_caps"
    POSITIVE_ORTHANT = "positive_orthant"
    UNIT_HYPERCUBE = "unit_hypercube"


@dataclass(frozen=True)
class ConstraintSet:
    kind: SetKind
    cap: float | None = None          # uniform per-coordinate cap (capped simplex)
    caps: tuple[float, ...] | None = None  # per-coordinate caps, inf allowed


SIMPLEX = ConstraintSet(SetKind.SIMPLEX)
UNIT_HYPERCUBE = ConstraintSet(SetKind.UNIT_HYPERCUBE)


def _check_entropic_input(z: np.ndarray) -> None:
    if np.any(z < 0):
        raise DomainError("entropic projection requires nonnegative input")
    if z.sum() <= 0:
        raise DegenerateInputError("entropic projection of an all-zero vector")


def project_simplex(g: Geometry, z) -> np.ndarray:
    """Bregman projection onto the probability simplex.

    Entropic: plain normalization z / ||z||_1. Quadratic: Euclidean
    projection w_i = max(0, z_i - theta) with theta solving sum w = 1.
    """
    z = np.asarray(z, dtype=float)
    if g.kind is GeometryKind.NEGATIVE_ENTROPY:
        _check_entropic_input(z)
        return z / z.sum()
    # sort-then-threshold (O(n log n))
    u = np.sort(z)[::-1]
    css = np.cumsum(u) - 1.0
    idx = np.arange(1, len(z) + 1)
    rho = np.nonzero(u - css / idx > 0)[0][-1]
    theta = css[rho] / (rho + 1)
    return np.maximum(z - theta, 0.0)


def _clamped_sum(z: np.ndarray, caps: np.ndarray, theta: float) -> float:
    return float(np.minimum(np.maximum(z - theta, 0.0), caps).sum())


def _project_mixed_quadratic(z: np.ndarray, caps: np.ndarray) -> np.ndarray:
    # sum_i clamp(z_i - theta, 0, cap_i) is monotone nonincreasing in theta;
    # bisect after expanding the lower bracket until it overshoots 1.
    hi = float(z.max())
    lo = hi - 1.0
    while _clamped_sum(z, caps, lo) < 1.0:
        lo -= 2.0 * (hi - lo)
    for _ in range(_MAX_BISECT):
        mid = 0.5 * (lo + hi)
        s = _clamped_sum(z, caps, mid)
        if abs(s - 1.0) <= _SUM_TOL:
            lo = hi = mid
            break
        if s > 1.0:
            lo = mid
        else:
            hi = mid
    theta = 0.5 * (lo + hi)
    w = np.minimum(np.maximum(z - theta, 0.0), caps)
    s = w.sum()
    if s > 0:  # absorb residual bisection error on the free coordinates
        free = (w > 0) & (w < caps)
        if free.any():
            w[free] += (1.0 - s) / free.sum()
            w = np.minimum(np.maximum(w, 0.0), caps)
    return w


def _project_mixed_entropic(z: np.ndarray, caps: np.ndarray) -> np.ndarray:
    _check_entropic_input(z)
    n = len(z)
    w = np.empty(n)
    fixed = np.zeros(n, dtype=bool)
    for _ in range(n):
        budget = 1.0 - caps[fixed].sum()
        free = ~fixed
        zs = z[free].sum()
        if zs <= 0:
            raise DegenerateInputError("no mass left on uncapped coordinates")
        w[free] = budget * z[free] / zs
        over = free & (w > caps)
        if not over.any():
            break
        fixed |= over
    w[fixed] = caps[fixed]
    return w


def project_capped_simplex(g: Geometry, z, cap: float) -> np.ndarray:
    """Projection onto {w : sum w = 1, 0 <= w_i <= cap}."""
    z = np.asarray(z, dtype=float)
    if cap * len(z) < 1.0:
        raise ConfigurationError(f"cap {cap} infeasible for dimension {len(z)}")
    caps = np.full(len(z), float(cap))
    if g.kind is GeometryKind.NEGATIVE_ENTROPY:
        return _project_mixed_entropic(z, caps)
    return _project_mixed_quadratic(z, caps)


def project_mixed(g: Geometry, z, caps) -> np.ndarray:
    """Projection onto {w : sum w = 1, 0 <= w_i <= caps_i} (inf caps allowed)."""
    z = np.asarray(z, dtype=float)
    caps = np.asarray(caps, dtype=float)
    if len(caps) != len(z):
        raise ConfigurationError("caps length must match the vector length")
    if np.minimum(caps, 1.0).sum() < 1.0:
        raise ConfigurationError("caps infeasible: sum of min(cap, 1) < 1")
    if g.kind is GeometryKind.NEGATIVE_ENTROPY:
        return _project_mixed_entropic(z, caps)
    return _project_mixed_quadratic(z, caps)


def project_orthant_l1(z, lam: float) -> np.ndarray:
    """Soft-threshold: the minimizer of 1/2||y - z||^2 + lam ||y||_1 over y >= 0.

    Coordinate-wise y_i = max(0, z_i - lam).
    """
    if lam < 0:
        raise ConfigurationError("l1 penalty must be nonnegative")
    z = np.asarray(z, dtype=float)
    return np.maximum(z - lam, 0.0)


def project_hypercube_entropic(z) -> np.ndarray:
    """Entropic Bregman projection onto [0, 1]^n: coordinate-wise min(1, z_i)."""
    z = np.asarray(z, dtype=float)
    if np.any(z <= 0):
        raise DomainError("hypercube projection requires strictly positive input")
    return np.minimum(z, 1.0)


def project_double(g: Geometry, z, outer: ConstraintSet, inner: ConstraintSet) -> np.ndarray:
    """Approximate projection via two stages: project onto outer, then inner.

    Supports the hypercube-then-simplex pair under the entropic geometry,
    which satisfies B(x, z) >= B(x, result) for every x in the inner set.
    """
    if (
        g.kind is not GeometryKind.NEGATIVE_ENTROPY
        or outer.kind is not SetKind.UNIT_HYPERCUBE
        or inner.kind is not SetKind.SIMPLEX
    ):
        raise ConfigurationError(
            "double projection supports only entropic hypercube -> simplex"
        )
    y = project_hypercube_entropic(z)
    return project_simplex(g, y)
