"""Independent numeric reference minimizers for the projection operators.

These deliberately avoid the closed-form projection code paths: constrained
projections are solved with SLSQP on the divergence objective, and the
separable one-dimensional problems with bounded scalar minimization. They
exist purely so the verification harness and the test suite can compare
the fast projections against something that knows nothing about them.
"""

from __future__ import annotations

import warnings

import numpy as np
from scipy.optimize import minimize, minimize_scalar

from .geometry import Geometry, GeometryKind, divergence

_ENTROPY_FLOOR = 1e-12


def constrained_divergence_argmin(
    g: Geometry, z: np.ndarray, caps: np.ndarray | None = None
) -> np.ndarray:
    """Numerically minimize B_R(x, z) over the (possibly capped) simplex."""
    z = np.asarray(z, dtype=float)
    n = len(z)
    if caps is None:
        caps = np.full(n, np.inf)
    caps = np.asarray(caps, dtype=float)
    lo = _ENTROPY_FLOOR if g.kind is GeometryKind.NEGATIVE_ENTROPY else 0.0
    bounds = [(lo, min(c, 1.0)) for c in caps]
    x0 = np.minimum(np.full(n, 1.0 / n), caps)
    x0 = x0 / x0.sum()

    def objective(x):
        xx = np.maximum(x, lo)
        return divergence(g, xx, z)

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)  # SLSQP clipping chatter
        res = minimize(
            objective,
            x0,
            method="SLSQP",
            bounds=bounds,
            constraints=[{"type": "eq", "fun": lambda x: x.sum() - 1.0}],
            options={"maxiter": 500, "ftol": 1e-14},
        )
    return np.asarray(res.x)


def orthant_l1_argmin(z: np.ndarray, lam: float) -> np.ndarray:
    """Coordinate-wise bounded scalar minimization of the penalized objective."""
    z = np.asarray(z, dtype=float)
    out = np.empty_like(z)
    hi = max(float(np.max(np.abs(z))) + 1.0, 1.0)
    for i, zi in enumerate(z):
        res = minimize_scalar(
            lambda y: 0.5 * (y - zi) ** 2 + lam * y,
            bounds=(0.0, hi),
            method="bounded",
            options={"xatol": 1e-12},
        )
        out[i] = res.x
    return out


def hypercube_entropic_argmin(z: np.ndarray) -> np.ndarray:
    """Coordinate-wise minimization of the generalized KL over [0, 1]."""
    z = np.asarray(z, dtype=float)
    out = np.empty_like(z)
    for i, zi in enumerate(z):
        res = minimize_scalar(
            lambda y: y * np.log(y / zi) - y + zi,
            bounds=(_ENTROPY_FLOOR, 1.0),
            method="bounded",
            options={"xatol": 1e-12},
        )
        out[i] = res.x
    return out


def best_stump_bruteforce(features, labels, w):
    """Exhaustive stump search: every feature, midpoint threshold, polarity.

    Returns the maximum achievable |edge|; used to certify the fast learner.
    """
    n, d = features.shape
    best = 0.0
    for j in range(d):
        values = np.sort(np.unique(features[:, j]))
        thresholds = [-np.inf, np.inf]
        thresholds.extend(0.5 * (values[:-1] + values[1:]))
        for thr in thresholds:
            pred = np.where(features[:, j] - thr >= 0, 1.0, -1.0)
            corr = float(np.sum(w * labels * pred))
            best = max(best, abs(corr))
    return best
