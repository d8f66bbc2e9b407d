"""Bregman geometries: potentials, mirror maps and divergences.

Two geometries are supported. The quadratic geometry pairs the potential
R(x) = 1/2 ||x||^2 with the Euclidean norm; the negative-entropy geometry
pairs R(x) = sum_i x_i log x_i with the l1 norm on the simplex. Dual
updates are additive in the mirror (gradient) coordinates, and the
divergence of the entropic potential is the generalized KL divergence,
which reduces to plain KL on the simplex.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
from scipy.special import xlogy

from .errors import DomainError


class GeometryKind(enum.Enum):
    QUADRATIC = "quadratic"
    NEGATIVE_ENTROPY = "entropy"


@dataclass(frozen=True)
class Geometry:
    """A Bregman geometry bundle.

    ``dual_norm_sq_bound(n)`` is the constant L with ||d||_*^2 <= L for any
    loss vector d in [-1, 1]^n: n for the quadratic geometry (dual norm l2)
    and 1 for negative entropy (dual norm l_inf).
    """

    kind: GeometryKind

    def dual_norm_sq_bound(self, n: int) -> float:
        if self.kind is GeometryKind.QUADRATIC:
            return float(n)
        return 1.0


QUADRATIC = Geometry(GeometryKind.QUADRATIC)
NEGATIVE_ENTROPY = Geometry(GeometryKind.NEGATIVE_ENTROPY)


def _as_array(x) -> np.ndarray:
    return np.asarray(x, dtype=float)


def potential(g: Geometry, x) -> float:
    """Evaluate the potential R at x.

    Quadratic: 1/2 ||x||_2^2. Negative entropy: sum_i x_i log x_i with the
    continuous extension 0 log 0 = 0; requires x >= 0.
    """
    x = _as_array(x)
    if g.kind is GeometryKind.QUADRATIC:
        return 0.5 * float(x @ x)
    if np.any(x < 0):
        raise DomainError("entropy potential requires nonnegative coordinates")
    return float(np.sum(xlogy(x, x)))


def mirror_map(g: Geometry, x) -> np.ndarray:
    """Gradient of the potential, mapping primal points to dual coordinates.

    Quadratic: identity. Negative entropy: 1 + log x, requires x > 0.
    """
    x = _as_array(x)
    if g.kind is GeometryKind.QUADRATIC:
        return x.copy()
    if np.any(x <= 0):
        raise DomainError("entropy mirror map requires strictly positive coordinates")
    return 1.0 + np.log(x)


def inverse_mirror_map(g: Geometry, theta) -> np.ndarray:
    """Inverse of the mirror map: identity, or exp(theta - 1) for entropy."""
    theta = _as_array(theta)
    if g.kind is GeometryKind.QUADRATIC:
        return theta.copy()
    return np.exp(theta - 1.0)


def divergence(g: Geometry, x, y) -> float:
    """Bregman divergence B_R(x, y) = R(x) - R(y) - <grad R(y), x - y>.

    Quadratic: 1/2 ||x - y||^2. Negative entropy: the generalized KL
    divergence sum_i x_i log(x_i / y_i) - x_i + y_i (equals KL when both
    arguments lie on the simplex); requires x >= 0 and y > 0.
    """
    x = _as_array(x)
    y = _as_array(y)
    if x.shape != y.shape:
        raise DomainError("divergence arguments must have matching shapes")
    if g.kind is GeometryKind.QUADRATIC:
        diff = x - y
        return 0.5 * float(diff @ diff)
    if np.any(x < 0):
        raise DomainError("entropy divergence requires x >= 0")
    if np.any(y <= 0):
        raise DomainError("entropy divergence requires y > 0")
    return float(np.sum(xlogy(x, x) - xlogy(x, y) - x + y))
