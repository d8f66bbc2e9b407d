"""Decision-stump weak learner and the edge / loss-vector algebra.

A stump is h(x) = polarity * sign(x[feature] - threshold) with sign(0) = +1.
Training enumerates every threshold at midpoints of consecutive distinct
feature values (plus -inf/+inf sentinels for the constant hypotheses) and
returns the stump of maximum absolute weighted correlation, with polarity
chosen so the edge is nonnegative. Ties break to the lowest feature index,
then the lowest threshold, making the learner fully deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import UsageError


def sign_pm(v) -> np.ndarray:
    """Sign into {-1, +1} with sign(0) = +1."""
    return np.where(np.asarray(v) >= 0, 1.0, -1.0)


@dataclass(frozen=True)
class Stump:
    feature: int
    threshold: float
    polarity: int

    def predict(self, features: np.ndarray) -> np.ndarray:
        """Evaluate the stump on an (n, d) feature matrix; outputs in {-1, +1}."""
        return self.polarity * sign_pm(features[:, self.feature] - self.threshold)


def loss_vector(features: np.ndarray, labels: np.ndarray, h: Stump) -> np.ndarray:
    """Per-sample losses d_i = -a_i h(x_i); +1 on a mistake, -1 when correct."""
    return -labels * h.predict(features)


def edge(w: np.ndarray, d: np.ndarray) -> float:
    """Edge gamma = -w . d of a hypothesis with loss vector d under weights w."""
    if len(w) != len(d):
        raise UsageError("weight and loss vectors must have equal length")
    return -float(w @ d)


def train_stump(features: np.ndarray, labels: np.ndarray, w: np.ndarray) -> Stump:
    """Best decision stump under sample weights w.

    Maximizes |sum_i w_i a_i h(x_i)| over all features, candidate thresholds
    and polarities; the returned polarity makes the edge nonnegative. A
    zero-edge stump is returned as-is when nothing better exists.
    """
    n, n_features = features.shape
    if n == 0:
        raise UsageError("cannot train on an empty dataset")
    wa = w * labels
    total = float(wa.sum())

    best_gamma = -1.0
    best: tuple[int, float, int] | None = None
    for j in range(n_features):
        x = features[:, j]
        order = np.argsort(x, kind="stable")
        xs = x[order]
        csum = np.cumsum(wa[order])
        # split k: samples [0, k) fall below the threshold (predicted -1)
        change = np.nonzero(xs[1:] != xs[:-1])[0] + 1
        ks = np.concatenate(([0], change, [n]))
        below = np.concatenate(([0.0], csum[change - 1], [csum[-1]]))
        corr = total - 2.0 * below  # sum w a sign(x - thr) at each split
        thresholds = np.concatenate(
            ([-np.inf], 0.5 * (xs[ks[1:-1] - 1] + xs[ks[1:-1]]), [np.inf])
        )
        gammas = np.abs(corr)
        k = int(np.argmax(gammas))  # first max = lowest threshold
        if gammas[k] > best_gamma:
            best_gamma = float(gammas[k])
            polarity = 1 if corr[k] >= 0 else -1
            best = (j, float(thresholds[k]), polarity)

    assert best is not None
    return Stump(feature=best[0], threshold=best[1], polarity=best[2])
