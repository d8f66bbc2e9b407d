"""Decision-stump learner: examples, brute-force optimality, determinism."""

import numpy as np
import pytest

from mirrorboost.errors import UsageError
from mirrorboost.oracles import best_stump_bruteforce
from mirrorboost.stumps import Stump, edge, loss_vector, sign_pm, train_stump


def test_sign_zero_is_positive():
    np.testing.assert_array_equal(sign_pm([-0.5, 0.0, 0.5]), [-1.0, 1.0, 1.0])


def test_stump_predict_polarity():
    x = np.array([[-1.0], [0.0], [2.0]])
    np.testing.assert_array_equal(Stump(0, 0.0, 1).predict(x), [-1.0, 1.0, 1.0])
    np.testing.assert_array_equal(Stump(0, 0.0, -1).predict(x), [1.0, -1.0, -1.0])


def test_loss_vector_signs():
    x = np.array([[-1.0], [1.0]])
    labels = np.array([-1.0, 1.0])
    h = Stump(0, 0.0, 1)  # correct on both
    np.testing.assert_array_equal(loss_vector(x, labels, h), [-1.0, -1.0])
    np.testing.assert_array_equal(loss_vector(x, -labels, h), [1.0, 1.0])


def test_loss_vector_mixed_case():
    x = np.array([[-2.0], [-1.0], [1.0], [2.0]])
    labels = np.array([-1.0, 1.0, 1.0, -1.0])
    d = loss_vector(x, labels, Stump(0, 0.0, 1))
    np.testing.assert_array_equal(d, [-1.0, 1.0, -1.0, 1.0])


def test_edge_arithmetic():
    assert edge(np.array([0.7, 0.3]), np.array([-1.0, 1.0])) == pytest.approx(0.4)
    assert edge(np.full(4, 0.25), np.full(4, -1.0)) == pytest.approx(1.0)
    assert edge(np.full(4, 0.25), np.array([-1.0, -1.0, 1.0, 1.0])) == 0.0


def test_edge_length_mismatch():
    with pytest.raises(UsageError):
        edge(np.array([0.5, 0.5]), np.array([1.0]))


def test_separable_pair_gives_full_edge():
    x = np.array([[-1.0], [1.0]])
    labels = np.array([-1.0, 1.0])
    w = np.array([0.5, 0.5])
    h = train_stump(x, labels, w)
    assert h.feature == 0 and h.threshold == 0.0 and h.polarity == 1
    assert edge(w, loss_vector(x, labels, h)) == pytest.approx(1.0)


def test_constant_stump_on_featureless_labels():
    # identical features: the best a stump can do is a constant vote
    x = np.ones((4, 1))
    labels = np.array([1.0, 1.0, 1.0, -1.0])
    w = np.full(4, 0.25)
    h = train_stump(x, labels, w)
    gamma = edge(w, loss_vector(x, labels, h))
    assert gamma == pytest.approx(abs(float(np.sum(w * labels))))


def test_zero_edge_surface_not_hidden():
    x = np.ones((2, 1))
    labels = np.array([1.0, -1.0])
    w = np.array([0.5, 0.5])
    h = train_stump(x, labels, w)
    assert edge(w, loss_vector(x, labels, h)) == 0.0


def test_empty_dataset_rejected():
    with pytest.raises(UsageError):
        train_stump(np.empty((0, 2)), np.empty(0), np.empty(0))


def test_returned_edge_nonnegative_and_consistent():
    rng = np.random.default_rng(0)
    for _ in range(100):
        n, d = int(rng.integers(2, 30)), int(rng.integers(1, 4))
        x = rng.normal(size=(n, d))
        labels = np.where(rng.random(n) < 0.5, 1.0, -1.0)
        w = rng.random(n)
        w /= w.sum()
        h = train_stump(x, labels, w)
        gamma = edge(w, loss_vector(x, labels, h))
        assert gamma >= -1e-12


def test_optimal_among_stumps_bruteforce():
    rng = np.random.default_rng(1)
    for _ in range(40):
        n, d = int(rng.integers(5, 50)), int(rng.integers(1, 5))
        x = np.round(rng.normal(size=(n, d)), 2)  # duplicates exercise ties
        labels = np.where(rng.random(n) < 0.5, 1.0, -1.0)
        w = rng.random(n)
        w /= w.sum()
        h = train_stump(x, labels, w)
        gamma = edge(w, loss_vector(x, labels, h))
        assert gamma == pytest.approx(best_stump_bruteforce(x, labels, w), abs=1e-12)


def test_zero_weight_samples_keep_candidate_geometry():
    # a zero-weight sample must not change the winning stump's edge
    x = np.array([[-1.0], [1.0], [5.0]])
    labels = np.array([-1.0, 1.0, -1.0])
    w = np.array([0.5, 0.5, 0.0])
    h = train_stump(x, labels, w)
    assert edge(w, loss_vector(x, labels, h)) == pytest.approx(1.0)


def test_determinism_and_tie_break():
    rng = np.random.default_rng(2)
    x = rng.normal(size=(20, 3))
    labels = np.where(rng.random(20) < 0.5, 1.0, -1.0)
    w = np.full(20, 1.0 / 20)
    first = train_stump(x, labels, w)
    for _ in range(5):
        assert train_stump(x, labels, w) == first
    # duplicating every column ties each stump with its copy; the winner
    # must come from the original (lower-index) block
    x2 = np.hstack([x, x])
    h2 = train_stump(x2, labels, w)
    assert h2.feature < 3
    assert h2 == first
