"""Projection operators: worked examples, feasibility, oracle equivalence."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mirrorboost.errors import ConfigurationError, DegenerateInputError, DomainError
from mirrorboost.geometry import NEGATIVE_ENTROPY, QUADRATIC, divergence
from mirrorboost.oracles import (
    constrained_divergence_argmin,
    hypercube_entropic_argmin,
    orthant_l1_argmin,
)
from mirrorboost.projection import (
    SIMPLEX,
    UNIT_HYPERCUBE,
    ConstraintSet,
    SetKind,
    project_capped_simplex,
    project_double,
    project_hypercube_entropic,
    project_mixed,
    project_orthant_l1,
    project_simplex,
)

GEOMETRIES = [QUADRATIC, NEGATIVE_ENTROPY]


def _rand_input(rng, g, dim):
    return np.exp(rng.normal(size=dim)) if g is NEGATIVE_ENTROPY else rng.normal(size=dim)


class TestSimplex:
    def test_entropic_normalization(self):
        np.testing.assert_allclose(
            project_simplex(NEGATIVE_ENTROPY, [2.0, 2.0]), [0.5, 0.5]
        )

    def test_quadratic_threshold_example(self):
        np.testing.assert_allclose(
            project_simplex(QUADRATIC, [0.8, 0.4]), [0.7, 0.3], atol=1e-12
        )

    def test_quadratic_feasible_point_unchanged(self):
        np.testing.assert_allclose(
            project_simplex(QUADRATIC, [0.25, 0.75]), [0.25, 0.75], atol=1e-12
        )

    def test_entropic_all_zero_rejected(self):
        with pytest.raises(DegenerateInputError):
            project_simplex(NEGATIVE_ENTROPY, [0.0, 0.0])

    @pytest.mark.parametrize("g", GEOMETRIES, ids=lambda g: g.kind.value)
    def test_feasibility_and_idempotence(self, g):
        rng = np.random.default_rng(0)
        for _ in range(300):
            z = _rand_input(rng, g, int(rng.integers(2, 9)))
            w = project_simplex(g, z)
            assert abs(w.sum() - 1.0) <= 1e-12
            assert np.all(w >= 0)
            np.testing.assert_allclose(project_simplex(g, w), w, atol=1e-12)

    @given(st.lists(st.floats(-5.0, 5.0), min_size=2, max_size=8))
    @settings(max_examples=100, deadline=None)
    def test_quadratic_feasibility_hypothesis(self, zs):
        w = project_simplex(QUADRATIC, np.asarray(zs))
        assert abs(w.sum() - 1.0) <= 1e-9
        assert np.all(w >= 0)

    @pytest.mark.parametrize("g", GEOMETRIES, ids=lambda g: g.kind.value)
    def test_permutation_equivariance(self, g):
        rng = np.random.default_rng(1)
        z = _rand_input(rng, g, 6)
        perm = rng.permutation(6)
        np.testing.assert_allclose(
            project_simplex(g, z[perm]), project_simplex(g, z)[perm], atol=1e-12
        )


class TestCappedSimplex:
    def test_cap_one_reduces_to_simplex(self):
        rng = np.random.default_rng(2)
        for g in GEOMETRIES:
            z = _rand_input(rng, g, 5)
            np.testing.assert_allclose(
                project_capped_simplex(g, z, 1.0), project_simplex(g, z), atol=1e-10
            )

    def test_entropic_cap_example(self):
        np.testing.assert_allclose(
            project_capped_simplex(NEGATIVE_ENTROPY, [4.0, 1.0, 1.0], 0.5),
            [0.5, 0.25, 0.25],
            atol=1e-12,
        )

    def test_quadratic_cap_binds(self):
        w = project_capped_simplex(QUADRATIC, [0.9, 0.3, 0.0], 0.5)
        assert w[0] == pytest.approx(0.5, abs=1e-9)
        assert abs(w.sum() - 1.0) <= 1e-9

    def test_infeasible_cap_rejected(self):
        with pytest.raises(ConfigurationError):
            project_capped_simplex(QUADRATIC, [0.5, 0.5], 0.4)

    @pytest.mark.parametrize("g", GEOMETRIES, ids=lambda g: g.kind.value)
    def test_caps_respected(self, g):
        rng = np.random.default_rng(3)
        for _ in range(200):
            dim = int(rng.integers(2, 9))
            cap = float(rng.uniform(1.2 / dim, 1.0))
            w = project_capped_simplex(g, _rand_input(rng, g, dim), cap)
            assert abs(w.sum() - 1.0) <= 1e-9
            assert np.all(w <= cap + 1e-12)
            assert np.all(w >= 0)


class TestMixedCaps:
    def test_all_inf_reduces_to_simplex(self):
        rng = np.random.default_rng(4)
        for g in GEOMETRIES:
            z = _rand_input(rng, g, 5)
            np.testing.assert_allclose(
                project_mixed(g, z, np.full(5, np.inf)),
                project_simplex(g, z),
                atol=1e-10,
            )

    def test_uniform_caps_reduce_to_capped(self):
        rng = np.random.default_rng(5)
        for g in GEOMETRIES:
            z = _rand_input(rng, g, 5)
            np.testing.assert_allclose(
                project_mixed(g, z, np.full(5, 0.4)),
                project_capped_simplex(g, z, 0.4),
                atol=1e-10,
            )

    def test_entropic_single_binding_cap(self):
        np.testing.assert_allclose(
            project_mixed(NEGATIVE_ENTROPY, [4.0, 1.0, 1.0], [0.5, np.inf, np.inf]),
            [0.5, 0.25, 0.25],
            atol=1e-12,
        )

    def test_infeasible_caps_rejected(self):
        with pytest.raises(ConfigurationError):
            project_mixed(QUADRATIC, [1.0, 1.0], [0.3, 0.3])
        with pytest.raises(ConfigurationError):
            project_mixed(QUADRATIC, [1.0, 1.0], [0.3])


class TestOrthantL1:
    def test_positive_part(self):
        np.testing.assert_allclose(
            project_orthant_l1([0.15, -0.02], 0.0), [0.15, 0.0]
        )

    def test_soft_threshold_update_arithmetic(self):
        # one additive step z = 0.3 - 0.1 = 0.2, then penalty 0.05
        z = np.array([0.3]) + np.array([-0.1])
        np.testing.assert_allclose(project_orthant_l1(z, 0.05), [0.15], atol=1e-15)

    def test_negative_penalty_rejected(self):
        with pytest.raises(ConfigurationError):
            project_orthant_l1([0.1], -0.1)

    def test_matches_scalar_oracle(self):
        rng = np.random.default_rng(6)
        for _ in range(50):
            z = rng.normal(size=4)
            lam = float(rng.uniform(0.0, 1.0))
            np.testing.assert_allclose(
                project_orthant_l1(z, lam), orthant_l1_argmin(z, lam), atol=1e-6
            )


class TestHypercube:
    def test_clamp_example(self):
        np.testing.assert_allclose(
            project_hypercube_entropic([0.5, 3.0]), [0.5, 1.0]
        )

    def test_feasible_unchanged(self):
        np.testing.assert_allclose(
            project_hypercube_entropic([0.2, 0.9]), [0.2, 0.9]
        )

    def test_nonpositive_rejected(self):
        with pytest.raises(DomainError):
            project_hypercube_entropic([0.5, 0.0])

    def test_matches_scalar_oracle(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            z = np.exp(rng.uniform(-1.5, 1.5, size=5))
            np.testing.assert_allclose(
                project_hypercube_entropic(z), hypercube_entropic_argmin(z), atol=1e-6
            )


class TestDoubleProjection:
    def test_compose_example(self):
        np.testing.assert_allclose(
            project_double(NEGATIVE_ENTROPY, [0.5, 3.0], UNIT_HYPERCUBE, SIMPLEX),
            [1.0 / 3.0, 2.0 / 3.0],
            atol=1e-12,
        )

    def test_feasible_point_unchanged(self):
        w = np.array([0.4, 0.6])
        np.testing.assert_allclose(
            project_double(NEGATIVE_ENTROPY, w, UNIT_HYPERCUBE, SIMPLEX), w, atol=1e-12
        )

    def test_unsupported_pair_rejected(self):
        with pytest.raises(ConfigurationError):
            project_double(QUADRATIC, [0.5, 0.5], UNIT_HYPERCUBE, SIMPLEX)
        with pytest.raises(ConfigurationError):
            project_double(
                NEGATIVE_ENTROPY, [0.5, 0.5], SIMPLEX, ConstraintSet(SetKind.SIMPLEX)
            )

    def test_never_increases_divergence_to_feasible_points(self):
        rng = np.random.default_rng(8)
        for _ in range(1000):
            z = np.exp(rng.uniform(-1.5, 1.5, size=5))
            x = np.exp(rng.normal(size=5))
            x /= x.sum()
            double = project_double(NEGATIVE_ENTROPY, z, UNIT_HYPERCUBE, SIMPLEX)
            lhs = divergence(NEGATIVE_ENTROPY, x, z)
            assert lhs >= divergence(NEGATIVE_ENTROPY, x, double) - 1e-10


class TestOracleEquivalence:
    @pytest.mark.parametrize("g", GEOMETRIES, ids=lambda g: g.kind.value)
    def test_simplex_and_caps_match_numeric_minimizer(self, g):
        rng = np.random.default_rng(9)
        for _ in range(30):
            dim = int(rng.integers(2, 7))
            z = _rand_input(rng, g, dim)
            cap = max(1.2 / dim, float(rng.uniform(1.0 / dim, 1.0)))
            np.testing.assert_allclose(
                project_simplex(g, z),
                constrained_divergence_argmin(g, z),
                atol=1e-6,
            )
            np.testing.assert_allclose(
                project_capped_simplex(g, z, cap),
                constrained_divergence_argmin(g, z, np.full(dim, cap)),
                atol=1e-6,
            )

    @pytest.mark.parametrize("g", GEOMETRIES, ids=lambda g: g.kind.value)
    def test_pythagorean_inequalities(self, g):
        rng = np.random.default_rng(10)
        for _ in range(300):
            z = _rand_input(rng, g, 5)
            x = np.exp(rng.normal(size=5))
            x /= x.sum()
            proj = project_simplex(g, z)
            safe = np.maximum(proj, 1e-300) if g is NEGATIVE_ENTROPY else proj
            lhs = divergence(g, x, z)
            assert lhs >= divergence(g, x, safe) - 1e-10
            assert lhs >= divergence(g, x, safe) + divergence(g, safe, z) - 1e-10

    def test_hypercube_optimality_certificate(self):
        rng = np.random.default_rng(11)
        for _ in range(300):
            z = np.exp(rng.uniform(-1.5, 1.5, size=5))
            y = project_hypercube_entropic(z)
            v = rng.random(5)  # arbitrary feasible point in [0, 1]^5
            grad = np.log(y / z)
            assert float((v - y) @ grad) >= -1e-10
