"""Growth bounds, stability taxonomy, normal limits, root limits."""

import numpy as np
import pytest

from aolab.config import RunConfig
from aolab.errors import InvalidInputError, OutOfScopeError
from aolab.generators import (
    canonical_oblique,
    dft4,
    gen_jordan_perturbation,
    gen_normaloid_nonnormal,
    gen_planted_jordan,
    gen_unitary_finite_spectrum,
    haar_unitary,
)
from aolab.linalg import operator_norm
from aolab.stability import (
    growth_bound,
    growth_csv_rows,
    normal_limit,
    normaloid_equivalence,
    orbit_root_limit,
    unimodular_eigenprojection,
    uniform_stability,
)


class TestGrowthBound:
    def test_jordan_block_linear_growth(self):
        A = np.array([[1, 1], [0, 1]], dtype=complex)
        gb = growth_bound(A)
        assert gb.kappa == 1
        assert gb.spectral_radius == pytest.approx(1.0, abs=1e-10)
        assert gb.max_violation_ratio <= 1 + 1e-8
        # The bound must actually dominate: ||A^n|| ~ n but alpha n r^n
        # with alpha >= 2 covers it.
        assert gb.alpha * 1000 >= operator_norm(np.linalg.matrix_power(A, 1000))

    def test_diagonalizable_kappa_from_degree(self):
        # kappa is deg p - 1 even when the matrix is diagonalizable; the
        # bound is then slack but still certified.
        A = dft4()
        gb = growth_bound(A)
        assert gb.kappa == 2
        assert gb.valid_from == 1
        assert gb.max_violation_ratio <= 1 + 1e-8

    def test_nilpotent_valid_from_degree(self):
        A = np.zeros((3, 3), dtype=complex)
        A[0, 1] = A[1, 2] = 2.0
        gb = growth_bound(A)
        assert gb.spectral_radius == pytest.approx(0.0, abs=1e-10)
        assert gb.valid_from == 3
        assert gb.max_violation_ratio == 0.0

    def test_contractive_planted(self):
        A = gen_planted_jordan(5, [(0.6, 3), (0.3j, 1)], cond_cap=40.0, seed=4)
        gb = growth_bound(A)
        assert gb.spectral_radius == pytest.approx(0.6, abs=1e-8)
        assert gb.kappa == 3
        assert gb.max_violation_ratio <= 1 + 1e-8

    def test_expansive_out_of_scope(self):
        with pytest.raises(OutOfScopeError):
            growth_bound(1.5 * np.eye(2))

    def test_csv_rows_shape(self):
        A = canonical_oblique()
        gb = growth_bound(A)
        rows = list(growth_csv_rows(A, gb, n_check=50))
        assert len(rows) == 50
        for n, nrm, bound in rows:
            if n >= gb.valid_from:
                assert nrm <= bound * (1 + 1e-8)


class TestNormalLimit:
    def test_projection_identity(self):
        # Normal contraction: limit ||A^n h||^2 = <Q h, h>.
        rng = np.random.default_rng(3)
        U = haar_unitary(4, rng)
        A = U @ np.diag([1.0, -1.0, 0.5, 0.3]).astype(complex) @ U.conj().T
        Q = unimodular_eigenprojection(A)
        for t in range(5):
            h = rng.standard_normal(4) + 1j * rng.standard_normal(4)
            q = normal_limit(A, h)
            assert q == pytest.approx(float(np.real(np.vdot(h, Q @ h))), abs=1e-9)

    def test_strictly_stable_limit_zero(self):
        A = 0.5 * np.eye(3, dtype=complex)
        assert normal_limit(A, np.ones(3)) == pytest.approx(0.0, abs=1e-12)

    def test_unitary_limit_full_norm(self):
        A = dft4()
        h = np.array([1.0, 0, 0, 0], dtype=complex)
        assert normal_limit(A, h) == pytest.approx(1.0, rel=1e-10)

    def test_rejects_nonnormal(self):
        with pytest.raises(InvalidInputError):
            normal_limit(np.array([[1, 1], [0, 1]], dtype=complex), np.ones(2))

    def test_rejects_expansive(self):
        with pytest.raises(InvalidInputError):
            normal_limit(2 * np.eye(2), np.ones(2))


class TestNormaloidEquivalence:
    def test_unitary_agrees_true(self):
        rep = normaloid_equivalence(dft4(), RunConfig(seed=0))
        assert rep.all_agree()
        assert rep.orbits_convergent and rep.power_bounded and rep.contraction

    def test_expansive_normaloid_agrees_false(self):
        A = gen_normaloid_nonnormal(5, seed=1, target_norm=3.0)
        rep = normaloid_equivalence(A, RunConfig(seed=0))
        assert rep.all_agree()
        assert not rep.contraction

    def test_rejects_nonnormaloid(self):
        with pytest.raises(InvalidInputError):
            normaloid_equivalence(canonical_oblique(), RunConfig(seed=0))


class TestUniformStability:
    def test_strict_contraction(self):
        v = uniform_stability(0.5 * dft4(), RunConfig(seed=0))
        assert v.uniformly_stable and v.strongly_stable and v.power_bounded

    def test_unitary_not_stable_but_bounded(self):
        v = uniform_stability(dft4(), RunConfig(seed=0))
        assert not v.uniformly_stable and not v.strongly_stable
        assert v.power_bounded

    def test_jordan_at_one_unbounded(self):
        A = np.array([[1, 1], [0, 1]], dtype=complex)
        v = uniform_stability(A, RunConfig(seed=0))
        assert not v.uniformly_stable and not v.power_bounded

    def test_mixed_spectrum_power_bounded_not_stable(self):
        A = gen_planted_jordan(4, [(1.0, 1), (0.4, 2)], cond_cap=20.0, seed=6)
        v = uniform_stability(A, RunConfig(seed=0))
        assert not v.uniformly_stable
        assert v.power_bounded and not v.strongly_stable


class TestOrbitRootLimit:
    def test_diagonal_dominant_modulus(self):
        A = np.diag([0.9, 0.5]).astype(complex)
        rho = orbit_root_limit(A, np.array([1.0, 1.0]))
        assert rho == pytest.approx(0.9, abs=1e-3)

    def test_probe_outside_dominant_eigenspace(self):
        A = np.diag([0.9, 0.5]).astype(complex)
        rho = orbit_root_limit(A, np.array([0.0, 1.0]))
        assert rho == pytest.approx(0.5, abs=1e-3)

    def test_unitary_orbit_limit_one(self):
        A = gen_unitary_finite_spectrum(4, [1j, -1], seed=5)
        rng = np.random.default_rng(2)
        h = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        assert orbit_root_limit(A, h) == pytest.approx(1.0, abs=1e-3)

    def test_defective_root_polynomial_factor_removed(self):
        A = gen_planted_jordan(4, [(0.7, 3)], cond_cap=20.0, seed=8)
        h = np.ones(4, dtype=complex)
        assert orbit_root_limit(A, h) == pytest.approx(0.7, abs=1e-3)

    def test_zero_vector_rejected(self):
        with pytest.raises(InvalidInputError):
            orbit_root_limit(np.eye(2), np.zeros(2))
