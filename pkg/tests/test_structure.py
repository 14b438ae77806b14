"""Minimal polynomials and generalized eigenspace decompositions."""

import numpy as np
import pytest

from aolab.errors import DecompositionError
from aolab.generators import canonical_oblique, dft4, gen_planted_jordan
from aolab.linalg import operator_norm
from aolab.structure import (
    MinimalPoly,
    decompose,
    minimal_polynomial,
    minimal_poly_to_obj,
    restriction_spectra,
)


def _roots_rounded(mp, digits=8):
    return sorted(
        (round(z.real, digits), round(z.imag, digits), i) for z, i in mp.roots
    )


class TestMinimalPolynomial:
    def test_dft4(self):
        # Degree 3: (x - 1)(x + 1)(x + i); the eigenvalue 1 is double but
        # the matrix is diagonalizable so each root has index 1.
        mp = minimal_polynomial(dft4())
        assert mp.degree == 3
        assert _roots_rounded(mp) == [(-1.0, 0.0, 1), (0.0, -1.0, 1), (1.0, 0.0, 1)]

    def test_identity(self):
        mp = minimal_polynomial(np.eye(6))
        assert mp.degree == 1
        assert _roots_rounded(mp) == [(1.0, 0.0, 1)]

    def test_jordan_block(self):
        A = np.array([[1, 1], [0, 1]], dtype=complex)
        mp = minimal_polynomial(A)
        assert mp.degree == 2
        assert _roots_rounded(mp) == [(1.0, 0.0, 2)]

    def test_nilpotent(self):
        A = np.zeros((3, 3), dtype=complex)
        A[0, 1] = A[1, 2] = 1.0
        mp = minimal_polynomial(A)
        assert _roots_rounded(mp) == [(0.0, 0.0, 3)]

    def test_canonical_oblique(self):
        mp = minimal_polynomial(canonical_oblique())
        assert mp.degree == 2
        assert _roots_rounded(mp) == [(-1.0, 0.0, 1), (1.0, 0.0, 1)]

    def test_planted_structure_recovered(self):
        roots = [(0.5 + 0.1j, 2), (-0.3j, 1)]
        A = gen_planted_jordan(5, roots, cond_cap=20.0, seed=3)
        mp = minimal_polynomial(A)
        got = {(round(z.real, 6), round(z.imag, 6)): i for z, i in mp.roots}
        assert got == {(0.5, 0.1): 2, (0.0, -0.3): 1}

    def test_residual_small(self):
        A = gen_planted_jordan(6, [(1j, 3), (0.5, 1)], cond_cap=30.0, seed=7)
        mp = minimal_polynomial(A)
        res = operator_norm(mp.evaluate(A))
        assert res <= 1e-8 * max(1.0, operator_norm(A)) ** mp.degree

    def test_evaluate_monomial(self):
        mp = MinimalPoly(roots=((2.0 + 0j, 2),), degree=2)
        A = np.diag([2.0, 3.0]).astype(complex)
        P = mp.evaluate(A)
        assert P[0, 0] == pytest.approx(0.0)
        assert P[1, 1] == pytest.approx(1.0)


class TestDecompose:
    def test_dft4_blocks(self):
        F = dft4()
        mp = minimal_polynomial(F)
        D = decompose(F, mp)
        assert sorted(D.block_dims()) == [1, 1, 2]
        assert sum(D.block_dims()) == 4
        # Unitary matrix: spectral projections are orthogonal, c = 1.
        assert D.constant_c == pytest.approx(1.0, abs=1e-10)

    def test_projections_resolve_identity(self):
        A = gen_planted_jordan(6, [(0.8j, 2), (-0.5, 2)], cond_cap=40.0, seed=11)
        mp = minimal_polynomial(A)
        D = decompose(A, mp)
        total = sum(b.projection for b in D.blocks)
        assert np.linalg.norm(total - np.eye(6)) <= 1e-8
        for b in D.blocks:
            assert np.linalg.norm(b.projection @ b.projection - b.projection) <= 1e-8

    def test_projections_commute_with_matrix(self):
        A = gen_planted_jordan(5, [(1.0, 2), (1j, 1)], cond_cap=25.0, seed=5)
        mp = minimal_polynomial(A)
        D = decompose(A, mp)
        for b in D.blocks:
            assert np.linalg.norm(A @ b.projection - b.projection @ A) <= 1e-7

    def test_oblique_constant_sqrt2(self):
        T = canonical_oblique()
        D = decompose(T, minimal_polynomial(T))
        assert D.constant_c == pytest.approx(np.sqrt(2), rel=1e-12)

    def test_lobos_inequality_sampled(self):
        A = gen_planted_jordan(6, [(0.9, 2), (-0.7j, 2)], cond_cap=60.0, seed=2)
        D = decompose(A, minimal_polynomial(A))
        rng = np.random.default_rng(0)
        for _ in range(50):
            parts = [
                b.basis
                @ (rng.standard_normal(b.dim) + 1j * rng.standard_normal(b.dim))
                for b in D.blocks
            ]
            total = np.linalg.norm(sum(parts))
            for p in parts:
                assert np.linalg.norm(p) <= D.constant_c * total * (1 + 1e-8)

    def test_nonminimal_polynomial_rejected(self):
        # Wrong root: kernels cannot fill the space.
        A = np.diag([1.0, 2.0]).astype(complex)
        bad = MinimalPoly(roots=((1.0 + 0j, 1), (3.0 + 0j, 1)), degree=2)
        with pytest.raises(DecompositionError):
            decompose(A, bad)

    def test_restriction_spectra_singletons(self):
        A = gen_planted_jordan(5, [(0.6 + 0.2j, 2), (-0.4, 1)], cond_cap=30.0, seed=9)
        D = decompose(A, minimal_polynomial(A))
        for b, spec in zip(D.blocks, restriction_spectra(A, D)):
            for z, _ in spec.eigenvalues:
                assert abs(z - b.z) <= 1e-6


class TestSerialization:
    def test_minimal_poly_obj(self):
        mp = minimal_polynomial(dft4())
        obj = minimal_poly_to_obj(mp)
        assert obj["degree"] == 3
        assert len(obj["roots"]) == 3
        assert all(set(r) == {"z", "index"} for r in obj["roots"])
