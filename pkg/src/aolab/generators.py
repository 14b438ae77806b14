"""Seeded constructors for every instance family used by the suites.

Same spec in, bit-identical matrix out.  The named fixtures (the 4x4
unitary DFT matrix, the canonical oblique counterexample built from
S = [[1, 1], [0, 1]], the square-zero N = [[0, 1], [0, 0]], the rotation
angle sqrt(2)) are hard-coded constants, not seeded draws.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidInputError
from .linalg import MAX_DIM, as_matrix, operator_norm

SQRT2 = math.sqrt(2.0)

# Canonical fixtures.
OBLIQUE_S = np.array([[1.0, 1.0], [0.0, 1.0]], dtype=complex)
JORDAN_N = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)


def dft4() -> np.ndarray:
    """The unitary 4x4 DFT matrix (1/2) [omega^(jk)] with omega = -i."""
    w = -1j
    return np.array([[w ** (j * k) for k in range(4)] for j in range(4)], dtype=complex) / 2


def canonical_oblique() -> np.ndarray:
    """S diag(1, -1) S^{-1} with S = [[1, 1], [0, 1]]: power bounded with
    unimodular spectrum but not unitary."""
    return OBLIQUE_S @ np.diag([1.0, -1.0]).astype(complex) @ np.linalg.inv(OBLIQUE_S)


@dataclass(frozen=True)
class InstanceSpec:
    kind: str  # unitary-finite-spectrum | oblique-diagonalizable | jordan-perturbation
    #          | scalar-rotation | normaloid-nonnormal | planted-jordan
    dim: int
    eigenvalues: tuple = ()
    seed: int = 0
    extra: dict = field(default_factory=dict)

    def to_obj(self):
        return {
            "kind": self.kind,
            "dim": self.dim,
            "eigenvalues": [[float(z.real), float(z.imag)] for z in map(complex, self.eigenvalues)],
            "seed": self.seed,
            "extra": {
                k: (v if not isinstance(v, complex) else [v.real, v.imag])
                for k, v in self.extra.items()
            },
        }


def _rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


def _complex_gaussian(rng, *shape) -> np.ndarray:
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / SQRT2


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    Z = _complex_gaussian(rng, dim, dim)
    Q, R = np.linalg.qr(Z)
    d = np.diagonal(R)
    return Q * (d / np.abs(d))


def _check_unimodular(values, tol=1e-12):
    for z in values:
        if abs(abs(complex(z)) - 1) > tol:
            raise InvalidInputError(f"eigenvalue {z} is not unimodular")


def _check_dim(dim: int, minimum: int = 1):
    if not (minimum <= dim <= MAX_DIM):
        raise InvalidInputError(f"dim must lie in [{minimum}, {MAX_DIM}], got {dim}")


def gen_unitary_finite_spectrum(dim: int, eigenvalues, seed: int) -> np.ndarray:
    """U D U* with Haar-ish unitary U; every listed unimodular eigenvalue
    appears at least once on D."""
    _check_dim(dim)
    vals = [complex(z) for z in eigenvalues]
    if not vals or len(vals) > dim:
        raise InvalidInputError("need 1 <= len(eigenvalues) <= dim")
    _check_unimodular(vals)
    rng = _rng(seed)
    diag = list(vals) + [vals[rng.integers(len(vals))] for _ in range(dim - len(vals))]
    diag = [diag[i] for i in rng.permutation(dim)]
    U = haar_unitary(dim, rng)
    return U @ np.diag(diag) @ U.conj().T


def gen_oblique(
    dim: int,
    eigenvalues,
    cond_cap: float = 50.0,
    seed: int = 0,
    require_oblique: bool | None = None,
) -> np.ndarray:
    """S diag(eigenvalues) S^{-1} with cond(S) <= cond_cap; with
    cond_cap > 1 the eigenspaces are genuinely oblique (and the output not
    unitary)."""
    _check_dim(dim)
    vals = [complex(z) for z in eigenvalues]
    if len(vals) != dim:
        raise InvalidInputError("need exactly dim eigenvalues")
    _check_unimodular(vals)
    for i in range(dim):
        for j in range(i + 1, dim):
            if abs(vals[i] - vals[j]) <= 1e-8:
                raise InvalidInputError("eigenvalues must be distinct")
    if cond_cap < 1:
        raise InvalidInputError("cond_cap must be >= 1")
    if require_oblique is None:
        require_oblique = cond_cap > 1
    if require_oblique and cond_cap <= 1:
        raise InvalidInputError("cond_cap = 1 cannot produce an oblique (non-unitary) instance")

    if dim == 2 and seed == 0 and sorted((v.real, v.imag) for v in vals) == [(-1.0, 0.0), (1.0, 0.0)]:
        # Canonical fixture anchoring the counterexample family.
        return canonical_oblique()

    rng = _rng(seed)
    from .criteria import is_unitary

    for _ in range(200):
        Z = _complex_gaussian(rng, dim, dim)
        U, _, Vh = np.linalg.svd(Z)
        if cond_cap > 1:
            cond = rng.uniform(min(2.0, cond_cap), cond_cap)
            s = np.linspace(1.0, cond, dim)
        else:
            s = np.ones(dim)
        S = U @ np.diag(s) @ Vh
        A = S @ np.diag(vals) @ np.linalg.inv(S)
        if not require_oblique:
            return A
        cols = S / np.linalg.norm(S, axis=0)
        gram = np.abs(cols.conj().T @ cols - np.eye(dim))
        if (
            np.linalg.norm(S.conj().T @ S - np.eye(dim)) > 0.1
            and gram.max() >= math.cos(math.radians(80.0))
            and not is_unitary(A)
        ):
            return A
    raise InvalidInputError("failed to sample an oblique similarity; relax cond_cap")


def gen_jordan_perturbation(
    dim: int, alpha: complex, nilpotent_scale: float = 1.0, seed: int = 0
) -> np.ndarray:
    """alpha I + N with N^2 = 0, ||N|| = nilpotent_scale, alpha unimodular.
    Minimal polynomial (x - alpha)^2."""
    _check_dim(dim, minimum=2)
    alpha = complex(alpha)
    _check_unimodular([alpha])
    if nilpotent_scale <= 0:
        raise InvalidInputError("nilpotent_scale must be positive")
    if dim == 2 and seed == 0:
        N = JORDAN_N * nilpotent_scale
    else:
        rng = _rng(seed)
        k = dim // 2
        while True:
            B = _complex_gaussian(rng, dim, k)
            C0 = _complex_gaussian(rng, k, dim)
            # Force C B = 0: column space of B sits inside ker C.
            C = C0 - (C0 @ B) @ np.linalg.pinv(B)
            N = B @ C
            nrm = operator_norm(N)
            if nrm > 1e-8:
                break
        N = N * (nilpotent_scale / nrm)
    return alpha * np.eye(dim) + N


def gen_scalar_rotation(dim: int, theta: float, seed: int = 0) -> np.ndarray:
    """e^{2 pi i theta} I."""
    _check_dim(dim)
    z = complex(math.cos(2 * math.pi * theta), math.sin(2 * math.pi * theta))
    return z * np.eye(dim, dtype=complex)


def gen_normaloid_nonnormal(dim: int, seed: int = 0, target_norm: float = 3.0) -> np.ndarray:
    """Block-diagonal N (normal, ||N|| = r(N) = target_norm) plus a 2x2
    square-zero block of norm <= target_norm: normaloid but not normal."""
    _check_dim(dim, minimum=3)
    if target_norm <= 0:
        raise InvalidInputError("target_norm must be positive")
    rng = _rng(seed)
    k = dim - 2
    moduli = rng.uniform(0.2, 0.9, size=k) * target_norm
    moduli[0] = target_norm  # pin r(N) = ||N|| = target_norm
    phases = np.exp(2j * np.pi * rng.uniform(0, 1, size=k))
    U = haar_unitary(k, rng)
    Nblock = U @ np.diag(moduli * phases) @ U.conj().T
    s = rng.uniform(0.3, 1.0) * target_norm
    K = np.array([[0.0, s], [0.0, 0.0]], dtype=complex)
    A = np.zeros((dim, dim), dtype=complex)
    A[:k, :k] = Nblock
    A[k:, k:] = K
    return A


def gen_planted_jordan(
    dim: int, roots, cond_cap: float = 100.0, seed: int = 0
) -> np.ndarray:
    """S J S^{-1} with planted Jordan structure: one block of size i_j per
    root (z_j, i_j), remaining dimensions filled with size-1 blocks of the
    listed roots; cond(S) <= cond_cap."""
    _check_dim(dim)
    roots = [(complex(z), int(i)) for z, i in roots]
    if not roots:
        raise InvalidInputError("need at least one root")
    for _, i in roots:
        if i < 1:
            raise InvalidInputError("indices must be positive")
    total = sum(i for _, i in roots)
    if total > dim:
        raise InvalidInputError(f"sum of indices {total} exceeds dim {dim}")
    if cond_cap < 1:
        raise InvalidInputError("cond_cap must be >= 1")
    rng = _rng(seed)
    J = np.zeros((dim, dim), dtype=complex)
    pos = 0
    for z, i in roots:
        J[pos:pos + i, pos:pos + i] = z * np.eye(i) + np.diag(np.ones(i - 1), 1)
        pos += i
    while pos < dim:
        z, _ = roots[rng.integers(len(roots))]
        J[pos, pos] = z
        pos += 1
    Z = _complex_gaussian(rng, dim, dim)
    U, _, Vh = np.linalg.svd(Z)
    if cond_cap > 1 and dim > 1:
        cond = rng.uniform(1.0, cond_cap)
        s = np.linspace(1.0, cond, dim)
    else:
        s = np.ones(dim)
    S = U @ np.diag(s) @ Vh
    return S @ J @ np.linalg.inv(S)


_KINDS = {
    "unitary-finite-spectrum": lambda spec: gen_unitary_finite_spectrum(
        spec.dim, spec.eigenvalues, spec.seed
    ),
    "oblique-diagonalizable": lambda spec: gen_oblique(
        spec.dim, spec.eigenvalues, spec.extra.get("cond_cap", 50.0), spec.seed
    ),
    "jordan-perturbation": lambda spec: gen_jordan_perturbation(
        spec.dim,
        spec.extra.get("alpha", 1.0),
        spec.extra.get("nilpotent_scale", 1.0),
        spec.seed,
    ),
    "scalar-rotation": lambda spec: gen_scalar_rotation(
        spec.dim, spec.extra.get("theta", SQRT2), spec.seed
    ),
    "normaloid-nonnormal": lambda spec: gen_normaloid_nonnormal(
        spec.dim, spec.seed, spec.extra.get("target_norm", 3.0)
    ),
    "planted-jordan": lambda spec: gen_planted_jordan(
        spec.dim, spec.extra["roots"], spec.extra.get("cond_cap", 100.0), spec.seed
    ),
}


def build_instance(spec: InstanceSpec) -> np.ndarray:
    if spec.kind not in _KINDS:
        raise InvalidInputError(f"unknown instance kind {spec.kind!r}")
    return as_matrix(_KINDS[spec.kind](spec))
