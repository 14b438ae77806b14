"""Dense complex linear algebra core: norms, rank, spectra, matrix JSON I/O.

Everything operates on square complex matrices of dimension at most
``MAX_DIM`` (desk scale).  All functions are pure; inputs are never mutated.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError, SizeError

MAX_DIM = 64

# Default rank cutoff: tol = RANK_TOL_FACTOR * dim * smax.
RANK_TOL_FACTOR = 1e-10

# Eigenvalue clustering radius: delta = CLUSTER_FACTOR * max(1, ||A||).
CLUSTER_FACTOR = 1e-8


def as_matrix(a) -> np.ndarray:
    """Validate and return a square complex matrix as a fresh ndarray.

    Raises InvalidInputError for non-square or non-finite input and
    SizeError beyond MAX_DIM.
    """
    A = np.asarray(a, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] == 0:
        raise InvalidInputError(f"expected a nonempty square matrix, got shape {A.shape}")
    if A.shape[0] > MAX_DIM:
        raise SizeError(f"dimension {A.shape[0]} exceeds supported maximum {MAX_DIM}")
    if not np.all(np.isfinite(A.real)) or not np.all(np.isfinite(A.imag)):
        raise InvalidInputError("matrix entries must be finite")
    return A.copy()


def as_vector(v, dim: int | None = None) -> np.ndarray:
    V = np.asarray(v, dtype=complex).reshape(-1)
    if V.size == 0:
        raise InvalidInputError("empty vector")
    if dim is not None and V.size != dim:
        raise InvalidInputError(f"vector has dim {V.size}, expected {dim}")
    if not np.all(np.isfinite(V.real)) or not np.all(np.isfinite(V.imag)):
        raise InvalidInputError("vector entries must be finite")
    return V.copy()


def operator_norm(A) -> float:
    """Largest singular value."""
    A = as_matrix(A)
    return float(np.linalg.norm(A, 2))


def rank(A, tol: float = 0.0) -> int:
    """Number of singular values above ``tol``.

    With tol = 0 the default cutoff RANK_TOL_FACTOR * dim * smax is used.
    """
    A = as_matrix(A)
    if tol < 0:
        raise InvalidInputError("tol must be nonnegative")
    s = np.linalg.svd(A, compute_uv=False)
    if tol == 0.0:
        tol = RANK_TOL_FACTOR * A.shape[0] * (s[0] if s.size else 0.0)
    return int(np.sum(s > tol))


def cluster_points(values: np.ndarray, radius: float):
    """Single-linkage clustering of complex values.

    Returns a list of (center, count) with centers the cluster means,
    sorted by (real, imag).  Two values closer than ``radius`` end up in
    the same cluster (transitively).
    """
    vals = np.asarray(values, dtype=complex).reshape(-1)
    n = vals.size
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(vals[i] - vals[j]) <= radius:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[ri] = rj
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    out = [(complex(np.mean(vals[idx])), len(idx)) for idx in groups.values()]
    out.sort(key=lambda zc: (zc[0].real, zc[0].imag))
    return out


@dataclass(frozen=True)
class SpectrumInfo:
    """Clustered eigenvalues with algebraic multiplicities."""

    eigenvalues: tuple  # of (complex, int)
    spectral_radius: float

    @property
    def values(self):
        return [z for z, _ in self.eigenvalues]

    def multiplicity_sum(self) -> int:
        return sum(m for _, m in self.eigenvalues)


def spectrum(A, cluster_radius: float | None = None) -> SpectrumInfo:
    """Eigenvalues with multiplicities assigned by clustering.

    Computed by Hessenberg reduction plus shifted QR (LAPACK).  The
    clustering radius defaults to CLUSTER_FACTOR * max(1, ||A||).
    """
    A = as_matrix(A)
    try:
        eigs = np.linalg.eigvals(A)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK rarely fails here
        from .errors import NumericalFailureError

        raise NumericalFailureError(f"eigenvalue iteration failed: {exc}") from exc
    if cluster_radius is None:
        cluster_radius = CLUSTER_FACTOR * max(1.0, operator_norm(A))
    clustered = cluster_points(eigs, cluster_radius)
    r = max(abs(z) for z, _ in clustered)
    return SpectrumInfo(eigenvalues=tuple(clustered), spectral_radius=float(r))


def spectral_radius(A) -> float:
    return spectrum(A).spectral_radius


# ---------------------------------------------------------------------------
# Matrix JSON format: {"dim": d, "entries": [[re, im], ...]} row-major.
# ---------------------------------------------------------------------------

def matrix_to_obj(A) -> dict:
    A = as_matrix(A)
    d = A.shape[0]
    flat = A.reshape(-1)
    return {"dim": d, "entries": [[float(z.real), float(z.imag)] for z in flat]}


def matrix_from_obj(obj) -> np.ndarray:
    if not isinstance(obj, dict):
        raise InvalidInputError("matrix JSON must be an object")
    if "dim" not in obj:
        raise InvalidInputError("matrix JSON missing field 'dim'")
    d = obj["dim"]
    if not isinstance(d, int) or d < 1:
        raise InvalidInputError("field 'dim' must be a positive integer")
    if "entries" not in obj:
        raise InvalidInputError("matrix JSON missing field 'entries'")
    entries = obj["entries"]
    if not isinstance(entries, list) or len(entries) != d * d:
        raise InvalidInputError(f"field 'entries' must hold {d * d} [re, im] pairs")
    vals = np.empty(d * d, dtype=complex)
    for k, pair in enumerate(entries):
        if (not isinstance(pair, list)) or len(pair) != 2:
            raise InvalidInputError(f"field 'entries[{k}]' must be an [re, im] pair")
        try:
            vals[k] = complex(float(pair[0]), float(pair[1]))
        except (TypeError, ValueError) as exc:
            raise InvalidInputError(f"field 'entries[{k}]' holds non-numeric data") from exc
    return as_matrix(vals.reshape(d, d))
