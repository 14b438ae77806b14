"""Decision procedures for the unitarity criteria of algebraic matrices.

The four equivalent conditions checked by ``theorem_check`` for a matrix
with unimodular spectrum: unitary, normaloid, contraction, and convergence
of every orbit-norm sequence {||T^n h||}.  Orbits are classified with a
shared finite-horizon window rule; structural predictions (from the
generalized eigenspace decomposition) are cross-checked against empirical
behaviour wherever both are available.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .config import RunConfig
from .errors import DecompositionError, IllConditionedSpectrumError, InconsistencyError, InvalidInputError
from .linalg import as_matrix, as_vector, operator_norm, spectrum
from .structure import Decomposition, MinimalPoly, decompose, minimal_polynomial

# Norms beyond this are treated as numerical overflow; the orbit is cut
# short and classified exponential.
OVERFLOW_LIMIT = 1e300

# Tail log-slope above which a sequence counts as exponentially growing.
EXP_SLOPE_TOL = 1e-3

# Relative threshold deciding whether a block component of a vector is
# numerically nonzero.
COMPONENT_TOL = 1e-10


# ---------------------------------------------------------------------------
# Window rule and classification ladder
# ---------------------------------------------------------------------------

def window_limit(seq: np.ndarray, window: int = 50, tol: float = 1e-6):
    """Finite-horizon convergence test.

    A sequence converges iff over its final ``window`` terms every value
    lies within max(tol, tol * |L|) of the window mean L.  Returns
    (converged, L).
    """
    s = np.asarray(seq, dtype=float)
    if s.size < window:
        window = s.size
    tail = s[-window:]
    L = float(np.mean(tail))
    ok = bool(np.max(np.abs(tail - L)) <= max(tol, tol * abs(L)))
    return ok, L


@dataclass(frozen=True)
class Classification:
    kind: str  # convergent | bounded-nonconvergent | polynomial-growth | exponential-growth
    limit: float | None = None
    degree: int | None = None
    rate: float | None = None

    def to_obj(self):
        out = {"kind": self.kind}
        if self.limit is not None:
            out["limit"] = float(self.limit)
        if self.degree is not None:
            out["degree"] = int(self.degree)
        if self.rate is not None:
            out["rate"] = float(self.rate)
        return out


def _tail_log_slope(norms: np.ndarray) -> float:
    """Least-squares slope of log s_n over the tail half (positive terms)."""
    n0 = max(1, norms.size // 2)
    idx = np.arange(n0, norms.size)
    vals = norms[n0:]
    mask = np.isfinite(vals) & (vals > 0)
    if mask.sum() < 2:
        return 0.0
    x = idx[mask].astype(float)
    y = np.log(vals[mask])
    x = x - x.mean()
    denom = float(np.dot(x, x))
    if denom == 0.0:
        return 0.0
    return float(np.dot(x, y - y.mean()) / denom)


def classify_sequence(
    norms: np.ndarray,
    max_poly_degree: int,
    window: int = 50,
    tol: float = 1e-6,
    overflowed: bool = False,
) -> Classification:
    """Classification ladder: exponential by tail log-slope, else smallest
    polynomial degree whose normalization stabilizes under the window rule,
    else convergent / bounded-nonconvergent."""
    s = np.asarray(norms, dtype=float)
    if overflowed:
        slope = _tail_log_slope(s)
        return Classification(kind="exponential-growth", rate=float(np.exp(max(slope, 0.0))))
    # A sequence that has (numerically) died is convergent to 0.
    tail = s[-min(window, s.size):]
    if np.all(tail <= tol):
        return Classification(kind="convergent", limit=0.0)
    # Growth verdicts (exponential or polynomial) must be confirmed by
    # actual growth along the orbit: both families at least double from n/4
    # to n at desk horizons, while a bounded slowly-oscillating sequence
    # can fake a positive log-slope or a sub-tol n^d-normalization.
    w = min(window, s.size)
    q = s.size // 4
    grows = np.max(s[-w:]) > 2.0 * np.max(s[q:q + w])
    slope = _tail_log_slope(s)
    if slope > EXP_SLOPE_TOL and grows:
        return Classification(kind="exponential-growth", rate=float(np.exp(slope)))
    ok, L = window_limit(s, window, tol)
    if ok:
        return Classification(kind="convergent", limit=L)
    n = np.arange(s.size, dtype=float)
    n[0] = 1.0
    for d in range(1, max(1, max_poly_degree) + 1):
        ok, L = window_limit(s / n**d, window, tol)
        if ok and L > tol and grows:
            return Classification(kind="polynomial-growth", degree=d, limit=L)
    return Classification(kind="bounded-nonconvergent")


# ---------------------------------------------------------------------------
# Orbit iteration
# ---------------------------------------------------------------------------

def orbit_norms_batch(A: np.ndarray, H: np.ndarray, n_max: int):
    """||A^n h|| for every column h of H, n = 0..n_max, by repeated
    application of A (never by powering A).

    Returns (norms, overflow_step) where norms has shape (n_steps+1, P) and
    overflow_step is the step at which some column exceeded OVERFLOW_LIMIT
    (None if none did; iteration stops there).
    """
    out = np.empty((n_max + 1, H.shape[1]))
    V = H.astype(complex)
    out[0] = np.linalg.norm(V, axis=0)
    # Overflow in the norm reduction is expected right at the stopping
    # threshold and handled by the early return.
    with np.errstate(over="ignore"):
        for n in range(1, n_max + 1):
            V = A @ V
            nn = np.linalg.norm(V, axis=0)
            out[n] = nn
            if np.max(nn) > OVERFLOW_LIMIT:
                return out[: n + 1], n
    return out, None


def power_log_norms(A: np.ndarray, n_max: int) -> np.ndarray:
    """log ||A^n|| (operator norm) for n = 1..n_max via a rescaled power
    iteration, immune to overflow/underflow."""
    A = as_matrix(A)
    d = A.shape[0]
    M = np.eye(d, dtype=complex)
    acc = 0.0
    out = np.empty(n_max)
    for n in range(n_max):
        M = A @ M
        s = float(np.linalg.norm(M, 2))
        if s == 0.0:
            out[n:] = -np.inf
            return out
        acc += np.log(s)
        out[n] = acc
        M = M / s
    return out


def orbit_log_norms(A: np.ndarray, h: np.ndarray, n_max: int) -> np.ndarray:
    """log ||A^n h|| for n = 0..n_max via rescaled iteration (-inf once the
    orbit hits zero)."""
    v = h.astype(complex)
    acc = 0.0
    out = np.empty(n_max + 1)
    s = float(np.linalg.norm(v))
    if s == 0.0:
        raise InvalidInputError("orbit vector must be nonzero")
    out[0] = np.log(s)
    acc = np.log(s)
    v = v / s
    for n in range(1, n_max + 1):
        v = A @ v
        s = float(np.linalg.norm(v))
        if s == 0.0:
            out[n:] = -np.inf
            return out
        acc += np.log(s)
        out[n] = acc
        v = v / s
    return out


# ---------------------------------------------------------------------------
# Domain records
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OrbitRecord:
    h: np.ndarray
    norms: np.ndarray
    structural_exponent: int | None
    classification: Classification

    def to_obj(self):
        return {
            "structural_exponent": self.structural_exponent,
            "classification": self.classification.to_obj(),
            "norm_first": float(self.norms[0]),
            "norm_last": float(self.norms[-1]),
        }


@dataclass(frozen=True)
class ScalarSeqVerdict:
    w: complex
    b: complex
    convergent: bool
    cluster_points: tuple


@dataclass
class CriteriaReport:
    is_algebraic: bool
    minpoly_degree: int
    spectrum_in_circle: bool
    unitary: bool
    normaloid: bool
    contraction: bool
    orbits_convergent: bool
    power_bounded: bool
    witness: np.ndarray | None
    consistent: bool
    probes: list = field(default_factory=list)  # (label, OrbitRecord)

    def to_obj(self):
        out = {
            "is_algebraic": self.is_algebraic,
            "minpoly_degree": self.minpoly_degree,
            "spectrum_in_circle": self.spectrum_in_circle,
            "unitary": self.unitary,
            "normaloid": self.normaloid,
            "contraction": self.contraction,
            "orbits_convergent": self.orbits_convergent,
            "orbits_note": "certified via probes",
            "power_bounded": self.power_bounded,
            "consistent": self.consistent,
            "witness": None
            if self.witness is None
            else [[float(z.real), float(z.imag)] for z in self.witness],
            "probes": [{"label": lab, **rec.to_obj()} for lab, rec in self.probes],
        }
        return out


# ---------------------------------------------------------------------------
# Structural predicates
# ---------------------------------------------------------------------------

def is_unitary(A) -> bool:
    A = as_matrix(A)
    d = A.shape[0]
    I = np.eye(d)
    return bool(
        np.linalg.norm(A.conj().T @ A - I) <= 1e-10 * d
        and np.linalg.norm(A @ A.conj().T - I) <= 1e-10 * d
    )


def is_normaloid(A) -> bool:
    """Spectral radius equals operator norm.

    Cross-checks ||A^n|| = ||A||^n (relative 1e-6, n = 2..10) and warns on
    disagreement between the two tests.
    """
    A = as_matrix(A)
    nrm = operator_norm(A)
    r = spectrum(A).spectral_radius
    structural = abs(r - nrm) <= 1e-8 * max(1.0, nrm)
    if nrm > 0:
        logs = power_log_norms(A, 10)
        empirical = all(
            abs(logs[n - 1] - n * np.log(nrm)) <= np.log1p(1e-6) * n + 1e-6
            for n in range(2, 11)
        )
    else:
        empirical = True
    if structural != empirical:
        warnings.warn(
            f"normaloid tests disagree: r vs ||A|| says {structural}, "
            f"power norms say {empirical}",
            RuntimeWarning,
            stacklevel=2,
        )
    return structural


def is_power_bounded(A, p: MinimalPoly | None = None, n_check: int = 1000) -> bool:
    """sup_n ||A^n|| finite, decided structurally: spectral radius at most 1
    and every root of modulus (near) 1 simple in the minimal polynomial.
    Cross-checked against the empirical power-norm trajectory."""
    A = as_matrix(A)
    if p is None:
        p = minimal_polynomial(A)
    r = max(abs(z) for z, _ in p.roots)
    structural = r <= 1 + 1e-10 and all(
        i == 1 for z, i in p.roots if abs(z) >= 1 - 1e-8
    )
    logs = power_log_norms(A, n_check)
    finite = logs[np.isfinite(logs)]
    if finite.size < 4:
        empirical = True  # nilpotent: powers vanish
    elif np.max(finite) >= 600:
        empirical = False  # powers reached e^600: unbounded
    else:
        cls = classify_sequence(np.exp(finite), max_poly_degree=p.degree)
        empirical = cls.kind in ("convergent", "bounded-nonconvergent")
    if structural != empirical:
        raise InconsistencyError(
            f"power boundedness: structural={structural} empirical={empirical}"
        )
    return structural


# ---------------------------------------------------------------------------
# Orbit analysis
# ---------------------------------------------------------------------------

def structural_exponent(A: np.ndarray, h: np.ndarray, D: Decomposition) -> int | None:
    """Largest k with (A - z_j I)^k P_j h != 0, maximized over the blocks of
    largest modulus among those where h has a component."""
    d = A.shape[0]
    hn = float(np.linalg.norm(h))
    comps = []
    for b in D.blocks:
        ph = b.projection @ h
        if np.linalg.norm(ph) > COMPONENT_TOL * hn:
            comps.append((b, ph))
    if not comps:
        return None
    mu = max(abs(b.z) for b, _ in comps)
    best = 0
    for b, ph in comps:
        if abs(abs(b.z) - mu) > 1e-8:
            continue
        B = A - b.z * np.eye(d)
        v = ph
        k = 0
        for j in range(1, b.index):
            v = B @ v
            if np.linalg.norm(v) > COMPONENT_TOL * hn:
                k = j
        best = max(best, k)
    return best


def orbit_analyze(
    A,
    h,
    n_max: int = 2000,
    config: RunConfig | None = None,
    decomposition: Decomposition | None = None,
    minpoly: MinimalPoly | None = None,
) -> OrbitRecord:
    """Iterate h, A h, A^2 h, ... and classify the norm sequence; attach the
    structural exponent when the eigenspace decomposition is available."""
    cfg = config or RunConfig(n_max=n_max)
    A = as_matrix(A)
    h = as_vector(h, A.shape[0])
    if np.linalg.norm(h) == 0:
        raise InvalidInputError("orbit vector must be nonzero")
    if n_max < 100:
        raise InvalidInputError("n_max must be at least 100")
    norms, overflow = orbit_norms_batch(A, h.reshape(-1, 1), n_max)
    norms = norms[:, 0]
    if minpoly is None:
        try:
            minpoly = minimal_polynomial(A)
        except (IllConditionedSpectrumError, DecompositionError):
            minpoly = None
    if decomposition is None and minpoly is not None:
        try:
            decomposition = decompose(A, minpoly)
        except DecompositionError:
            decomposition = None
    exponent = (
        structural_exponent(A, h, decomposition) if decomposition is not None else None
    )
    max_deg = minpoly.degree if minpoly is not None else A.shape[0]
    cls = classify_sequence(
        norms, max_deg, window=cfg.window, tol=cfg.tol_conv, overflowed=overflow is not None
    )
    return OrbitRecord(h=h, norms=norms, structural_exponent=exponent, classification=cls)


# ---------------------------------------------------------------------------
# Theorem check
# ---------------------------------------------------------------------------

def _probe_set(A: np.ndarray, D: Decomposition | None, rng: np.random.Generator):
    """Standard basis + 20 random unit vectors + block-mixing pairs
    (h_k + h_l and i h_k + h_l)."""
    d = A.shape[0]
    probes = []
    for i in range(d):
        e = np.zeros(d, dtype=complex)
        e[i] = 1.0
        probes.append((f"e{i}", e))
    for t in range(20):
        v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
        probes.append((f"rand{t}", v / np.linalg.norm(v)))
    if D is not None and D.m > 1:
        for k in range(D.m):
            for l in range(k + 1, D.m):
                hk = D.blocks[k].basis[:, 0]
                hl = D.blocks[l].basis[:, 0]
                probes.append((f"mix{k}+{l}", hk + hl))
                probes.append((f"mix i*{k}+{l}", 1j * hk + hl))
    return probes


def theorem_check(A, config: RunConfig | None = None) -> CriteriaReport:
    """Evaluate the four equivalent unitarity conditions and cross-check
    their agreement under the hypotheses (algebraic, unimodular spectrum)."""
    cfg = config or RunConfig()
    A = as_matrix(A)
    try:
        mp = minimal_polynomial(A)
    except (IllConditionedSpectrumError, DecompositionError):
        mp = None
    try:
        D = decompose(A, mp) if mp is not None else None
    except DecompositionError:
        D = None
    degree = mp.degree if mp is not None else 0
    roots = mp.roots if mp is not None else tuple(spectrum(A).eigenvalues)
    in_circle = all(abs(abs(z) - 1) <= 1e-8 for z, _ in roots)

    unitary = is_unitary(A)
    normaloid = is_normaloid(A)
    contraction = operator_norm(A) <= 1 + 1e-10

    rng = np.random.default_rng(cfg.seed)
    probes = _probe_set(A, D, rng)
    H = np.column_stack([v for _, v in probes])
    norms, overflow = orbit_norms_batch(A, H, cfg.n_max)
    records = []
    witness = None
    all_convergent = True
    for j, (label, v) in enumerate(probes):
        col = norms[:, j]
        over = overflow is not None and col[-1] > OVERFLOW_LIMIT / 10
        cls = classify_sequence(
            col, degree or A.shape[0], window=cfg.window, tol=cfg.tol_conv, overflowed=over
        )
        exp = structural_exponent(A, v, D) if D is not None else None
        records.append((label, OrbitRecord(h=v, norms=col, structural_exponent=exp, classification=cls)))
        if cls.kind != "convergent":
            all_convergent = False
            if witness is None:
                witness = v

    try:
        pb = is_power_bounded(A, p=mp) if mp is not None else None
    except InconsistencyError:
        pb = None
    if pb is None:
        # fall back to the empirical trajectory alone
        logs = power_log_norms(A, 1000)
        pb = bool(np.max(logs) < np.log(1e6))

    hypotheses = mp is not None and in_circle
    conditions = [unitary, normaloid, contraction, all_convergent]
    consistent = (not hypotheses) or all(c == conditions[0] for c in conditions)
    return CriteriaReport(
        is_algebraic=mp is not None,
        minpoly_degree=degree,
        spectrum_in_circle=in_circle,
        unitary=unitary,
        normaloid=normaloid,
        contraction=contraction,
        orbits_convergent=all_convergent,
        power_bounded=pb,
        witness=witness,
        consistent=consistent,
        probes=records,
    )


# ---------------------------------------------------------------------------
# Scalar sequence lemma probe
# ---------------------------------------------------------------------------

def scalar_re_sequence(w: complex, b: complex, n_max: int = 100_000) -> ScalarSeqVerdict:
    """Finite probe of the scalar lemma: for |w| = 1, w != +-1, the sequence
    Re(w^n b) converges only if b = 0.

    Cluster points are estimated from the tail half with merge radius 1e-6.
    Raises InconsistencyError if the window rule reports convergence for a
    clearly nonzero b (finite-horizon failure surfaced, not hidden).
    """
    w = complex(w)
    b = complex(b)
    if abs(abs(w) - 1) > 1e-12:
        raise InvalidInputError("w must be unimodular (within 1e-12)")
    if abs(w - 1) <= 1e-12 or abs(w + 1) <= 1e-12:
        raise InvalidInputError("w = +-1 is excluded")
    powers = np.cumprod(np.concatenate([[1.0 + 0j], np.full(n_max, w)]))
    seq = np.real(powers * b)
    convergent, _ = window_limit(seq, window=50, tol=1e-6)
    tail = np.sort(seq[n_max // 2:])
    clusters = []
    start = 0
    for i in range(1, tail.size + 1):
        if i == tail.size or tail[i] - tail[i - 1] > 1e-6:
            clusters.append(float(np.mean(tail[start:i])))
            start = i
    if convergent and abs(b) > 1e-6:
        raise InconsistencyError(
            "window rule reports convergence for nonzero b; w is too close "
            "to +-1 for this horizon"
        )
    return ScalarSeqVerdict(w=w, b=b, convergent=convergent, cluster_points=tuple(clusters))
