"""Exception types shared across the package."""


class AolabError(Exception):
    """Base class for all package errors."""


class InvalidInputError(AolabError):
    """Malformed or out-of-contract input (non-finite entries, bad shapes,
    precondition violations)."""


class SizeError(InvalidInputError):
    """Matrix dimension beyond the supported desk scale."""


class NumericalFailureError(AolabError):
    """An iterative numerical procedure failed to converge."""


class IllConditionedSpectrumError(AolabError):
    """Eigenvalue clustering is ambiguous: two candidate clusterings are
    equally plausible.  Carries both candidates."""

    def __init__(self, message, candidates=None):
        super().__init__(message)
        self.candidates = candidates or []


class DecompositionError(AolabError):
    """Generalized eigenspace decomposition failed (kernel dimensions do not
    fill the space; usually signals a non-minimal polynomial or inconsistent
    tolerances)."""


class InconsistencyError(AolabError):
    """A structural prediction and its empirical cross-check disagree beyond
    tolerance."""


class OutOfScopeError(AolabError):
    """Request outside the supported parameter regime (e.g. spectral radius
    above 1 for the growth bound)."""
