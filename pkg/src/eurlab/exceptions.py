"""Exception hierarchy shared across the library."""


class EurlabError(Exception):
    """Base class for all library-specific errors."""


class DimensionError(EurlabError):
    """Unsupported dimension, or operands of mismatched dimension."""


class SelectionError(EurlabError):
    """Unknown or duplicate basis label in a subset selection."""


class InvalidStateError(EurlabError):
    """Quantum object violates its construction invariants (normalization,
    orthonormality, unbiasedness) beyond tolerance."""


class InvalidProbabilityError(EurlabError):
    """Probability vector with negative entries or broken normalization."""


class PovmError(EurlabError):
    """POVM elements fail Hermiticity, positivity or completeness checks."""


class RefinementRejectedError(EurlabError):
    """Refinement candidate is not close enough to the target bound, or the
    local descent left the candidate's neighborhood."""


class NonConvergenceError(EurlabError):
    """No minimization restart converged; carries the best value found."""

    def __init__(self, message: str, best_value: float | None = None, best_state=None):
        super().__init__(message)
        self.best_value = best_value
        self.best_state = best_state


class BoundViolationError(EurlabError):
    """A certified minimum or a sampled entropy sum fell below the catalog
    bound by more than the cell tolerance."""


class ClassificationAmbiguousError(EurlabError):
    """Certified minimum of a d=5 triple matches neither known bound."""

    def __init__(self, message: str, min_value: float | None = None):
        super().__init__(message)
        self.min_value = min_value


class ConfigError(EurlabError):
    """Invalid CLI flag, config file entry, or run configuration."""
