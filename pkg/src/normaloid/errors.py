"""Exception types raised by the library.

Every error that a caller can act on has its own class so the CLI can map
failures to exit codes: malformed input and bad parameters map to usage
errors, LAPACK-level breakdowns map to numerical failures.
"""


class NormaloidError(Exception):
    """Base class for all library errors."""


class MatrixFormatError(NormaloidError):
    """Matrix file or JSON object does not match the exchange format."""


class InvalidParameter(NormaloidError, ValueError):
    """A parameter is outside its documented domain (p <= 0, rank > n, ...)."""


class NonHermitianInput(NormaloidError):
    """An operation requiring a Hermitian matrix received one that is not."""


class NotPositive(NormaloidError):
    """A matrix required to be positive semidefinite has a negative eigenvalue."""


class NotUnit(NormaloidError):
    """A vector required to lie on the unit sphere does not."""


class NotBinormal(NormaloidError):
    """A procedure valid only for binormal matrices received a non-binormal one."""


class PremiseViolated(NormaloidError):
    """A theorem-shaped check was asked to certify a conclusion whose premise fails."""


class ConvergenceFailure(NormaloidError):
    """An iterative numerical routine failed to converge."""


class NoAscentWithinBound(NormaloidError):
    """Kernel chain of successive powers did not stabilize within the dimension.

    Unreachable for exact integer ranks (they are nonincreasing and bounded),
    kept as a defensive signal for numerically pathological inputs.
    """


class UnknownTheoremId(NormaloidError, KeyError):
    """Requested property suite does not exist."""


class FixtureMismatch(NormaloidError):
    """A bundled fixture no longer reproduces its recorded verdicts."""
