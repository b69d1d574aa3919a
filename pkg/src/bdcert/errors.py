"""Exception types shared across the package.

All errors derive from ValueError so callers can catch broadly; the
specific classes exist because callers (the CLI, the test suite) branch
on them.
"""


class BDCertError(ValueError):
    """Base class for all library errors."""


class DimensionMismatch(BDCertError):
    """Operands have incompatible shapes or ambient dimensions."""


class MatrixFormatError(BDCertError):
    """A matrix/vector text file failed to parse."""

    def __init__(self, message, path=None, line=None):
        loc = ""
        if path is not None:
            loc = f"{path}:" if line is None else f"{path}:{line}:"
        super().__init__(f"{loc} {message}" if loc else message)
        self.path = path
        self.line = line


class InfeasibleDimensions(BDCertError):
    """Requested structured construction needs more rows than provided."""


class EmptyPassband(BDCertError):
    """A sub-band column has no frequency exclusive to it."""

    def __init__(self, band, message=None):
        super().__init__(message or f"column {band} has an empty passband")
        self.band = band


class ZeroColumn(BDCertError):
    """A spectrum/basis column is identically zero."""


class PartitionMismatch(BDCertError):
    """Bandwidths do not add up to the signal length."""


class EnumerationTooLarge(BDCertError):
    """A combinatorial check would exceed its enumeration budget."""


class BadSupportSizes(BDCertError):
    """Support index sets do not have the required matching sizes."""


class OperatorTooLarge(BDCertError):
    """Dense lifted operator would exceed the entry budget."""


class NotPartitioned(BDCertError):
    """Sub-band supports are required to partition the frequency range."""


class SampleComplexityTooHigh(BDCertError):
    """Signal length is at or above the bound; refutation is not guaranteed."""


class DegenerateNullspace(BDCertError):
    """Counterexample construction hit an unexpected nullspace/residual."""


class PreconditionViolated(BDCertError):
    """An input violates a checker hypothesis (zero vector, vanishing entry)."""


class ZeroReference(BDCertError):
    """Reference solution is the zero vector."""


class ConfigError(BDCertError):
    """Experiment configuration is invalid."""
