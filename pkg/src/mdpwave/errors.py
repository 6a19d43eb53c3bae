"""Exception types shared across the toolkit."""


class MdpWaveError(Exception):
    """Base class for all toolkit errors."""


class UnboundSymbol(MdpWaveError):
    """A parameter or variable was not bound at evaluation time."""


class DomainError(MdpWaveError):
    """A numeric domain violation (division by zero, sqrt of a negative,
    log of a nonpositive, trig pole, overflow), carrying the offending
    subtree."""

    def __init__(self, message, subtree=None):
        super().__init__(message if subtree is None else f"{message}: {subtree!r}")
        self.subtree = subtree


class ConstraintViolation(MdpWaveError):
    """One or more admissibility predicates failed.  `violations` lists
    every failed predicate as a short human-readable string."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class InvalidParams(MdpWaveError):
    """Waveform parameters violate a structural side condition."""


class UnclassifiableCoefficients(MdpWaveError):
    """The coefficient triple matches none of the supported closed-form cases."""


class UnsupportedOrder(MdpWaveError):
    """The requested ansatz order is not supported by the generator."""


class SampleAtPole(MdpWaveError):
    """A collocation sample point could not be moved off a pole."""


class AllPointsSkipped(MdpWaveError):
    """Every grid point fell inside the singularity guard zone."""
