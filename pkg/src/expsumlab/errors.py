"""Exception hierarchy shared by all lab modules."""


class LabError(Exception):
    """Base class for every error raised by this package."""


class NotPrime(LabError):
    """Modulus is composite or below the smallest supported prime."""


class TooLarge(LabError):
    """A table or enumeration would exceed the configured memory/op guard."""


class NotDivisor(LabError):
    """Requested subgroup order does not divide p - 1."""


class ZeroArgument(LabError):
    """Multiplicative character evaluated at 0."""


class CtxMismatch(LabError):
    """Operands live over different prime fields."""


class SizeTooLarge(LabError):
    """Requested set or tensor size cannot be produced."""


class BadTensorShape(LabError):
    """Weight tensor axes or omission indices disagree with the sets."""


class TooManyVariables(LabError):
    """Polynomial argument uses more than four variables."""


class OrderError(LabError):
    """Cardinality ordering hypothesis violated where it is a hard precondition."""


class DegenerateBound(LabError):
    """Bound evaluates to zero; ratio undefined."""


class NotSubgroup(LabError):
    """Set is not a multiplicative subgroup."""


class ConfigError(LabError):
    """Experiment configuration is unparseable or invalid."""


class MissingReport(LabError):
    """Report file to plot does not exist."""


class GuardTripped(LabError):
    """Operation-count guard exceeded while running an experiment."""
