"""Exception types shared across the package."""


class DelgibbsError(Exception):
    """Base class for all package errors."""


class DegenerateInputError(DelgibbsError):
    """Input geometry violates a precondition (duplicates, bad window...)."""


class DuplicatePointError(DegenerateInputError):
    """A point coincides exactly with an existing one."""


class MissingPointError(DelgibbsError):
    """Referenced point id is not present."""


class ParameterError(DelgibbsError):
    """A parameter is outside its admissible range."""


class InadmissibleConfigurationError(DelgibbsError):
    """Configuration violates the hard-core constraint."""


class RankDeficiencyError(DelgibbsError):
    """Contrast Hessian is singular; names the offending statistic."""

    def __init__(self, message, coordinate=None):
        super().__init__(message)
        self.coordinate = coordinate


class IdentifiabilityError(DelgibbsError):
    """The pattern carries no information about some coordinate."""


class PatternFormatError(DelgibbsError):
    """Pattern file cannot be parsed."""


class SchemeValidationError(DelgibbsError):
    """Observation windows are inconsistent (estimation + border > data)."""
