"""Exception hierarchy shared by every gammalib module."""


class GammaError(ValueError):
    """Base class; ``witness`` carries the offending tuple when one exists."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class MalformedElementError(GammaError):
    pass


class InvalidSubgroupError(GammaError):
    pass


class NonAssociativeError(GammaError):
    pass


class NotCommutativeError(GammaError):
    pass


class NotHomomorphismError(GammaError):
    pass


class ClosureError(GammaError):
    """A product or action produced a value outside the declared carrier."""


class BudgetError(GammaError):
    """An exhaustive scan would exceed the enumeration budget."""


class IncompatibleError(GammaError):
    pass


class PreconditionError(GammaError):
    pass


class UnsupportedStructureError(GammaError):
    pass


class InvalidAutomorphismError(GammaError):
    pass


class IdealError(GammaError):
    pass


class GradingError(GammaError):
    pass


class ModuleError(GammaError):
    pass


class InternalConsistencyError(AssertionError):
    """Raised when a proven property fails; always indicates a bug or a corrupt input."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class StructureFileError(GammaError):
    pass


class UnresolvedReferenceError(StructureFileError):
    pass
