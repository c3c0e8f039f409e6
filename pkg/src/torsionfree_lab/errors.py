"""Exception types shared across the package."""


class LabError(Exception):
    pass


class AlgebraError(LabError):
    """An algebra fails an axiom; ``witness`` names the offending index tuple."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class ModuleError(LabError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class UnsupportedError(LabError):
    pass


class MinimalityUnavailable(UnsupportedError):
    """Raised when a minimal construction needs radical and idempotent data that is missing."""


class PreconditionError(LabError):
    pass


class ResourceLimit(UnsupportedError):
    """A computation would exceed the configured size budget."""
