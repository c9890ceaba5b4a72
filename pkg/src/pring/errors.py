"""Exception types shared across the package."""


class PringError(Exception):
    pass


class StructureError(PringError):
    """Malformed table data (bad indices, wrong dimensions, unknown names)."""


class AxiomError(PringError):
    """A structure that was required to satisfy some axioms does not."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class BudgetExceeded(PringError):
    """A search or saturation ran past its configured cap."""

    def __init__(self, message, used=None, limit=None):
        super().__init__(message)
        self.used = used
        self.limit = limit


class CrossCheckFailure(PringError):
    """Two independent computations that must agree did not."""


class NotAPartialField(PringError):
    pass


class ParseError(PringError):
    """Input documents or polynomial expressions that cannot be read."""
