"""Exception hierarchy shared by all cosetlab modules."""


class CosetLabError(Exception):
    """Base class for every error raised by cosetlab."""


class GroupMismatchError(CosetLabError, TypeError):
    """Two elements from different groups (or different parameters) were combined."""


class ConfigurationError(CosetLabError, ValueError):
    """An unsupported (group, subgroup) combination or a malformed descriptor."""


class PreconditionError(CosetLabError, ValueError):
    """An operation was called outside its documented domain."""


class BudgetError(CosetLabError):
    """A finite set or search would exceed the configured size budget."""

    def __init__(self, message, *, requested=None, budget=None):
        super().__init__(message)
        self.requested = requested
        self.budget = budget


class NotHermitianError(CosetLabError, ValueError):
    pass


class NotPSDError(CosetLabError, ValueError):
    pass


class ParseError(CosetLabError, ValueError):
    """Text encoding of an element or key could not be parsed."""
