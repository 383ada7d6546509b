"""Exception hierarchy shared by all modules."""


class EntcostError(Exception):
    """Base class for library errors."""


class ArgumentError(EntcostError, ValueError):
    """An argument is outside the operation's domain."""


class ContractError(EntcostError, ValueError):
    """An input violates a documented precondition (e.g. non-Hermitian matrix)."""


class SizeError(EntcostError, ValueError):
    """A register or matrix exceeds the configured size cap."""


class SpecParseError(ArgumentError):
    """A state-spec string could not be parsed."""
