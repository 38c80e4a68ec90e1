"""Exception hierarchy shared by every softarc module."""


class SoftArcError(Exception):
    """Base class for all errors raised by softarc."""


class StructureMismatch(SoftArcError, TypeError):
    """Operands belong to different valuation structures."""


class OrderViolation(SoftArcError, ValueError):
    """A difference beta - alpha was requested with alpha strictly above beta."""


class UnfairStructure(SoftArcError, ArithmeticError):
    """No (maximal) difference exists for the requested pair."""


class InputError(SoftArcError, ValueError):
    """Malformed problem, assignment, scope or value."""


class SizeError(SoftArcError, ValueError):
    """An enumeration would exceed its configured cap."""


class CapabilityError(SoftArcError, ValueError):
    """The operation is not defined for this structure or problem shape."""


class CorruptionError(SoftArcError, RuntimeError):
    """Internal bookkeeping invariant broken (e.g. Delta tables inconsistent)."""


class ParseError(InputError):
    """Instance file could not be parsed; message names the offending field."""
