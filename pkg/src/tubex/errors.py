"""Exception hierarchy shared by the library and the command line."""

from __future__ import annotations


class TubexError(Exception):
    """Base class for all library errors."""

    exit_code = 1


class InputError(TubexError, ValueError):
    """Bad argument: element out of range, unsupported parameters, malformed data."""

    exit_code = 6


class UnknownFamilyError(InputError):
    exit_code = 3


class MalformedFileError(InputError):
    exit_code = 4


class CapacityError(TubexError):
    """A structure is too large for the bitset / enumeration limits."""

    exit_code = 5


class PreconditionError(TubexError, ValueError):
    """An operation was called on an argument violating its precondition."""

    exit_code = 7


class DomainError(TubexError, ArithmeticError):
    """Arithmetic outside the supported domain (e.g. square root of a non-square)."""

    exit_code = 8
