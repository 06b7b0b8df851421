"""Exception types raised across the package."""


class SymdiffError(Exception):
    """Base class for all errors raised by this package."""


class ArgumentError(SymdiffError, ValueError):
    """Invalid parameters or mismatched dimensions."""


class EmptySetError(ArgumentError):
    pass


class RangeError(ArgumentError):
    """An endpoint or coordinate lies outside [1, n]."""


class ParityError(ArgumentError):
    """A boundary set of odd size was given."""


class SizeError(ArgumentError):
    """A value set larger than the dimension d."""


class Inconsistent(SymdiffError):
    """A linear system over GF(2) has no solution."""


class TooLarge(SymdiffError):
    """Refusing to materialise an instance beyond the desk-scale guard."""


class EmptyFamily(ArgumentError):
    pass
