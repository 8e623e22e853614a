"""Exception types shared across the package."""


class WeylOrdersError(Exception):
    """Base class for all errors raised by this package."""


class TypeParseError(WeylOrdersError):
    """A type expression could not be parsed; the message names the offending token."""


class FactorizationLimitError(WeylOrdersError):
    """Integer too large for the desk-scale factorization guarantee."""


class MatrixOverflowError(WeylOrdersError):
    """A matrix entry left the fixed-width range during group enumeration."""


class E8WithoutTable(WeylOrdersError):
    """An operation needs the E8 character-polynomial table and none was supplied."""


class Unresolvable(WeylOrdersError):
    """An invariant cannot be computed from degree data alone and no table is available."""


class NotAWeylFamily(WeylOrdersError):
    """A polynomial family is inconsistent with being ch(W) for any Weyl group."""


class AmbiguousBlock(WeylOrdersError):
    """Block identification found more than one consistent factor multiset."""


class NotCoincident(WeylOrdersError):
    """The two types do not have equal degree multisets."""


class NoPeelingElement(WeylOrdersError):
    """No peeling element was found for a pair of top-degree factors."""


class CacheInvalid(WeylOrdersError):
    """A cache file failed an integrity certificate; the message names it."""


class FieldMismatch(WeylOrdersError):
    """Operands belong to different coefficient fields."""
