"""Split octonions as pairs of 2x2 matrices, and 27-dimensional Jordan algebras.

Scalars live in an exact coefficient field: the rationals (via Fraction) or
a prime field with at least five elements.  The octonion product follows the
vector-matrix construction; hermitian 3x3 octonion matrices with the product
(XY + YX)/2 realize the Jordan algebra, whose quadratic form is computed
both from the trace and from its explicit expansion.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from random import Random
from typing import Callable, List, Tuple

from .cyclotomic import is_prime
from .errors import FieldMismatch

__all__ = [
    "Fp",
    "PrimeField",
    "RationalField",
    "Octonion",
    "oct_mul",
    "oct_norm",
    "oct_conj",
    "oct_add",
    "oct_sub",
    "oct_neg",
    "oct_scale",
    "oct_unit",
    "oct_zero",
    "oct_scalar",
    "oct_basis",
    "random_octonion",
    "AlbertElement",
    "albert_from_coords",
    "albert_identity",
    "albert_zero",
    "albert_add",
    "albert_scale",
    "albert_mul",
    "albert_q",
    "albert_bilinear",
    "idempotent_u",
    "E0Space",
    "e0_basis",
]


@dataclass(frozen=True)
class Fp:
    """An element of a prime field."""

    value: int
    p: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.p)

    def _coerce(self, other) -> "Fp":
        if isinstance(other, Fp):
            if other.p != self.p:
                raise FieldMismatch(f"mixed fields F_{self.p} and F_{other.p}")
            return other
        if isinstance(other, int):
            return Fp(other, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Fp(self.value + o.value, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Fp(self.value - o.value, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Fp(o.value - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Fp(self.value * o.value, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o.value == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return Fp(self.value * pow(o.value, -1, self.p), self.p)

    def __neg__(self):
        return Fp(-self.value, self.p)

    def __bool__(self):
        return self.value != 0


@dataclass(frozen=True)
class PrimeField:
    """The field with p elements, p prime and not 2 or 3."""

    p: int

    def __post_init__(self):
        if self.p in (2, 3) or not is_prime(self.p):
            raise ValueError("coefficient field must be F_p with p >= 5 prime")

    @property
    def zero(self) -> Fp:
        return Fp(0, self.p)

    @property
    def one(self) -> Fp:
        return Fp(1, self.p)

    def from_int(self, k: int) -> Fp:
        return Fp(k, self.p)

    def random(self, rng: Random) -> Fp:
        return Fp(rng.randrange(self.p), self.p)


class RationalField:
    """The rationals, with exact Fraction scalars."""

    zero = Fraction(0)
    one = Fraction(1)

    @staticmethod
    def from_int(k: int) -> Fraction:
        return Fraction(k)

    @staticmethod
    def random(rng: Random) -> Fraction:
        return Fraction(rng.randint(-9, 9), rng.randint(1, 9))


Mat2 = Tuple  # (a, b, c, d) for [[a, b], [c, d]]


def _m_mul(x: Mat2, y: Mat2) -> Mat2:
    a, b, c, d = x
    e, f, g, h = y
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def _m_add(x: Mat2, y: Mat2) -> Mat2:
    return tuple(u + v for u, v in zip(x, y))


def _m_neg(x: Mat2) -> Mat2:
    return tuple(-u for u in x)


def _m_adj(x: Mat2) -> Mat2:
    a, b, c, d = x
    return (d, -b, -c, a)


def _m_det(x: Mat2):
    a, b, c, d = x
    return a * d - b * c


def _m_scale(s, x: Mat2) -> Mat2:
    return tuple(s * u for u in x)


@dataclass(frozen=True)
class Octonion:
    """A split octonion: a pair of 2x2 matrices over the coefficient field."""

    x: Mat2
    y: Mat2

    def scalar_part_or_none(self):
        a, b, c, d = self.x
        if b or c or any(self.y) or a != d:
            return None
        return a


def _check_same_field(a, b) -> None:
    sa, sb = a, b
    if isinstance(sa, Fp) != isinstance(sb, Fp):
        raise FieldMismatch("operands live in different coefficient fields")
    if isinstance(sa, Fp) and sa.p != sb.p:
        raise FieldMismatch(f"mixed fields F_{sa.p} and F_{sb.p}")


def oct_mul(a: Octonion, b: Octonion) -> Octonion:
    """Vector-matrix product (x, y)(u, v) = (xu + adj(v) y, v x + y adj(u))."""
    _check_same_field(a.x[0], b.x[0])
    x, y, u, v = a.x, a.y, b.x, b.y
    return Octonion(
        _m_add(_m_mul(x, u), _m_mul(_m_adj(v), y)),
        _m_add(_m_mul(v, x), _m_mul(y, _m_adj(u))),
    )


def oct_norm(a: Octonion):
    return _m_det(a.x) - _m_det(a.y)


def oct_conj(a: Octonion) -> Octonion:
    return Octonion(_m_adj(a.x), _m_neg(a.y))


def oct_add(a: Octonion, b: Octonion) -> Octonion:
    return Octonion(_m_add(a.x, b.x), _m_add(a.y, b.y))


def oct_sub(a: Octonion, b: Octonion) -> Octonion:
    return oct_add(a, oct_neg(b))


def oct_neg(a: Octonion) -> Octonion:
    return Octonion(_m_neg(a.x), _m_neg(a.y))


def oct_scale(s, a: Octonion) -> Octonion:
    return Octonion(_m_scale(s, a.x), _m_scale(s, a.y))


def oct_unit(field) -> Octonion:
    z, o = field.zero, field.one
    return Octonion((o, z, z, o), (z, z, z, z))


def oct_zero(field) -> Octonion:
    z = field.zero
    return Octonion((z, z, z, z), (z, z, z, z))


def oct_scalar(field, s) -> Octonion:
    z = field.zero
    return Octonion((s, z, z, s), (z, z, z, z))


def oct_basis(field) -> List[Octonion]:
    """The eight coordinate units of the split algebra."""
    z = field.zero
    o = field.one
    units = []
    for slot in range(8):
        coords = [z] * 8
        coords[slot] = o
        units.append(Octonion(tuple(coords[:4]), tuple(coords[4:])))
    return units


def random_octonion(field, rng: Random) -> Octonion:
    vals = [field.random(rng) for _ in range(8)]
    return Octonion(tuple(vals[:4]), tuple(vals[4:]))


# --- the 27-dimensional Jordan algebra ----------------------------------------


@dataclass(frozen=True)
class AlbertElement:
    """A hermitian 3x3 octonion matrix for the diagonal form gamma."""

    m: Tuple[Tuple[Octonion, Octonion, Octonion], ...]
    gamma: Tuple

    def __post_init__(self):
        g = self.gamma
        if len(g) != 3 or not all(g):
            raise ValueError("gamma must be three nonzero scalars")
        for i in range(3):
            if self.m[i][i].scalar_part_or_none() is None:
                raise ValueError("diagonal entries must be scalars")
        for i in range(3):
            for j in range(3):
                if i == j:
                    continue
                # m[j][i] = gamma_j^{-1} gamma_i conj(m[i][j])
                expect = oct_scale(g[i] / g[j], oct_conj(self.m[i][j]))
                if self.m[j][i] != expect:
                    raise ValueError("matrix is not fixed by the involution")

    def diag(self) -> Tuple:
        return tuple(self.m[i][i].scalar_part_or_none() for i in range(3))


def albert_from_coords(field, gamma, xs, cs) -> AlbertElement:
    """Build the hermitian matrix from its independent coordinates
    (three diagonal scalars and three octonions)."""
    x1, x2, x3 = xs
    c1, c2, c3 = cs
    g1, g2, g3 = gamma
    row1 = (oct_scalar(field, x1), c3, oct_scale(g3 / g1, oct_conj(c2)))
    row2 = (oct_scale(g1 / g2, oct_conj(c3)), oct_scalar(field, x2), c1)
    row3 = (c2, oct_scale(g2 / g3, oct_conj(c1)), oct_scalar(field, x3))
    return AlbertElement((row1, row2, row3), tuple(gamma))


def albert_identity(field, gamma) -> AlbertElement:
    o = field.one
    zo = oct_zero(field)
    return albert_from_coords(field, gamma, (o, o, o), (zo, zo, zo))


def albert_zero(field, gamma) -> AlbertElement:
    z = field.zero
    zo = oct_zero(field)
    return albert_from_coords(field, gamma, (z, z, z), (zo, zo, zo))


def idempotent_u(field, gamma) -> AlbertElement:
    """diag(0, 0, 1): a primitive idempotent."""
    z, o = field.zero, field.one
    zo = oct_zero(field)
    return albert_from_coords(field, gamma, (z, z, o), (zo, zo, zo))


def _assoc_mul(x: AlbertElement, y: AlbertElement):
    rows = []
    for i in range(3):
        row = []
        for j in range(3):
            acc = oct_mul(x.m[i][0], y.m[0][j])
            acc = oct_add(acc, oct_mul(x.m[i][1], y.m[1][j]))
            acc = oct_add(acc, oct_mul(x.m[i][2], y.m[2][j]))
            row.append(acc)
        rows.append(tuple(row))
    return tuple(rows)


def albert_add(x: AlbertElement, y: AlbertElement) -> AlbertElement:
    _check_albert_compat(x, y)
    rows = tuple(
        tuple(oct_add(x.m[i][j], y.m[i][j]) for j in range(3)) for i in range(3)
    )
    return AlbertElement(rows, x.gamma)


def albert_scale(s, x: AlbertElement) -> AlbertElement:
    rows = tuple(tuple(oct_scale(s, x.m[i][j]) for j in range(3)) for i in range(3))
    return AlbertElement(rows, x.gamma)


def _check_albert_compat(x: AlbertElement, y: AlbertElement) -> None:
    if x.gamma != y.gamma:
        raise FieldMismatch("elements built for different gamma forms")
    _check_same_field(x.m[0][0].x[0], y.m[0][0].x[0])


def albert_mul(x: AlbertElement, y: AlbertElement) -> AlbertElement:
    """Jordan product (XY + YX) / 2; the result is hermitian again."""
    _check_albert_compat(x, y)
    one = x.gamma[0] / x.gamma[0]
    half = one / (one + one)
    xy = _assoc_mul(x, y)
    yx = _assoc_mul(y, x)
    rows = tuple(
        tuple(oct_scale(half, oct_add(xy[i][j], yx[i][j])) for j in range(3))
        for i in range(3)
    )
    return AlbertElement(rows, x.gamma)


def albert_q(x: AlbertElement):
    """The quadratic form tr(X^2)/2, cross-checked against its expansion."""
    one = x.gamma[0] / x.gamma[0]
    half = one / (one + one)
    square = _assoc_mul(x, x)
    scalars = []
    for i in range(3):
        s = square[i][i].scalar_part_or_none()
        if s is None:
            raise AssertionError("diagonal of the square is not scalar")
        scalars.append(s)
    via_trace = half * (scalars[0] + scalars[1] + scalars[2])

    g1, g2, g3 = x.gamma
    x1, x2, x3 = x.diag()
    c1, c2, c3 = x.m[1][2], x.m[2][0], x.m[0][1]
    via_expansion = (
        half * (x1 * x1 + x2 * x2 + x3 * x3)
        + g2 / g3 * oct_norm(c1)
        + g3 / g1 * oct_norm(c2)
        + g1 / g2 * oct_norm(c3)
    )
    if via_trace != via_expansion:
        raise AssertionError("the two quadratic-form computations disagree")
    return via_trace


def albert_bilinear(x: AlbertElement, y: AlbertElement):
    """The bilinear form Q(x + y) - Q(x) - Q(y)."""
    return albert_q(albert_add(x, y)) - albert_q(x) - albert_q(y)


@dataclass(frozen=True)
class E0Space:
    """The 9-dimensional subspace attached to the idempotent diag(0,0,1)
    for gamma = (1, -1, 1), parametrized by pairs (x, c)."""

    field: object
    gamma: Tuple
    basis: Tuple[AlbertElement, ...]
    embed: Callable
    form: Callable


def e0_basis(field, gamma=None) -> E0Space:
    """Basis and quadratic form of the subspace orthogonal to 1 and u and
    killed by u; the form evaluates to x^2 - N(c)."""
    o = field.one
    default = (o, -o, o)
    if gamma is None:
        gamma = default
    if tuple(gamma) != default:
        raise ValueError("the rank-1 configuration requires gamma = (1, -1, 1)")

    zo = oct_zero(field)
    z = field.zero

    def embed(x, c: Octonion) -> AlbertElement:
        return albert_from_coords(field, gamma, (x, -x, z), (zo, zo, c))

    def form(x, c: Octonion):
        value = albert_q(embed(x, c))
        closed = x * x - oct_norm(c)
        if value != closed:
            raise AssertionError("induced form disagrees with x^2 - N(c)")
        return value

    basis = [embed(o, zo)] + [embed(z, e) for e in oct_basis(field)]
    return E0Space(field, tuple(gamma), tuple(basis), embed, form)
