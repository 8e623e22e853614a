"""Exact integer-polynomial and p-adic-valuation arithmetic.

Cyclotomic polynomials, the factorization of x^d - 1, evaluation at prime
powers, valuation rules for a^n - b^n, and integer factorization utilities
(trial division + Brent's rho with deterministic primality certification).
All arithmetic is arbitrary-precision; nothing here touches floating point.
"""

from __future__ import annotations

import math
import random
import threading
from dataclasses import dataclass
from typing import Dict, Iterable, Mapping, Tuple

from .errors import FactorizationLimitError

__all__ = [
    "IntPoly",
    "CycloProduct",
    "cyclotomic",
    "factor_power_minus_one",
    "eval_cyclo_product",
    "ord_p_power_diff",
    "p_contribution",
    "largest_prime_power_divisor",
    "factorize",
    "is_prime",
    "euler_phi",
    "FACTOR_INPUT_LIMIT",
]

#: Inputs at or above this bound are rejected rather than factored.
FACTOR_INPUT_LIMIT = 1 << 400


@dataclass(frozen=True)
class IntPoly:
    """Dense integer polynomial, constant term first.

    The zero polynomial is the empty tuple; otherwise the leading
    coefficient is nonzero and degree == len(coeffs) - 1.
    """

    coeffs: Tuple[int, ...]

    @staticmethod
    def make(coeffs: Iterable[int]) -> "IntPoly":
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        return IntPoly(tuple(c))

    @staticmethod
    def x_power_minus_one(d: int) -> "IntPoly":
        if d < 1:
            raise ValueError("exponent must be >= 1")
        return IntPoly((-1,) + (0,) * (d - 1) + (1,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_one(self) -> bool:
        return self.coeffs == (1,)

    def __mul__(self, other: "IntPoly") -> "IntPoly":
        if not self.coeffs or not other.coeffs:
            return IntPoly(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPoly(tuple(out))

    def exact_div(self, other: "IntPoly") -> "IntPoly":
        """Exact quotient self / other; raises ValueError on any remainder."""
        q, r = self.divmod(other)
        if r.coeffs:
            raise ValueError("polynomial division left a remainder")
        return q

    def divmod(self, other: "IntPoly") -> Tuple["IntPoly", "IntPoly"]:
        """Division with remainder by a monic divisor."""
        if not other.coeffs:
            raise ZeroDivisionError("division by the zero polynomial")
        if other.coeffs[-1] != 1:
            raise ValueError("divisor must be monic")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return IntPoly(()), self
        quot = [0] * (dq + 1)
        for k in range(dq, -1, -1):
            c = rem[k + other.degree]
            quot[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return IntPoly.make(quot), IntPoly.make(rem)

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc


_phi_cache: Dict[int, int] = {}


def euler_phi(n: int) -> int:
    if n < 1:
        raise ValueError("phi is defined for n >= 1")
    got = _phi_cache.get(n)
    if got is not None:
        return got
    out, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            out -= out // p
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out -= out // m
    _phi_cache[n] = out
    return out


_cyclo_cache: Dict[int, IntPoly] = {1: IntPoly((-1, 1))}
_cyclo_lock = threading.Lock()


def cyclotomic(n: int) -> IntPoly:
    """The n-th cyclotomic polynomial, by exact division of x^n - 1."""
    if n < 1:
        raise ValueError("cyclotomic index must be >= 1")
    got = _cyclo_cache.get(n)
    if got is not None:
        return got
    poly = IntPoly.x_power_minus_one(n)
    for e in range(1, n):
        if n % e == 0:
            poly = poly.exact_div(cyclotomic(e))
    with _cyclo_lock:
        _cyclo_cache.setdefault(n, poly)
    return _cyclo_cache[n]


@dataclass(frozen=True)
class CycloProduct:
    """A product of cyclotomic polynomials, as sorted (index, multiplicity) pairs."""

    exps: Tuple[Tuple[int, int], ...]

    @staticmethod
    def from_mapping(m: Mapping[int, int]) -> "CycloProduct":
        items = tuple(sorted((int(d), int(t)) for d, t in m.items() if t))
        for d, t in items:
            if d < 1 or t < 1:
                raise ValueError(f"bad cyclotomic factor phi_{d}^{t}")
        return CycloProduct(items)

    @staticmethod
    def one() -> "CycloProduct":
        return CycloProduct(())

    def as_dict(self) -> Dict[int, int]:
        return dict(self.exps)

    def exponent(self, d: int) -> int:
        for e, t in self.exps:
            if e == d:
                return t
        return 0

    def indices(self) -> Tuple[int, ...]:
        return tuple(d for d, _ in self.exps)

    @property
    def degree(self) -> int:
        return sum(t * euler_phi(d) for d, t in self.exps)

    def __mul__(self, other: "CycloProduct") -> "CycloProduct":
        m = self.as_dict()
        for d, t in other.exps:
            m[d] = m.get(d, 0) + t
        return CycloProduct.from_mapping(m)

    def exact_div(self, other: "CycloProduct") -> "CycloProduct":
        m = self.as_dict()
        for d, t in other.exps:
            m[d] = m.get(d, 0) - t
            if m[d] < 0:
                raise ValueError(f"phi_{d}^{t} does not divide this product")
        return CycloProduct.from_mapping(m)

    def to_poly(self) -> IntPoly:
        out = IntPoly((1,))
        for d, t in self.exps:
            f = cyclotomic(d)
            for _ in range(t):
                out = out * f
        return out

    def __str__(self) -> str:
        if not self.exps:
            return "1"
        return "*".join(
            f"phi{d}" if t == 1 else f"phi{d}^{t}" for d, t in self.exps
        )


def factor_power_minus_one(d: int) -> CycloProduct:
    """x^d - 1 as a cyclotomic product: one phi_e for each divisor e of d."""
    if d < 1:
        raise ValueError("d must be >= 1")
    return CycloProduct.from_mapping({e: 1 for e in range(1, d + 1) if d % e == 0})


def eval_cyclo_product(p: CycloProduct, q: int) -> int:
    return math.prod(cyclotomic(d)(q) ** t for d, t in p.exps)


def _valuation(m: int, p: int) -> int:
    v = 0
    while m % p == 0:
        m //= p
        v += 1
    return v


def ord_p_power_diff(p: int, a: int, b: int, n: int) -> int:
    """Valuation of p in a^n - b^n, by the cyclotomic-form valuation rules.

    Requires gcd(a, b) = 1 and |a| >= |b| + 1 >= 2.  Rejects p | a or p | b,
    where the value would trivially be 0 under the coprimality hypothesis.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if math.gcd(a, b) != 1:
        raise ValueError("a and b must be coprime")
    if not (abs(a) >= abs(b) + 1 >= 2):
        raise ValueError("need |a| >= |b| + 1 >= 2")
    if a % p == 0 or b % p == 0:
        raise ValueError(f"{p} divides a or b; a^n - b^n is then prime to {p}")

    if p == 2:
        # a, b both odd; exactly one of a-b, a+b is 0 mod 4.  Sum the
        # contributions of the homogeneous cyclotomic forms at indices 2^i | n.
        v2n = _valuation(n, 2)
        total = _valuation(a - b, 2)  # index-1 form, always a - b
        if (a - b) % 4 == 0:
            total += v2n  # each form at 2^i, 1 <= i <= v, contributes 1
        else:
            if v2n >= 1:
                total += _valuation(a + b, 2)  # index-2 form is a + b
                total += v2n - 1  # forms at 2^i, i >= 2
        return total

    # odd p: f = multiplicative order of a/b mod p
    ab = a * pow(b, -1, p) % p
    f = 1
    acc = ab
    while acc != 1:
        acc = acc * ab % p
        f += 1
    if n % f:
        return 0
    return _valuation(a**f - b**f, p) + _valuation(n, p)


def p_contribution(m: int, p: int) -> int:
    """Largest power of p dividing m (m >= 1)."""
    if m < 1:
        raise ValueError("m must be >= 1")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return p ** _valuation(m, p)


# --- integer factorization -------------------------------------------------

_TRIAL_LIMIT = 10**6
_small_primes: list = []
_sieve_lock = threading.Lock()


def _trial_primes() -> list:
    global _small_primes
    if _small_primes:
        return _small_primes
    with _sieve_lock:
        if _small_primes:
            return _small_primes
        sieve = bytearray([1]) * (_TRIAL_LIMIT + 1)
        sieve[0] = sieve[1] = 0
        for i in range(2, math.isqrt(_TRIAL_LIMIT) + 1):
            if sieve[i]:
                sieve[i * i :: i] = bytearray((_TRIAL_LIMIT - i * i) // i + 1)
        _small_primes = [i for i in range(2, _TRIAL_LIMIT + 1) if sieve[i]]
    return _small_primes


# Deterministic Miller-Rabin below this bound with the 13 smallest prime bases.
_MR_DETERMINISTIC_BOUND = 3317044064679887385961981
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def _miller_rabin(n: int, base: int) -> bool:
    if base % n == 0:
        return True
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(base, d, n)
    if x in (1, n - 1):
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int) -> bool:
    """Primality with a deterministic certificate at desk scale.

    Below the proven Miller-Rabin bound the fixed 13-base test is exact;
    above it a Pocklington certificate is built from a partial factorization
    of n - 1.
    """
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        if n == p:
            return True
        if n % p == 0:
            return False
    if n < _MR_DETERMINISTIC_BOUND:
        return all(_miller_rabin(n, b) for b in _MR_BASES)
    if not all(_miller_rabin(n, b) for b in _MR_BASES):
        return False
    return _pocklington(n)


def _pocklington(n: int) -> bool:
    """Certify primality of n via a factored part F > sqrt(n) of n - 1."""
    m = n - 1
    factored: Dict[int, int] = {}
    f_part = 1
    for p, e in factorize(m).items():
        factored[p] = e
        f_part *= p**e
        if f_part * f_part > n:
            break
    if f_part * f_part <= n:
        raise FactorizationLimitError(
            f"cannot certify primality of {n}: factored part of n-1 too small"
        )
    for p in factored:
        ok = False
        for a in range(2, 1000):
            if pow(a, n - 1, n) != 1:
                return False
            if math.gcd(pow(a, (n - 1) // p, n) - 1, n) == 1:
                ok = True
                break
        if not ok:
            return False
    return True


def _brent_rho(n: int) -> int:
    """A nontrivial factor of odd composite n (Brent's cycle variant)."""
    rng = random.Random(n)
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def factorize(m: int) -> Dict[int, int]:
    """Full prime factorization of m >= 1 as {prime: exponent}.

    Trial division up to 10^6, then rho splitting with certified primality.
    Inputs at or beyond 2^400 are rejected (desk-scale guarantee).
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    if m >= FACTOR_INPUT_LIMIT:
        raise FactorizationLimitError(f"input exceeds 2^400: {m.bit_length()} bits")
    out: Dict[int, int] = {}
    for p in _trial_primes():
        if p * p > m:
            break
        while m % p == 0:
            out[p] = out.get(p, 0) + 1
            m //= p
    if m == 1:
        return out
    stack = [m]
    while stack:
        v = stack.pop()
        if is_prime(v):
            out[v] = out.get(v, 0) + 1
            continue
        d = _brent_rho(v)
        stack.append(d)
        stack.append(v // d)
    return dict(sorted(out.items()))


def largest_prime_power_divisor(m: int) -> Tuple[int, int]:
    """The (p, e) maximizing p^e over the prime-power contributions to m >= 2."""
    if m < 2:
        raise ValueError("m must be >= 2")
    fac = factorize(m)
    best = max(fac.items(), key=lambda pe: pe[0] ** pe[1])
    return best
