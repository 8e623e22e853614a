"""Exact orders of finite semisimple groups and their determination properties.

The order of the rational-point group over a field with q elements is
q^N * prod(q^d - 1) over the fundamental degrees d, where N is the number
of positive roots.  Equality of orders at a fixed q is equivalent to
equality of degree multisets, which this module exploits and cross-checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .cyclotomic import factorize, is_prime, largest_prime_power_divisor
from .errors import WeylOrdersError
from .rootsystem import (
    SemisimpleType,
    SimpleType,
    all_semisimple_types,
    degrees,
    positive_root_count,
    render,
)

__all__ = [
    "FactoredOrder",
    "order_factored",
    "order_value",
    "same_order_all_extensions",
    "p_contribution_is_largest",
    "ContributionWitness",
    "in_exception_list",
    "check_field_determination",
    "FieldDeterminationReport",
    "recognize_order",
    "split_prime_power",
]


def split_prime_power(q: int) -> Tuple[int, int]:
    """Write q = p^t with p prime, or raise."""
    if q < 2:
        raise WeylOrdersError(f"{q} is not a prime power")
    fac = factorize(q)
    if len(fac) != 1:
        raise WeylOrdersError(f"{q} is not a prime power")
    [(p, t)] = fac.items()
    return p, t


@dataclass(frozen=True)
class FactoredOrder:
    """The symbolic order q^N * prod(q^d - 1)."""

    p: int
    t: int
    n_exp: int
    degrees: Tuple[int, ...]

    @property
    def q(self) -> int:
        return self.p**self.t

    def value(self) -> int:
        q = self.q
        return q**self.n_exp * math.prod(q**d - 1 for d in self.degrees)

    def __str__(self) -> str:
        prods = "".join(f"(q^{d}-1)" for d in self.degrees)
        return f"q^{self.n_exp}{prods} at q={self.q}"


def order_factored(t: SemisimpleType, q: int) -> FactoredOrder:
    p, e = split_prime_power(q)
    return FactoredOrder(p, e, positive_root_count(t), degrees(t))


def order_value(t: SemisimpleType, q: int) -> int:
    return order_factored(t, q).value()


def same_order_all_extensions(t1: SemisimpleType, t2: SemisimpleType) -> bool:
    """True iff the degree multisets agree, hence the orders agree at every q."""
    return degrees(t1) == degrees(t2)


@dataclass(frozen=True)
class ContributionWitness:
    char_prime: int
    char_power: int  # q^N
    rival_prime: int
    rival_power: int  # largest prime power in the prime-to-p part


def p_contribution_is_largest(t: SemisimpleType, q: int) -> Tuple[bool, ContributionWitness]:
    """Compare q^N with the largest prime power dividing the rest of the order."""
    fo = order_factored(t, q)
    if fo.n_exp == 0:
        raise WeylOrdersError("empty type has no characteristic contribution")
    char_power = fo.q**fo.n_exp
    rest = math.prod(fo.q**d - 1 for d in fo.degrees)
    rp, re = largest_prime_power_divisor(rest)
    witness = ContributionWitness(fo.p, char_power, rp, rp**re)
    return char_power > witness.rival_power, witness


def _is_power_of_two(m: int) -> bool:
    return m >= 1 and (m & (m - 1)) == 0


def in_exception_list(t: SimpleType, q: int) -> bool:
    """The full list of simple groups whose characteristic does not contribute
    the largest prime power to the order: rank-1 groups over q in
    {8, 9, 2^r with 2^r+1 prime, primes adjacent to a power of two}, and the
    rank-2 symplectic/orthogonal group over the 3-element field."""
    t = t.canonical()
    p, _ = split_prime_power(q)
    if t == SimpleType("B", 2):
        return q == 3
    if t != SimpleType("A", 1):
        return False
    if q in (8, 9):
        return True
    if p == 2 and is_prime(q + 1):
        return True
    if q == p and (_is_power_of_two(q - 1) or _is_power_of_two(q + 1)):
        return True
    return False


@dataclass
class FieldDeterminationReport:
    t1: str
    q1: int
    t2: str
    q2: int
    order1: int
    order2: int
    orders_equal: bool
    q_equal: Optional[bool] = None
    degrees_equal: Optional[bool] = None

    @property
    def ok(self) -> bool:
        if not self.orders_equal:
            return True  # nothing to determine
        return bool(self.q_equal and self.degrees_equal)

    def to_json(self) -> Dict:
        return {
            "t1": self.t1,
            "q1": self.q1,
            "t2": self.t2,
            "q2": self.q2,
            "order1": str(self.order1),
            "order2": str(self.order2),
            "orders_equal": self.orders_equal,
            "q_equal": self.q_equal,
            "degrees_equal": self.degrees_equal,
            "ok": self.ok,
        }


def check_field_determination(
    t1: SemisimpleType, q1: int, t2: SemisimpleType, q2: int
) -> FieldDeterminationReport:
    """If the orders over q1 and q2 (same characteristic) agree, assert that
    q1 = q2 and the degree multisets match."""
    p1, _ = split_prime_power(q1)
    p2, _ = split_prime_power(q2)
    if p1 != p2:
        raise WeylOrdersError("fields must share their characteristic")
    o1, o2 = order_value(t1, q1), order_value(t2, q2)
    report = FieldDeterminationReport(render(t1), q1, render(t2), q2, o1, o2, o1 == o2)
    if o1 == o2:
        report.q_equal = q1 == q2
        report.degrees_equal = degrees(t1) == degrees(t2)
    return report


def recognize_order(m: int, rank_bound: int) -> List[Tuple[SemisimpleType, int]]:
    """All (type, q) with total rank <= rank_bound and that exact order.

    For each prime p | m the characteristic exponent forces q: the product
    part is prime to p, so ord_p(m) = t * N exactly.  Each candidate is
    verified by exact evaluation.
    """
    if m < 2:
        raise WeylOrdersError("m must be >= 2")
    fac = factorize(m)
    candidates = list(all_semisimple_types(rank_bound, include_e8=True))
    hits = []
    for p, v in fac.items():
        for t in candidates:
            n_exp = positive_root_count(t)
            if n_exp == 0 or v % n_exp:
                continue
            q = p ** (v // n_exp)
            if order_value(t, q) == m:
                hits.append((t, q))
    hits.sort(key=lambda tq: (render(tq[0]), tq[1]))
    return hits
