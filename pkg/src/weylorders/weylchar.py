"""Characteristic polynomials of Weyl group elements and their invariants.

Tables are computed combinatorially for the classical families (cycle types
of permutations and signed permutations), by exhaustive matrix enumeration
for G2, F4, E6 and E7, and by degree-derived reductions for E8.  Every table
carries element counts so the group order acts as a correctness certificate.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

import numpy as np

from .cyclotomic import CycloProduct, IntPoly, cyclotomic, euler_phi
from .errors import E8WithoutTable, MatrixOverflowError, Unresolvable
from .rootsystem import (
    SemisimpleType,
    SimpleType,
    degrees,
    reflection_generators,
    weyl_order,
)

__all__ = [
    "CharPolyTable",
    "InvariantProfile",
    "charpolys_classical",
    "charpolys_exceptional",
    "charpolys_enumerated",
    "charpolys",
    "seed_table",
    "ch_star",
    "mu",
    "mu_prime",
    "mu_joint",
    "invariant_profile",
]

_ENTRY_BOUND = 100  # Weyl matrices in root coordinates stay far below this


@dataclass(frozen=True)
class CharPolyTable:
    """Multiset of characteristic polynomials with element counts."""

    type_label: SemisimpleType
    group_order: int
    entries: Dict[CycloProduct, int]

    def validate(self) -> None:
        rank = self.type_label.rank
        total = 0
        for poly, count in self.entries.items():
            if poly.degree != rank:
                raise ValueError(f"entry {poly} has degree {poly.degree}, rank is {rank}")
            if count < 1:
                raise ValueError(f"entry {poly} has count {count}")
            total += count
        if total != self.group_order:
            raise ValueError(
                f"counts sum to {total}, group order is {self.group_order}"
            )
        ident = CycloProduct.from_mapping({1: rank} if rank else {})
        if ident not in self.entries:
            raise ValueError("identity polynomial missing from table")

    def poly_set(self) -> FrozenSet[CycloProduct]:
        return frozenset(self.entries)

    def indices(self) -> FrozenSet[int]:
        out = set()
        for poly in self.entries:
            out.update(poly.indices())
        return frozenset(out)


# --- partitions and classical tables -----------------------------------------

_partition_cache: Dict[int, List[Tuple[int, ...]]] = {}


def _partitions(n: int) -> List[Tuple[int, ...]]:
    if n in _partition_cache:
        return _partition_cache[n]
    out: List[Tuple[int, ...]] = []

    def rec(remaining: int, largest: int, acc: List[int]) -> None:
        if remaining == 0:
            out.append(tuple(acc))
            return
        for part in range(min(remaining, largest), 0, -1):
            acc.append(part)
            rec(remaining - part, part, acc)
            acc.pop()

    rec(n, n, [])
    _partition_cache[n] = out
    return out


def _multiplicities(parts: Tuple[int, ...]) -> Dict[int, int]:
    m: Dict[int, int] = {}
    for p in parts:
        m[p] = m.get(p, 0) + 1
    return m


def _sym_centralizer(parts: Tuple[int, ...]) -> int:
    z = 1
    for i, mult in _multiplicities(parts).items():
        z *= i**mult * math.factorial(mult)
    return z


def _signed_centralizer(parts: Tuple[int, ...]) -> int:
    z = 1
    for i, mult in _multiplicities(parts).items():
        z *= (2 * i) ** mult * math.factorial(mult)
    return z


def _poly_positive_cycles(parts: Iterable[int]) -> Dict[int, int]:
    exps: Dict[int, int] = {}
    for part in parts:
        for e in range(1, part + 1):
            if part % e == 0:
                exps[e] = exps.get(e, 0) + 1
    return exps


def _poly_negative_cycles(parts: Iterable[int], exps: Dict[int, int]) -> None:
    # x^m + 1 contributes phi_e for divisors e of 2m that do not divide m
    for part in parts:
        for e in range(1, 2 * part + 1):
            if (2 * part) % e == 0 and part % e != 0:
                exps[e] = exps.get(e, 0) + 1


def charpolys_classical(t: SimpleType) -> CharPolyTable:
    """Combinatorial table for a classical simple type (A, B/C or D)."""
    t = t.canonical()
    if t.letter not in ("A", "B", "D"):
        raise ValueError(f"{t} is not classical; use charpolys_exceptional")
    n = t.rank
    entries: Dict[CycloProduct, int] = {}

    if t.letter == "A":
        order = math.factorial(n + 1)
        for lam in _partitions(n + 1):
            exps = _poly_positive_cycles(lam)
            exps[1] -= 1  # reflection representation drops one trivial factor
            poly = CycloProduct.from_mapping(exps)
            count = order // _sym_centralizer(lam)
            entries[poly] = entries.get(poly, 0) + count
    else:
        order = 2**n * math.factorial(n)
        keep_all = t.letter == "B"
        for k in range(n + 1):
            for lam in _partitions(k):
                z_lam = _signed_centralizer(lam)
                for mu_parts in _partitions(n - k):
                    if not keep_all and len(mu_parts) % 2:
                        continue
                    exps = _poly_positive_cycles(lam)
                    _poly_negative_cycles(mu_parts, exps)
                    poly = CycloProduct.from_mapping(exps)
                    count = order // (z_lam * _signed_centralizer(mu_parts))
                    entries[poly] = entries.get(poly, 0) + count
        if t.letter == "D":
            order //= 2

    table = CharPolyTable(SemisimpleType.of(t), order, entries)
    table.validate()
    return table


# --- exhaustive matrix enumeration -------------------------------------------


def _bfs_elements(gens: List[Tuple[Tuple[int, ...], ...]]) -> np.ndarray:
    """Closure of the generators under multiplication, as an (N, n, n) array.

    Products of a BFS level land in the adjacent levels only (reflection
    length changes by one), so deduplication needs just two level sets.
    """
    n = len(gens[0])
    gen_arr = np.array(gens, dtype=np.int32)
    ident = np.eye(n, dtype=np.int8)[None, :, :]
    levels = [ident]
    prev_keys: set = set()
    cur_keys = {ident.tobytes()}
    frontier = ident.astype(np.int32)
    row_bytes = n * n
    while True:
        prods = np.concatenate([frontier @ g for g in gen_arr], axis=0)
        if np.abs(prods).max() > _ENTRY_BOUND:
            raise MatrixOverflowError("matrix entries left the expected range")
        uniq = np.unique(prods.astype(np.int8).reshape(-1, row_bytes), axis=0)
        blob = uniq.tobytes()
        fresh_rows = []
        next_keys = set()
        for i in range(len(uniq)):
            key = blob[i * row_bytes : (i + 1) * row_bytes]
            if key in prev_keys or key in cur_keys:
                continue
            next_keys.add(key)
            fresh_rows.append(i)
        if not fresh_rows:
            break
        level = uniq[fresh_rows].reshape(-1, n, n)
        levels.append(level)
        prev_keys, cur_keys = cur_keys, next_keys
        frontier = level.astype(np.int32)
    return np.concatenate(levels, axis=0)


def _newton_charpoly(power_sums: Tuple[int, ...]) -> IntPoly:
    """Characteristic polynomial from trace power sums, exactly."""
    n = len(power_sums)
    e = [1] + [0] * n
    for k in range(1, n + 1):
        acc = 0
        for i in range(1, k + 1):
            acc += (-1) ** (i - 1) * e[k - i] * power_sums[i - 1]
        if acc % k:
            raise ArithmeticError("power sums are not those of an integer matrix")
        e[k] = acc // k
    coeffs = [0] * (n + 1)
    for k in range(n + 1):
        coeffs[n - k] = (-1) ** k * e[k]
    return IntPoly.make(coeffs)


def _cyclo_candidates(n: int) -> List[int]:
    return [d for d in range(1, 2 * n * n + 2) if euler_phi(d) <= n]


def _factor_into_cyclotomics(poly: IntPoly) -> CycloProduct:
    exps: Dict[int, int] = {}
    n = poly.degree
    for d in _cyclo_candidates(n):
        phi_d = cyclotomic(d)
        while poly.degree >= phi_d.degree:
            q, r = poly.divmod(phi_d)
            if r.coeffs:
                break
            poly = q
            exps[d] = exps.get(d, 0) + 1
        if poly.is_one():
            break
    if not poly.is_one():
        raise ArithmeticError("polynomial has a non-cyclotomic factor")
    return CycloProduct.from_mapping(exps)


def charpolys_enumerated(t: SimpleType) -> CharPolyTable:
    """Brute-force table by exhaustive group generation; the enumeration oracle.

    Feasible for the classical types at small rank and for G2, F4, E6, E7.
    """
    t = t.canonical()
    if (t.letter, t.rank) == ("E", 8):
        raise E8WithoutTable(
            "exhaustive enumeration of the rank-8 exceptional Weyl group "
            "(696729600 elements) is out of desk scale; load a table from "
            "a cache directory instead"
        )
    elements = _bfs_elements(reflection_generators(t))
    n = t.rank
    count = len(elements)

    traces = np.empty((count, n), dtype=np.int64)
    chunk = 200_000
    for lo in range(0, count, chunk):
        block = elements[lo : lo + chunk].astype(np.int32)
        power = block.copy()
        traces[lo : lo + chunk, 0] = np.trace(power, axis1=1, axis2=2)
        for k in range(1, n):
            power = power @ block
            if np.abs(power).max() > _ENTRY_BOUND:
                raise MatrixOverflowError("matrix entries left the expected range")
            traces[lo : lo + chunk, k] = np.trace(power, axis1=1, axis2=2)

    uniq, counts = np.unique(traces, axis=0, return_counts=True)
    entries: Dict[CycloProduct, int] = {}
    for row, cnt in zip(uniq, counts):
        poly = _factor_into_cyclotomics(_newton_charpoly(tuple(int(v) for v in row)))
        entries[poly] = entries.get(poly, 0) + int(cnt)

    table = CharPolyTable(SemisimpleType.of(t), count, entries)
    table.validate()
    if count != weyl_order(t):
        raise MatrixOverflowError(
            f"enumeration of {t} found {count} elements, expected {weyl_order(t)}"
        )
    return table


_EXCEPTIONAL = {("G", 2), ("F", 4), ("E", 6), ("E", 7)}


def charpolys_exceptional(t: SimpleType) -> CharPolyTable:
    """Exhaustive table for G2, F4, E6 or E7."""
    t = t.canonical()
    if (t.letter, t.rank) == ("E", 8):
        raise E8WithoutTable(
            "E8 is not enumerated; supply a cached table (see the cli module)"
        )
    if (t.letter, t.rank) not in _EXCEPTIONAL:
        raise ValueError(f"{t} is classical; use charpolys_classical")
    return charpolys_enumerated(t)


# --- the table registry and products -----------------------------------------

_table_memo: Dict[SimpleType, CharPolyTable] = {}
_memo_lock = threading.Lock()


def seed_table(table: CharPolyTable) -> None:
    """Install an externally obtained single-factor table (validated first)."""
    table.validate()
    if len(table.type_label.factors) != 1:
        raise ValueError("only single-factor tables can be seeded")
    t = table.type_label.factors[0]
    if table.group_order != weyl_order(t):
        raise ValueError("group order does not match the type")
    with _memo_lock:
        _table_memo[t] = table


def simple_table(t: SimpleType, e8_table: Optional[CharPolyTable] = None) -> CharPolyTable:
    t = t.canonical()
    got = _table_memo.get(t)
    if got is not None:
        return got
    if (t.letter, t.rank) == ("E", 8):
        if e8_table is None:
            raise E8WithoutTable(
                "the E8 table must be supplied; compute or download one into "
                "a cache directory and load it"
            )
        seed_table(e8_table)
        return _table_memo[t]
    if (t.letter, t.rank) in _EXCEPTIONAL:
        table = charpolys_exceptional(t)
    else:
        table = charpolys_classical(t)
    with _memo_lock:
        _table_memo.setdefault(t, table)
    return _table_memo[t]


def charpolys(
    t: SemisimpleType, e8_table: Optional[CharPolyTable] = None
) -> CharPolyTable:
    """Table for a semisimple type: convolution product over the factors."""
    entries: Dict[CycloProduct, int] = {CycloProduct.one(): 1}
    order = 1
    for f in t.factors:
        ft = simple_table(f, e8_table)
        merged: Dict[CycloProduct, int] = {}
        for p1, c1 in entries.items():
            for p2, c2 in ft.entries.items():
                key = p1 * p2
                merged[key] = merged.get(key, 0) + c1 * c2
        entries = merged
        order *= ft.group_order
    table = CharPolyTable(t, order, entries)
    table.validate()
    return table


# --- invariants ---------------------------------------------------------------


def ch_star(t: SemisimpleType) -> FrozenSet[int]:
    """Indices r such that phi_r divides some member of ch(W): the divisor
    closure of the fundamental degrees (valid for every type, E8 included)."""
    out = set()
    for d in degrees(t):
        for r in range(1, d + 1):
            if d % r == 0:
                out.add(r)
    return frozenset(out)


def mu(t: SemisimpleType, i: int) -> int:
    """Number of fundamental degrees divisible by i; equals the maximal
    phi_i-exponent over the table when one exists."""
    if i < 1:
        raise ValueError("index must be >= 1")
    return sum(1 for d in degrees(t) if d % i == 0)


def _needs_table(f: SimpleType) -> bool:
    return (f.letter, f.rank) == ("E", 8) and f not in _table_memo


_mu_prime_cache: Dict[Tuple[SimpleType, int], int] = {}
_mu_joint_cache: Dict[Tuple[SimpleType, int, int], int] = {}


def _mu_prime_simple(f: SimpleType, i: int) -> int:
    got = _mu_prime_cache.get((f, i))
    if got is not None:
        return got
    top = mu(SemisimpleType.of(f), i)
    if top == 0:
        value = 0
    else:
        if _needs_table(f):
            raise Unresolvable(
                f"mu'_{i} of the rank-8 exceptional factor needs its table"
            )
        table = simple_table(f)
        value = min(p.exponent(2) for p in table.entries if p.exponent(i) == top)
    _mu_prime_cache[(f, i)] = value
    return value


def mu_prime(t: SemisimpleType, i: int) -> int:
    """Minimal phi_2-exponent accompanying the maximal phi_i-exponent (i > 2)."""
    if i <= 2:
        raise ValueError("mu' is defined only for indices > 2")
    return sum(_mu_prime_simple(f, i) for f in t.factors)


def _mu_joint_simple(f: SimpleType, i: int, j: int) -> int:
    got = _mu_joint_cache.get((f, i, j))
    if got is not None:
        return got
    ft = SemisimpleType.of(f)
    mi, mj = mu(ft, i), mu(ft, j)
    if mi == 0:
        value = mj
    elif mj == 0:
        value = mi
    else:
        if _needs_table(f):
            raise Unresolvable(
                f"mu_{{{i},{j}}} of the rank-8 exceptional factor needs its table"
            )
        table = simple_table(f)
        value = max(p.exponent(i) + p.exponent(j) for p in table.entries)
    _mu_joint_cache[(f, i, j)] = value
    return value


def mu_joint(t: SemisimpleType, i: int, j: int) -> int:
    """Maximal summed phi_i/phi_j exponent over the table, additively over
    factors; reduces to mu when one index never appears."""
    if i == j:
        raise ValueError("joint invariant needs two distinct indices")
    return sum(_mu_joint_simple(f, i, j) for f in t.factors)


@dataclass(frozen=True)
class InvariantProfile:
    """Complete mu / mu' / joint record of a type within an index bound.

    Joint entries are stored only for index pairs where both single
    invariants are positive; all other joint values are forced to
    max(mu_i, mu_j) and carry no extra information.  Entries that would
    need a missing E8 table are listed as absent, never guessed.
    """

    type_label: SemisimpleType
    index_bound: int
    mu: Dict[int, int]
    mu_prime: Dict[int, int]
    mu_joint: Dict[Tuple[int, int], int]
    absent_mu_prime: FrozenSet[int] = field(default=frozenset())
    absent_joint: FrozenSet[Tuple[int, int]] = field(default=frozenset())

    def key(self) -> Tuple:
        return (
            self.index_bound,
            tuple(sorted(self.mu.items())),
            tuple(sorted(self.mu_prime.items())),
            tuple(sorted(self.mu_joint.items())),
            tuple(sorted(self.absent_mu_prime)),
            tuple(sorted(self.absent_joint)),
        )


def invariant_profile(t: SemisimpleType) -> InvariantProfile:
    bound = max(30, 2 * t.rank)
    mu_map = {i: mu(t, i) for i in range(1, bound + 1)}
    prime_map: Dict[int, int] = {}
    absent_prime = set()
    for i in range(3, bound + 1):
        try:
            prime_map[i] = mu_prime(t, i)
        except Unresolvable:
            absent_prime.add(i)
    joint_map: Dict[Tuple[int, int], int] = {}
    absent_joint = set()
    positive = [i for i in range(1, bound + 1) if mu_map[i] > 0]
    for a_idx, i in enumerate(positive):
        for j in positive[a_idx + 1 :]:
            try:
                joint_map[(i, j)] = mu_joint(t, i, j)
            except Unresolvable:
                absent_joint.add((i, j))
    return InvariantProfile(
        t,
        bound,
        mu_map,
        prime_map,
        joint_map,
        frozenset(absent_prime),
        frozenset(absent_joint),
    )
