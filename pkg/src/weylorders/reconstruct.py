"""Recovering a split semisimple type from its Weyl characteristic polynomials.

The algorithm peels off the factors of maximal Coxeter number: the degrees
are read off the maximal cyclotomic exponents, the top block's Coxeter
polynomial is isolated as the unique entry with maximal fixed space among
those realizing the top eigenvalue multiplicity, its eigenvalue exponents
give the block degrees, and the residual family is the exact quotient.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from .cyclotomic import CycloProduct
from .errors import AmbiguousBlock, E8WithoutTable, NotAWeylFamily
from .rootsystem import (
    SemisimpleType,
    SimpleType,
    all_semisimple_types,
    coxeter_number,
    degrees,
    render,
)
from .weylchar import CharPolyTable, charpolys, invariant_profile

__all__ = [
    "CharPolyFamily",
    "CoxeterBlock",
    "degrees_from_family",
    "peel_max_coxeter",
    "reconstruct",
    "verify_determination",
    "DeterminationReport",
]


@dataclass(frozen=True)
class CharPolyFamily:
    """The set of characteristic polynomials of a Weyl group, without counts."""

    polys: FrozenSet[CycloProduct]
    rank: int

    def __post_init__(self):
        ident = CycloProduct.from_mapping({1: self.rank} if self.rank else {})
        if ident not in self.polys:
            raise NotAWeylFamily("identity polynomial missing from the family")
        for p in self.polys:
            if p.degree != self.rank:
                raise NotAWeylFamily(
                    f"entry {p} has degree {p.degree}, family rank is {self.rank}"
                )

    @staticmethod
    def from_table(table: CharPolyTable) -> "CharPolyFamily":
        return CharPolyFamily(table.poly_set(), table.type_label.rank)


@dataclass(frozen=True)
class CoxeterBlock:
    """The product of all factors sharing the maximal Coxeter number."""

    h: int
    factors: Tuple[SimpleType, ...]
    f: CycloProduct  # characteristic polynomial of the block's Coxeter element
    residual_dim: int


def _max_exponents(fam: CharPolyFamily) -> Dict[int, int]:
    a: Dict[int, int] = {}
    for p in fam.polys:
        for d, t in p.exps:
            if t > a.get(d, 0):
                a[d] = t
    return a


def degrees_from_family(fam: CharPolyFamily) -> Tuple[int, ...]:
    """Recover the degree multiset from maximal eigenvalue multiplicities.

    The maximal phi_v-exponent counts the degrees divisible by v, so the
    multiset follows by downward induction from the largest index present.
    """
    if fam.rank == 0:
        return ()
    a = _max_exponents(fam)
    top = max(a)
    mults: Dict[int, int] = {}
    for v in range(top, 1, -1):
        m = a.get(v, 0) - sum(c for u, c in mults.items() if u % v == 0)
        if m < 0:
            raise NotAWeylFamily(f"negative multiplicity for degree {v}")
        if m:
            mults[v] = m
    out: List[int] = []
    for v, m in mults.items():
        out.extend([v] * m)
    if len(out) != fam.rank:
        raise NotAWeylFamily(
            f"recovered {len(out)} degrees for a rank-{fam.rank} family"
        )
    return tuple(sorted(out))


def _catalogue(h: int) -> List[SimpleType]:
    out = [SimpleType("A", h - 1)] if h >= 2 else []
    if h % 2 == 0 and h >= 4:
        out.append(SimpleType("B", h // 2))
    if h % 2 == 0 and h // 2 + 1 >= 4:
        out.append(SimpleType("D", h // 2 + 1))
    for exc in (SimpleType("G", 2), SimpleType("F", 4), SimpleType("E", 6),
                SimpleType("E", 7), SimpleType("E", 8)):
        if coxeter_number(exc) == h:
            out.append(exc)
    return out


def _block_covers(block_degrees: Tuple[int, ...], h: int) -> List[Tuple[SimpleType, ...]]:
    """All multisets of Coxeter-number-h simple types whose degrees give the block."""
    target: Dict[int, int] = {}
    for d in block_degrees:
        target[d] = target.get(d, 0) + 1
    count = target.get(h, 0)
    covers = []
    for combo in combinations_with_replacement(_catalogue(h), count):
        got: Dict[int, int] = {}
        for t in combo:
            for d in degrees(t):
                got[d] = got.get(d, 0) + 1
        if got == target:
            covers.append(tuple(sorted(combo)))
    return covers


def _predicted_family(
    factors: Tuple[SimpleType, ...],
    residual: FrozenSet[CycloProduct],
    e8_table: Optional[CharPolyTable],
) -> FrozenSet[CycloProduct]:
    block = charpolys(SemisimpleType.of(*factors), e8_table)
    return frozenset(c * g for c in block.entries for g in residual)


def peel_max_coxeter(
    fam: CharPolyFamily, e8_table: Optional[CharPolyTable] = None
) -> Tuple[CoxeterBlock, CharPolyFamily]:
    """Split off the factors of maximal Coxeter number h.

    When the block degrees admit more than one factor multiset (this
    happens: two distinct uniform-h products can share their degree
    multiset), the candidates are screened against the full family, which
    determines the block uniquely.
    """
    if fam.rank < 1:
        raise NotAWeylFamily("cannot peel a rank-0 family")
    degs = degrees_from_family(fam)
    h = max(degs)
    b = sum(1 for d in degs if d % h == 0)
    f_h = [p for p in fam.polys if p.exponent(h) == b]
    if not f_h:
        raise NotAWeylFamily(f"no entry realizes the top phi_{h} multiplicity")

    best = max(p.exponent(1) for p in f_h)
    starred = [p for p in f_h if p.exponent(1) == best]
    if len(starred) != 1:
        raise NotAWeylFamily("top Coxeter entry is not unique")
    p_star = starred[0]
    residual_dim = p_star.exponent(1)
    f = p_star.exact_div(CycloProduct.from_mapping({1: residual_dim} if residual_dim else {}))

    block_degrees: List[int] = []
    for d, t in f.exps:
        if d < 2 or h % d:
            raise NotAWeylFamily(f"Coxeter polynomial has unexpected factor phi_{d}")
        for e in range(1, h):
            if math.gcd(e, h) == h // d:
                block_degrees.extend([e + 1] * t)
    block_degrees.sort()

    try:
        residual = frozenset(p.exact_div(f) for p in f_h)
    except ValueError as exc:
        raise NotAWeylFamily(f"family is not divisible by its Coxeter entry: {exc}")
    residual_rank = fam.rank - len(block_degrees)
    if residual_rank != residual_dim:
        raise NotAWeylFamily("fixed-space dimension disagrees with the block size")

    covers = _block_covers(tuple(block_degrees), h)
    if not covers:
        raise NotAWeylFamily(f"no factor multiset matches block degrees {block_degrees}")
    if len(covers) > 1:
        covers = [
            c for c in covers
            if _predicted_family(c, residual, e8_table) == fam.polys
        ]
        if not covers:
            raise NotAWeylFamily("no candidate block is consistent with the family")
        if len(covers) > 1:
            raise AmbiguousBlock(
                f"blocks {covers} all reproduce the family"
            )

    block = CoxeterBlock(h, covers[0], f, residual_dim)
    return block, CharPolyFamily(residual, residual_rank)


def reconstruct(
    fam: CharPolyFamily, e8_table: Optional[CharPolyTable] = None
) -> SemisimpleType:
    """Repeated peeling until the family is exhausted; returns the canonical type.

    The result certifies itself: its own polynomial set must reproduce the
    input exactly, so inconsistent input families fail instead of mapping to
    a wrong type.  (The certificate is skipped only for a reconstructed E8
    factor with no table available, the experimental path.)
    """
    original = fam
    factors: List[SimpleType] = []
    while fam.rank > 0:
        block, fam = peel_max_coxeter(fam, e8_table)
        factors.extend(block.factors)
    result = SemisimpleType.of(*factors)
    try:
        predicted = charpolys(result, e8_table).poly_set()
    except E8WithoutTable:
        return result
    if predicted != original.polys:
        raise NotAWeylFamily(
            f"family is not the polynomial set of {render(result)} "
            "or of any other catalogued type"
        )
    return result


@dataclass
class DeterminationReport:
    rank_bound: int
    alphabet: str
    types_checked: int = 0
    chset_collisions: List[Tuple[str, str]] = field(default_factory=list)
    roundtrip_failures: List[str] = field(default_factory=list)
    profile_collisions: List[Tuple[str, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (
            self.chset_collisions or self.roundtrip_failures or self.profile_collisions
        )

    def to_json(self) -> Dict:
        return {
            "rank_bound": self.rank_bound,
            "alphabet": self.alphabet,
            "types_checked": self.types_checked,
            "chset_collisions": self.chset_collisions,
            "roundtrip_failures": self.roundtrip_failures,
            "profile_collisions": self.profile_collisions,
            "ok": self.ok,
        }


def verify_determination(
    rank_bound: int,
    alphabet: Iterable[str] = "ABDGFE",
    e8_table: Optional[CharPolyTable] = None,
    check_profiles: bool = True,
) -> DeterminationReport:
    """Exhaustively verify that distinct types have distinct polynomial sets,
    that reconstruction round-trips, and that invariant profiles separate types.
    """
    alphabet = "".join(sorted(set(alphabet)))
    report = DeterminationReport(rank_bound, alphabet)
    seen_sets: Dict[FrozenSet[CycloProduct], SemisimpleType] = {}
    seen_profiles: Dict[Tuple, SemisimpleType] = {}
    for t in all_semisimple_types(rank_bound, alphabet, include_e8=e8_table is not None):
        report.types_checked += 1
        table = charpolys(t, e8_table)
        key = table.poly_set()
        other = seen_sets.get(key)
        if other is not None:
            report.chset_collisions.append((render(other), render(t)))
        else:
            seen_sets[key] = t

        got = reconstruct(CharPolyFamily(key, t.rank), e8_table)
        if got != t:
            report.roundtrip_failures.append(f"{render(t)} -> {render(got)}")

        if check_profiles:
            pkey = invariant_profile(t).key()
            other = seen_profiles.get(pkey)
            if other is not None:
                report.profile_collisions.append((render(other), render(t)))
            else:
                seen_profiles[pkey] = t
    return report
