"""The abelian group of order-coincidence pairs.

A pair of disjoint semisimple types with equal degree multisets has equal
rational-point counts over every finite field.  Componentwise product
followed by cancellation of common factors is an abelian group law with
inversion by swapping sides.  The group is generated by two infinite
families indexed by the B- and D-series together with five exceptional
pairs; decomposition into generators proceeds by repeatedly cancelling the
factors of highest fundamental degree.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Dict, Iterable, List, Tuple

from .errors import NoPeelingElement, NotCoincident, TypeParseError
from .orders import order_value, same_order_all_extensions
from .rootsystem import (
    SemisimpleType,
    SimpleType,
    coxeter_number,
    degrees,
    render,
)

__all__ = [
    "CoincidencePair",
    "GeneratorWord",
    "reduce",
    "compose",
    "inverse",
    "identity_pair",
    "is_coincidence",
    "enumerate_two_factor_pairs",
    "expected_two_factor_pairs",
    "generator",
    "generators",
    "evaluate_word",
    "decompose",
    "verify_group_axioms",
    "GroupAxiomReport",
]

GeneratorWord = Tuple[Tuple[str, int], ...]  # (generator id, sign)


@dataclass(frozen=True)
class CoincidencePair:
    """A reduced ordered pair of disjoint types with equal degree multisets."""

    left: SemisimpleType
    right: SemisimpleType

    def is_identity(self) -> bool:
        return self.left.is_empty() and self.right.is_empty()

    def swapped(self) -> "CoincidencePair":
        return CoincidencePair(self.right, self.left)

    def __str__(self) -> str:
        return f"({render(self.left)}, {render(self.right)})"


def identity_pair() -> CoincidencePair:
    empty = SemisimpleType(())
    return CoincidencePair(empty, empty)


def reduce(h1: SemisimpleType, h2: SemisimpleType) -> CoincidencePair:
    """Cancel common simple factors with multiplicity; requires equal degrees."""
    if degrees(h1) != degrees(h2):
        raise NotCoincident(
            f"degree multisets differ: {render(h1)} vs {render(h2)}"
        )
    c1, c2 = h1.counter(), h2.counter()
    common = c1 & c2
    left = SemisimpleType(tuple(sorted((c1 - common).elements())))
    right = SemisimpleType(tuple(sorted((c2 - common).elements())))
    return CoincidencePair(left, right)


def compose(p1: CoincidencePair, p2: CoincidencePair) -> CoincidencePair:
    return reduce(p1.left * p2.left, p1.right * p2.right)


def inverse(p: CoincidencePair) -> CoincidencePair:
    return p.swapped()


def is_coincidence(h1: SemisimpleType, h2: SemisimpleType, q: int) -> bool:
    """Order equality at q; must agree with the symbolic degree test."""
    numeric = order_value(h1, q) == order_value(h2, q)
    symbolic = same_order_all_extensions(h1, h2)
    if numeric != symbolic:
        raise AssertionError(
            "numeric and symbolic order tests disagree; this is a bug"
        )
    return numeric


# --- exhaustive two-factor enumeration ----------------------------------------


def _simple_types_up_to(rank_bound: int) -> List[SimpleType]:
    out = [SimpleType("A", n) for n in range(1, rank_bound + 1)]
    out += [SimpleType("B", n) for n in range(2, rank_bound + 1)]
    out += [SimpleType("D", n) for n in range(4, rank_bound + 1)]
    for exc in (SimpleType("G", 2), SimpleType("F", 4), SimpleType("E", 6),
                SimpleType("E", 7), SimpleType("E", 8)):
        if exc.rank <= rank_bound:
            out.append(exc)
    return out

def _oriented(p: CoincidencePair) -> CoincidencePair:
    """Deterministic orientation for set comparisons."""
    if (render(p.left), render(p.right)) <= (render(p.right), render(p.left)):
        return p
    return p.swapped()


def enumerate_two_factor_pairs(rank_bound: int) -> List[CoincidencePair]:
    """All coincidence pairs with exactly two simple factors on each side,
    no common factor, and per-side total rank <= rank_bound."""
    if rank_bound < 2:
        raise ValueError("rank bound must be >= 2")
    simples = _simple_types_up_to(rank_bound - 1)
    buckets: Dict[Tuple[int, ...], List[Tuple[SimpleType, SimpleType]]] = {}
    for a, b in combinations_with_replacement(simples, 2):
        if a.rank + b.rank > rank_bound:
            continue
        key = tuple(sorted(degrees(a) + degrees(b)))
        buckets.setdefault(key, []).append((a, b))
    found = []
    for sides in buckets.values():
        for i in range(len(sides)):
            for j in range(i + 1, len(sides)):
                s1, s2 = set(sides[i]), set(sides[j])
                if s1 & s2:
                    continue
                pair = reduce(
                    SemisimpleType.of(*sides[i]), SemisimpleType.of(*sides[j])
                )
                found.append(_oriented(pair))
    found.sort(key=lambda p: (p.left.rank, render(p.left), render(p.right)))
    return found


def expected_two_factor_pairs(rank_bound: int) -> List[CoincidencePair]:
    """The eight exhaustive families of two-factor pairs, instantiated to the
    given per-side rank bound."""
    pairs: List[CoincidencePair] = []

    def emit(l1, l2, r1, r2):
        left = SemisimpleType.of(l1, l2)
        right = SemisimpleType.of(r1, r2)
        if left.rank <= rank_bound:
            pairs.append(_oriented(reduce(left, right)))

    def b(n: int) -> SimpleType:  # convention: the rank-1 B is A1
        return SimpleType("A", 1) if n == 1 else SimpleType("B", n)

    n = 2
    while 3 * n - 2 <= rank_bound:  # (A_{2n-2} B_n, A_{2n-1} B_{n-1})
        emit(SimpleType("A", 2 * n - 2), b(n), SimpleType("A", 2 * n - 1), b(n - 1))
        n += 1
    n = 4
    while 2 * n - 2 <= rank_bound:  # (A_{n-2} D_n, A_{n-1} B_{n-1})
        emit(SimpleType("A", n - 2), SimpleType("D", n), SimpleType("A", n - 1), b(n - 1))
        n += 1
    n = 2
    while 3 * n - 1 <= rank_bound:  # (B_{n-1} D_{2n}, B_{2n-1} B_n)
        emit(b(n - 1), SimpleType("D", 2 * n), SimpleType("B", 2 * n - 1), b(n))
        n += 1
    for l1, l2, r1, r2 in (
        ("A1", "A5", "A4", "G2"),
        ("A1", "B3", "B2", "G2"),
        ("A1", "D6", "B5", "G2"),
        ("A2", "B3", "A3", "G2"),
        ("B3", "B3", "D4", "G2"),
    ):
        emit(_parse_simple(l1), _parse_simple(l2), _parse_simple(r1), _parse_simple(r2))
    uniq = {str(p): p for p in pairs}
    return sorted(uniq.values(), key=lambda p: (p.left.rank, render(p.left), render(p.right)))


def _parse_simple(token: str) -> SimpleType:
    m = re.fullmatch(r"([A-G])([0-9]+)", token)
    if not m:
        raise TypeParseError(f"malformed simple type {token!r}")
    return SimpleType(m.group(1), int(m.group(2)))


# --- the seven generators -----------------------------------------------------

_EXCEPTIONAL_GENERATORS = {
    "G2": ("A2xB3", "A3xG2"),
    "F4": ("A1xB4xB6", "B2xB5xF4"),
    "E6": ("A4xG2xA8xB6", "A3xA6xB5xE6"),
    "E7": ("A1xB7xB9", "B2xB8xE7"),
    "E8": ("A1xB4xB7xB10xB12xB15", "B3xB5xB8xB11xB14xE8"),
}


def generator(gid: str) -> CoincidencePair:
    """One generator by id: B<n> (n>=2), D<n> (n>=4), G2, F4, E6, E7 or E8."""
    from .rootsystem import parse_type

    if gid in _EXCEPTIONAL_GENERATORS:
        l, r = _EXCEPTIONAL_GENERATORS[gid]
        return reduce(parse_type(l), parse_type(r))
    m = re.fullmatch(r"([BD])([0-9]+)", gid)
    if m is None:
        raise TypeParseError(f"unknown generator id {gid!r}")
    kind, n = m.group(1), int(m.group(2))
    b1 = lambda k: SimpleType("A", 1) if k == 1 else SimpleType("B", k)
    if kind == "B":
        if n < 2:
            raise TypeParseError("B-family generators start at rank 2")
        left = SemisimpleType.of(SimpleType("A", 2 * n - 2), SimpleType("B", n))
        right = SemisimpleType.of(SimpleType("A", 2 * n - 1), b1(n - 1))
    else:
        if n < 4:
            raise TypeParseError("D-family generators start at rank 4")
        left = SemisimpleType.of(SimpleType("A", n - 2), SimpleType("D", n))
        right = SemisimpleType.of(SimpleType("A", n - 1), SimpleType("B", n - 1))
    return reduce(left, right)


def generators(family_rank_bound: int = 15) -> Dict[str, CoincidencePair]:
    """The generator map, with the two infinite families instantiated up to
    the given rank."""
    out = {f"B{n}": generator(f"B{n}") for n in range(2, family_rank_bound + 1)}
    out.update({f"D{n}": generator(f"D{n}") for n in range(4, family_rank_bound + 1)})
    for gid in _EXCEPTIONAL_GENERATORS:
        out[gid] = generator(gid)
    return out


def evaluate_word(word: GeneratorWord) -> CoincidencePair:
    acc = identity_pair()
    for gid, sign in word:
        g = generator(gid)
        acc = compose(acc, g if sign > 0 else inverse(g))
    return acc


# --- decomposition into generators ---------------------------------------------

_peel_cache: Dict[Tuple[SimpleType, SimpleType], Tuple[CoincidencePair, GeneratorWord]] = {}


def _atoms_for_degree(h: int) -> List[Tuple[str, CoincidencePair]]:
    atoms = []
    if h % 2 == 0 and h >= 4:
        atoms.append((f"B{h // 2}", generator(f"B{h // 2}")))
    if h % 2 == 0 and h // 2 + 1 >= 4:
        atoms.append((f"D{h // 2 + 1}", generator(f"D{h // 2 + 1}")))
    for gid in _EXCEPTIONAL_GENERATORS:
        g = generator(gid)
        if max(coxeter_number(f) for f in g.left.factors) == h:
            atoms.append((gid, g))
    return atoms


def _top_degree_factors(t: SemisimpleType, h: int) -> List[SimpleType]:
    return [f for f in t.factors if coxeter_number(f) == h]


def _peeling_element(
    u: SimpleType, v: SimpleType
) -> Tuple[CoincidencePair, GeneratorWord]:
    """An element with u alone on the left and v alone on the right among the
    factors of the shared top degree, found by searching short generator words."""
    got = _peel_cache.get((u, v))
    if got is not None:
        return got
    h = coxeter_number(u)
    if coxeter_number(v) != h:
        raise NoPeelingElement(f"{u} and {v} have different top degrees")
    atoms = _atoms_for_degree(h)
    for length in (1, 2, 3):
        for combo in combinations_with_replacement(range(len(atoms)), length):
            for signs in _sign_patterns(length):
                word = tuple(
                    (atoms[k][0], s) for k, s in zip(combo, signs)
                )
                cand = evaluate_word(word)
                for oriented, oword in ((cand, word), (inverse(cand), _invert(word))):
                    if _top_degree_factors(oriented.left, h) == [u] and \
                            _top_degree_factors(oriented.right, h) == [v]:
                        _peel_cache[(u, v)] = (oriented, oword)
                        return oriented, oword
    raise NoPeelingElement(
        f"no generator word of length <= 3 isolates {{{u}, {v}}} at degree {h}"
    )


def _sign_patterns(length: int) -> Iterable[Tuple[int, ...]]:
    if length == 0:
        yield ()
        return
    for rest in _sign_patterns(length - 1):
        yield (1,) + rest
        yield (-1,) + rest


def _invert(word: GeneratorWord) -> GeneratorWord:
    return tuple((gid, -s) for gid, s in word)


def decompose(p: CoincidencePair) -> GeneratorWord:
    """Express a coincidence pair as a word in the seven generator families.

    Repeatedly cancels one factor of the current highest fundamental degree
    from each side using a peeling element; evaluation of the returned word
    reproduces the input exactly.
    """
    word: List[Tuple[str, int]] = []
    acc = p
    while not acc.is_identity():
        h = max(coxeter_number(f) for f in acc.left.factors + acc.right.factors)
        lefts = _top_degree_factors(acc.left, h)
        rights = _top_degree_factors(acc.right, h)
        if not lefts or not rights:
            raise NoPeelingElement(
                f"top degree {h} appears on one side only of {acc}; "
                "not a coincidence pair"
            )
        u, v = lefts[0], rights[0]
        w, wword = _peeling_element(u, v)
        acc = compose(acc, inverse(w))
        word.extend(wword)
    if evaluate_word(tuple(word)) != p:
        raise AssertionError("decomposition failed to reproduce its input")
    return tuple(word)


# --- group-law verification -----------------------------------------------------


@dataclass
class GroupAxiomReport:
    samples: int
    rank_bound: int
    checks: int = 0
    violations: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> Dict:
        return {
            "samples": self.samples,
            "rank_bound": self.rank_bound,
            "checks": self.checks,
            "violations": self.violations,
            "ok": self.ok,
        }


def _random_pair(rng: random.Random, rank_bound: int) -> CoincidencePair:
    ids = [f"B{n}" for n in range(2, max(3, rank_bound // 3))]
    ids += [f"D{n}" for n in range(4, max(5, rank_bound // 2))]
    ids += list(_EXCEPTIONAL_GENERATORS)
    word = tuple(
        (rng.choice(ids), rng.choice((1, -1))) for _ in range(rng.randint(0, 4))
    )
    return evaluate_word(word)


def verify_group_axioms(samples: int, rank_bound: int, seed: int = 0) -> GroupAxiomReport:
    rng = random.Random(seed)
    report = GroupAxiomReport(samples, rank_bound)
    e = identity_pair()
    for _ in range(samples):
        p = _random_pair(rng, rank_bound)
        q = _random_pair(rng, rank_bound)
        r = _random_pair(rng, rank_bound)
        cases = (
            ("identity", compose(p, e) == p),
            ("inverse", compose(p, inverse(p)) == e),
            ("double inverse", inverse(inverse(p)) == p),
            ("commutativity", compose(p, q) == compose(q, p)),
            ("associativity", compose(compose(p, q), r) == compose(p, compose(q, r))),
        )
        for name, holds in cases:
            report.checks += 1
            if not holds:
                report.violations.append(f"{name} fails at {p}, {q}, {r}")
    return report
