import random

import pytest

from weylorders.coincidence import (
    CoincidencePair,
    compose,
    decompose,
    enumerate_two_factor_pairs,
    evaluate_word,
    expected_two_factor_pairs,
    generator,
    generators,
    identity_pair,
    inverse,
    is_coincidence,
    reduce,
    verify_group_axioms,
)
from weylorders.errors import NoPeelingElement, NotCoincident, TypeParseError
from weylorders.rootsystem import degrees, parse_type, render


def pair(left: str, right: str) -> CoincidencePair:
    return reduce(parse_type(left), parse_type(right))


def test_reduce_examples():
    p = pair("A1xA3", "A2xB2")
    assert (render(p.left), render(p.right)) == ("A1xA3", "A2xB2")
    assert pair("A2", "A2") == identity_pair()
    padded = reduce(parse_type("A2xB2xA5"), parse_type("A3xA1xA5"))
    assert (render(padded.left), render(padded.right)) == ("A2xB2", "A1xA3")


def test_reduce_rejects_unequal_degrees():
    with pytest.raises(NotCoincident):
        reduce(parse_type("A2"), parse_type("B2"))
    # input with sides of different rank is rejected outright
    with pytest.raises(NotCoincident):
        reduce(parse_type("A2xB2xA5"), parse_type("A2xA3xA1xA5"))


def test_compose_and_inverse():
    p = compose(generator("G2"), inverse(generator("D4")))
    assert (render(p.left), render(p.right)) == ("B3xB3", "D4xG2")
    q = pair("A1xA3", "A2xB2")
    assert compose(q, inverse(q)) == identity_pair()
    assert compose(generator("B2"), identity_pair()) == generator("B2")


def test_is_coincidence():
    assert is_coincidence(parse_type("A1xA3"), parse_type("A2xB2"), 3)
    assert is_coincidence(parse_type("A2"), parse_type("A2"), 5)
    assert not is_coincidence(parse_type("A2"), parse_type("B2"), 2)


def test_generators_validate():
    gens = generators(15)
    for gid, g in gens.items():
        assert degrees(g.left) == degrees(g.right), gid
        assert not set(g.left.factors) & set(g.right.factors), gid
    assert (render(gens["B2"].left), render(gens["B2"].right)) == ("A2xB2", "A1xA3")
    assert gens["E8"].left.rank == 49


def test_generator_numeric_coincidence():
    for gid in ("B2", "B5", "D4", "D7", "G2", "F4", "E6", "E7", "E8"):
        g = generator(gid)
        for q in (2, 3):
            assert is_coincidence(g.left, g.right, q), gid


def test_generator_bad_ids():
    for bad in ("B1", "D3", "H4", "E9", "XX"):
        with pytest.raises(TypeParseError):
            generator(bad)


def test_enumerate_two_factor_bounds():
    assert enumerate_two_factor_pairs(3) == []
    found4 = {str(p) for p in enumerate_two_factor_pairs(4)}
    assert "(A1xA3, A2xB2)" in found4
    found7 = {str(p) for p in enumerate_two_factor_pairs(7)}
    assert "(A1xB3, B2xG2)" in found7 and "(A2xB3, A3xG2)" in found7


def test_enumerate_matches_families_rank12():
    got = {str(p) for p in enumerate_two_factor_pairs(12)}
    want = {str(p) for p in expected_two_factor_pairs(12)}
    assert got == want


def test_decompose_spec_examples():
    w = decompose(pair("B3xB3", "D4xG2"))
    assert sorted(w) == [("D4", -1), ("G2", 1)]
    w = decompose(pair("A1xD4", "B2xB3"))
    assert sorted(w) == [("B2", -1), ("D4", 1)]
    assert decompose(identity_pair()) == ()


def test_decompose_round_trip_on_enumerated_pairs():
    for p in enumerate_two_factor_pairs(14):
        assert evaluate_word(decompose(p)) == p


def test_decompose_random_words():
    rng = random.Random(99)
    ids = [f"B{n}" for n in range(2, 9)] + [f"D{n}" for n in range(4, 9)] + [
        "G2", "F4", "E6", "E7", "E8"]
    for _ in range(30):
        word = tuple((rng.choice(ids), rng.choice((1, -1)))
                     for _ in range(rng.randint(1, 4)))
        p = evaluate_word(word)
        assert evaluate_word(decompose(p)) == p


def test_group_axioms():
    report = verify_group_axioms(50, 20, seed=3)
    assert report.ok
    assert report.checks == 250


def test_composition_keeps_invariants():
    rng = random.Random(17)
    ids = ["B2", "B3", "D4", "D5", "G2", "F4"]
    for _ in range(50):
        w1 = tuple((rng.choice(ids), rng.choice((1, -1))) for _ in range(2))
        w2 = tuple((rng.choice(ids), rng.choice((1, -1))) for _ in range(2))
        p = compose(evaluate_word(w1), evaluate_word(w2))
        assert degrees(p.left) == degrees(p.right)
        assert not set(p.left.factors) & set(p.right.factors)
