import random

import pytest

from weylorders.cyclotomic import CycloProduct
from weylorders.errors import E8WithoutTable, Unresolvable
from weylorders.rootsystem import SemisimpleType, SimpleType, parse_type, weyl_order
from weylorders.weylchar import (
    CharPolyTable,
    ch_star,
    charpolys,
    charpolys_classical,
    charpolys_enumerated,
    charpolys_exceptional,
    invariant_profile,
    mu,
    mu_joint,
    mu_prime,
    seed_table,
)


def cp(**kw):
    return CycloProduct.from_mapping({int(k[1:]): v for k, v in kw.items()})


def test_a2_table():
    table = charpolys_classical(SimpleType("A", 2))
    assert table.entries == {cp(d1=2): 1, cp(d1=1, d2=1): 3, cp(d3=1): 2}
    assert table.group_order == 6


def test_a1_table():
    table = charpolys_classical(SimpleType("A", 1))
    assert table.entries == {cp(d1=1): 1, cp(d2=1): 1}


def test_b2_table():
    table = charpolys_classical(SimpleType("B", 2))
    assert set(table.entries) == {cp(d1=2), cp(d1=1, d2=1), cp(d2=2), cp(d4=1)}
    assert sum(table.entries.values()) == 8


def test_classical_rejects_exceptional():
    with pytest.raises(ValueError):
        charpolys_classical(SimpleType("G", 2))


def test_g2_enumeration():
    table = charpolys_exceptional(SimpleType("G", 2))
    assert table.group_order == 12
    polys = set(table.entries)
    assert cp(d3=1) in polys and cp(d6=1) in polys
    assert cp(d4=1) not in polys


def test_f4_enumeration():
    assert charpolys_exceptional(SimpleType("F", 4)).group_order == 1152


def test_exceptional_rejects_classical_and_e8():
    with pytest.raises(ValueError):
        charpolys_exceptional(SimpleType("B", 3))
    with pytest.raises(E8WithoutTable):
        charpolys_exceptional(SimpleType("E", 8))


@pytest.mark.parametrize(
    "t",
    [SimpleType("A", n) for n in range(1, 5)]
    + [SimpleType("B", 2), SimpleType("B", 3), SimpleType("B", 4),
       SimpleType("B", 5), SimpleType("D", 4), SimpleType("D", 5)],
    ids=str,
)
def test_classical_matches_enumeration(t):
    combinatorial = charpolys_classical(t)
    enumerated = charpolys_enumerated(t)
    assert combinatorial.entries == enumerated.entries


def test_product_table():
    table = charpolys(parse_type("A1xA1"))
    assert table.entries == {cp(d1=2): 1, cp(d1=1, d2=1): 2, cp(d2=2): 1}
    assert charpolys(parse_type("G2xA1")).group_order == 24


def test_product_distinguishes_spec_pair():
    a1a3 = charpolys(parse_type("A1xA3")).poly_set()
    a2b2 = charpolys(parse_type("A2xB2")).poly_set()
    assert cp(d3=1, d4=1) in a2b2
    assert cp(d3=1, d4=1) not in a1a3


def test_charpolys_e8_requires_table():
    with pytest.raises(E8WithoutTable):
        charpolys(parse_type("E8"))


def test_ch_star_examples():
    assert ch_star(parse_type("G2")) == frozenset({1, 2, 3, 6})
    assert ch_star(parse_type("F4")) == frozenset({1, 2, 3, 4, 6, 8, 12})
    assert ch_star(parse_type("E8")) == frozenset(
        set(range(1, 11)) | {12, 14, 15, 18, 20, 24, 30}
    )


@pytest.mark.parametrize(
    "t",
    ["A1", "A3", "B2", "B4", "D4", "G2", "F4", "A2xB2", "A1xG2"],
)
def test_springer_index_set(t):
    table = charpolys(parse_type(t))
    assert table.indices() == ch_star(parse_type(t))


def test_springer_index_set_all_rank5_types():
    from weylorders.rootsystem import all_semisimple_types

    for t in all_semisimple_types(5):
        assert charpolys(t).indices() == ch_star(t)


def test_mu_examples():
    assert mu(parse_type("E8"), 30) == 1
    assert mu(parse_type("B2"), 4) == 1
    assert mu(parse_type("E7"), 6) == 3


def test_mu_equals_table_max_exponent():
    for name in ("A3", "B3", "D4", "G2", "F4"):
        t = parse_type(name)
        table = charpolys(t)
        for i in range(1, 31):
            assert mu(t, i) == max(
                (p.exponent(i) for p in table.entries), default=0
            )


def test_mu_prime_examples():
    assert mu_prime(parse_type("D4"), 6) == mu_prime(parse_type("B3"), 6) + 1
    assert mu_prime(parse_type("A2"), 3) == 0
    assert mu_prime(parse_type("G2"), 5) == 0
    with pytest.raises(ValueError):
        mu_prime(parse_type("A2"), 2)


def test_mu_joint_examples():
    assert mu_joint(parse_type("B3"), 4, 6) == 1
    assert mu_joint(parse_type("E8"), 28, 30) == 1
    assert mu_joint(parse_type("A1"), 1, 2) == 1


def test_e8_unresolvable_without_table():
    with pytest.raises(Unresolvable):
        mu_prime(parse_type("E8"), 30)
    with pytest.raises(Unresolvable):
        mu_joint(parse_type("E8"), 2, 30)
    # forced reductions need no table
    assert mu_joint(parse_type("E8"), 28, 30) == 1
    assert mu_prime(parse_type("E8"), 11) == 0


def test_additivity_over_products():
    rng = random.Random(5)
    names = ["A1", "A2", "A3", "B2", "B3", "D4", "G2"]
    for _ in range(10):
        n1, n2 = rng.choice(names), rng.choice(names)
        t1, t2 = parse_type(n1), parse_type(n2)
        prod = parse_type(f"{n1}x{n2}")
        for i in rng.sample(range(1, 13), 4):
            assert mu(prod, i) == mu(t1, i) + mu(t2, i)
            if i > 2:
                assert mu_prime(prod, i) == mu_prime(t1, i) + mu_prime(t2, i)
            j = i + rng.randint(1, 5)
            assert mu_joint(prod, i, j) == mu_joint(t1, i, j) + mu_joint(t2, i, j)


def test_identity_entry_count_one():
    for name in ("A1", "A4", "B3", "D4", "G2", "F4", "A2xB3"):
        t = parse_type(name)
        table = charpolys(t)
        ident = CycloProduct.from_mapping({1: t.rank})
        assert table.entries[ident] == 1
        assert sum(table.entries.values()) == weyl_order(t)


def test_invariant_profile_examples():
    prof = invariant_profile(parse_type("A1"))
    assert prof.mu[1] == 1 and prof.mu[2] == 1
    assert all(v == 0 for i, v in prof.mu.items() if i > 2)

    prof_b2 = invariant_profile(parse_type("B2"))
    assert prof_b2.mu[4] == 1 and prof_b2.mu[2] == 2

    p1 = invariant_profile(parse_type("A1xA3"))
    p2 = invariant_profile(parse_type("A2xB2"))
    assert p1.mu_joint[(3, 4)] != p2.mu_joint[(3, 4)]
    assert p1.key() != p2.key()


def test_invariant_profile_bounds():
    for name in ("A2", "B3", "G2", "A2xB2"):
        t = parse_type(name)
        prof = invariant_profile(t)
        from weylorders.cyclotomic import euler_phi

        for i, v in prof.mu.items():
            if euler_phi(i) > t.rank:
                assert v == 0
        for (i, j), v in prof.mu_joint.items():
            assert v <= prof.mu[i] + prof.mu[j]
            assert v >= max(prof.mu[i], prof.mu[j])


def test_e8_profile_marks_absent():
    prof = invariant_profile(parse_type("E8"))
    assert 30 in prof.absent_mu_prime  # needs the table
    assert (2, 30) in prof.absent_joint
    assert (2, 30) not in prof.mu_joint
    assert (28, 30) not in prof.absent_joint  # forced reduction, no table needed


def test_seed_table_validates():
    good = charpolys_classical(SimpleType("B", 2))
    seed_table(good)  # idempotent
    bad = CharPolyTable(good.type_label, good.group_order + 1, good.entries)
    with pytest.raises(ValueError):
        seed_table(bad)


def test_bn_cn_same_table():
    assert charpolys(parse_type("C3")).entries == charpolys(parse_type("B3")).entries


def test_concurrent_table_reads():
    import threading

    orders = []

    def worker():
        orders.append(charpolys(parse_type("A2xB2")).group_order)

    threads = [threading.Thread(target=worker) for _ in range(6)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert orders == [48] * 6


def test_e8_table_flow_with_seeded_table(monkeypatch):
    """A structurally valid table unlocks the E8-gated paths.

    The cache certificates are integrity checks, not proofs of mathematical
    correctness, so this test isolates the registry and uses a synthetic
    stand-in table.
    """
    import weylorders.weylchar as wc

    monkeypatch.setattr(wc, "_table_memo", dict(wc._table_memo))
    monkeypatch.setattr(wc, "_mu_prime_cache", {})
    monkeypatch.setattr(wc, "_mu_joint_cache", {})

    e8 = SimpleType("E", 8)
    order = weyl_order(e8)
    fake = CharPolyTable(
        SemisimpleType.of(e8),
        order,
        {
            CycloProduct.from_mapping({1: 8}): 1,
            CycloProduct.from_mapping({1: 7, 2: 1}): order - 2,
            CycloProduct.from_mapping({30: 1}): 1,
        },
    )
    seed_table(fake)
    table = charpolys(parse_type("E8xA1"))
    assert table.group_order == 2 * order
    assert mu_prime(parse_type("E8"), 30) == 0  # from the stand-in table
