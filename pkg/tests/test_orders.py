import math
import random

import pytest

from weylorders.cyclotomic import factorize
from weylorders.errors import WeylOrdersError
from weylorders.orders import (
    check_field_determination,
    in_exception_list,
    order_factored,
    order_value,
    p_contribution_is_largest,
    recognize_order,
    same_order_all_extensions,
    split_prime_power,
)
from weylorders.rootsystem import (
    SimpleType,
    all_semisimple_types,
    degrees,
    parse_type,
    render,
)


def test_split_prime_power():
    assert split_prime_power(9) == (3, 2)
    assert split_prime_power(8) == (2, 3)
    for bad in (1, 6, 12, 100):
        with pytest.raises(WeylOrdersError):
            split_prime_power(bad)


def test_order_examples():
    assert order_value(parse_type("A1"), 9) == 720
    assert order_value(parse_type("B2"), 2) == 720
    assert order_value(parse_type("B2"), 3) == 51840
    assert order_value(parse_type("A2"), 2) == 168
    assert order_value(parse_type("A1"), 2) == 6


def test_g2_symbolic_form():
    fo = order_factored(parse_type("G2"), 5)
    assert fo.n_exp == 6 and fo.degrees == (2, 6)
    assert fo.value() == 5**6 * (5**2 - 1) * (5**6 - 1)


def test_factored_matches_value_randomly():
    rng = random.Random(11)
    prime_powers = [q for q in range(2, 50) if _is_pp(q)]
    types = list(all_semisimple_types(6))
    for _ in range(200):
        t = rng.choice(types)
        q = rng.choice(prime_powers)
        fo = order_factored(t, q)
        value = q ** fo.n_exp * math.prod(q**d - 1 for d in fo.degrees)
        assert order_value(t, q) == value


def _is_pp(q):
    try:
        split_prime_power(q)
        return True
    except WeylOrdersError:
        return False


def test_same_order_all_extensions():
    assert same_order_all_extensions(parse_type("A1xA3"), parse_type("A2xB2"))
    for n in (3, 4, 5):
        assert same_order_all_extensions(parse_type(f"B{n}"), parse_type(f"C{n}"))
    assert not same_order_all_extensions(parse_type("A2"), parse_type("B2"))


def test_bn_cn_orders():
    for n in (3, 4, 5):
        for q in (2, 3, 4, 5):
            assert order_value(parse_type(f"B{n}"), q) == order_value(parse_type(f"C{n}"), q)


def test_p_contribution_examples():
    largest, w = p_contribution_is_largest(parse_type("B2"), 3)
    assert not largest and (w.char_power, w.rival_power) == (81, 128)
    largest, w = p_contribution_is_largest(parse_type("A1"), 8)
    assert not largest and (w.char_power, w.rival_power) == (8, 9)
    largest, w = p_contribution_is_largest(parse_type("A2"), 2)
    assert largest and (w.char_power, w.rival_power) == (8, 7)


def test_exception_list_examples():
    assert in_exception_list(SimpleType("A", 1), 5)
    assert in_exception_list(SimpleType("B", 2), 3)
    assert not in_exception_list(SimpleType("A", 1), 11)
    assert in_exception_list(SimpleType("A", 1), 31)  # adjacent to 32
    assert not in_exception_list(SimpleType("A", 1), 32)
    assert not in_exception_list(SimpleType("B", 2), 9)
    assert not in_exception_list(SimpleType("G", 2), 3)


def test_field_determination_examples():
    r = check_field_determination(parse_type("A1xA3"), 5, parse_type("A2xB2"), 5)
    assert r.orders_equal and r.q_equal and r.degrees_equal and r.ok

    r = check_field_determination(parse_type("A1"), 4, parse_type("A1"), 8)
    assert not r.orders_equal and r.ok  # vacuous

    r = check_field_determination(parse_type("A1"), 2, parse_type("A1"), 2)
    assert r.orders_equal and r.ok

    with pytest.raises(WeylOrdersError):
        check_field_determination(parse_type("A1"), 2, parse_type("A1"), 3)


def test_recognize_examples():
    assert [(render(t), q) for t, q in recognize_order(720, 2)] == [
        ("A1", 9),
        ("B2", 2),
    ]
    assert [(render(t), q) for t, q in recognize_order(6, 2)] == [("A1", 2)]
    assert recognize_order(7, 4) == []


def test_recognize_random_round_trip():
    rng = random.Random(23)
    prime_powers = [2, 3, 4, 5, 7, 8, 9]
    types = list(all_semisimple_types(4))
    for _ in range(100):
        t = rng.choice(types)
        q = rng.choice(prime_powers)
        hits = recognize_order(order_value(t, q), t.rank)
        assert (t, q) in hits


def test_theorem_weyl_extension_property():
    # same order at q implies same order at every power of q
    t1, t2 = parse_type("A1xA3"), parse_type("A2xB2")
    for q in (2, 3, 4):
        for r in (2, 3, 4):
            assert order_value(t1, q**r) == order_value(t2, q**r)


def test_second_largest_for_b2_f3():
    # the characteristic contribution is the runner-up prime power
    m = order_value(parse_type("B2"), 3)
    powers = sorted((p**e for p, e in factorize(m).items()), reverse=True)
    assert powers[0] == 128 and powers[1] == 81


def test_cross_characteristic_collision_search():
    """Search rank <= 3, q <= 32 for cross-characteristic order collisions.

    Reports findings rather than assuming the conjecture that the rank-1/
    rank-2 720 coincidence is the only one; in this range it is.
    """
    prime_powers = [q for q in range(2, 33) if _is_pp(q)]
    by_order = {}
    for t in all_semisimple_types(3):
        for q in prime_powers:
            by_order.setdefault(order_value(t, q), []).append((t, q))
    collisions = []
    for m, hits in by_order.items():
        chars = {split_prime_power(q)[0] for _, q in hits}
        if len(chars) > 1:
            collisions.append((m, sorted((render(t), q) for t, q in hits)))
    assert collisions == [(720, [("A1", 9), ("B2", 2)])]
