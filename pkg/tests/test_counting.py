import random
from fractions import Fraction

import pytest

from slicekit import (
    brute_force_cube_count,
    cube_count_vector,
    exact_card,
    expansion_value,
    lyapunov_estimate,
    nadic_expansion,
)
from slicekit.counting import advance_state, initial_state
from slicekit.errors import (
    BoundaryPoint,
    CoveringRequired,
    HypothesisViolated,
    OutOfRange,
)


def test_expansion_periodic(cantor_diff):
    exp = nadic_expansion(cantor_diff, Fraction(1, 2), depth=5)
    assert exp.integer_part == 0
    assert not exp.boundary
    assert exp.prefix == (1, 1, 1, 1, 1)
    assert exp.preperiod == () and exp.period == (1,)


def test_expansion_boundary(cantor_diff):
    exp = nadic_expansion(cantor_diff, Fraction(1, 3), depth=4)
    assert exp.boundary
    assert exp.prefix == (1, 0, 0, 0)


def test_expansion_negative(cantor_diff):
    exp = nadic_expansion(cantor_diff, Fraction(-5, 6), depth=4)
    assert exp.integer_part == -1
    assert exp.prefix == (0, 1, 1, 1)


def test_expansion_out_of_range(cantor_diff):
    with pytest.raises(OutOfRange):
        nadic_expansion(cantor_diff, Fraction(3, 2))


def test_expansion_value_round_trip(cantor_diff):
    rng = random.Random(2)
    for _ in range(40):
        q = rng.choice([5, 7, 11, 13])
        p = rng.randrange(-q, q)
        x = Fraction(p, q)
        exp = nadic_expansion(cantor_diff, x)
        assert (
            expansion_value(3, exp.integer_part, exp.preperiod, exp.period) == x
        )


def test_cube_count_vectors(cantor_diff):
    assert cube_count_vector(cantor_diff, Fraction(1, 2), 2) == (0, 1)
    assert cube_count_vector(cantor_diff, Fraction(1, 6), 3) == (0, 2)
    assert cube_count_vector(cantor_diff, Fraction(1, 4), 4) == (0, 4)


def test_cube_count_vector_boundary(cantor_diff):
    with pytest.raises(BoundaryPoint):
        cube_count_vector(cantor_diff, Fraction(1, 3), 2)


def test_cube_count_vector_needs_covering(no_cover):
    with pytest.raises(CoveringRequired):
        cube_count_vector(no_cover, Fraction(3, 5), 2)


def test_state_advance_matches_manual(cantor_diff):
    state = initial_state(cantor_diff, Fraction(1, 3))
    state = advance_state(cantor_diff, state)
    assert state.offsets == (Fraction(-1), Fraction(1), Fraction(1))
    state = advance_state(cantor_diff, state)
    assert state.offsets == (Fraction(-1), Fraction(1), Fraction(1))


def test_exact_card_examples(cantor_diff):
    assert exact_card(cantor_diff, Fraction(1, 3)) == exact_card(
        cantor_diff, Fraction(1, 3)
    )
    for x, verdict, count in [
        (Fraction(1, 3), "Finite", 3),
        (Fraction(1, 6), "Finite", 2),
        (Fraction(1, 4), "Infinite", None),
        (Fraction(1, 2), "Finite", 1),
        (Fraction(-1), "Finite", 1),
        (Fraction(1), "Finite", 1),
        (Fraction(0), "Infinite", None),
    ]:
        res = exact_card(cantor_diff, x)
        assert (res.verdict, res.count) == (verdict, count), x


def test_exact_card_certificates(cantor_diff):
    res = exact_card(cantor_diff, Fraction(1, 6))
    assert res.verdict == "Finite"
    assert res.certificate is not None and res.certificate.period >= 1
    res = exact_card(cantor_diff, Fraction(1, 4))
    assert res.verdict == "Infinite"
    cert = res.certificate
    assert cert.cardinality_after > cert.cardinality_before


def test_exact_card_budget(cantor_diff):
    res = exact_card(cantor_diff, Fraction(1, 4), budget=2)
    assert res.verdict in ("ExceedsBudget", "Infinite")
    res = exact_card(cantor_diff, Fraction(1, 2), max_depth=0)
    assert res.verdict == "ExceedsBudget"


def test_exact_card_requires_hypotheses(base7_double, no_cover):
    with pytest.raises(HypothesisViolated):
        exact_card(base7_double, Fraction(1, 2))
    with pytest.raises(HypothesisViolated):
        exact_card(no_cover, Fraction(1, 2))


def test_exact_card_out_of_range(cantor_diff):
    with pytest.raises(OutOfRange):
        exact_card(cantor_diff, Fraction(5, 2))


def test_state_cardinality_three_way(cantor_diff, cantor_sum):
    """State cardinality = product-vector norm = brute-force count."""
    rng = random.Random(31)
    for inst in (cantor_diff, cantor_sum):
        for _ in range(100):
            q = rng.choice([5, 7, 11, 13])
            k = rng.randrange(1, q)
            x = Fraction(inst.proj_min) + Fraction(
                rng.randrange(1, inst.span * q), q
            )
            if x.denominator == 1 or x <= inst.proj_min or x >= inst.proj_max:
                continue
            state = initial_state(inst, x)
            for depth in range(1, 7):
                state = advance_state(inst, state)
                vec = cube_count_vector(inst, x, depth)
                count = brute_force_cube_count(inst, x, depth)
                assert state.cardinality == sum(vec) == count


def test_finite_card_is_eventual_cube_count(cantor_diff):
    for x, r in [(Fraction(1, 3), 3), (Fraction(1, 6), 2), (Fraction(1, 2), 1)]:
        res = exact_card(cantor_diff, x)
        assert (res.verdict, res.count) == ("Finite", r)
        start = res.certificate.start_depth
        for k in range(start, start + 4):
            assert brute_force_cube_count(cantor_diff, x, k) == r


def test_lyapunov_trivial_zero(full_interval):
    est, err = lyapunov_estimate(full_interval, samples=100, depth=40, seed=5)
    assert est == 0.0
    assert err == 0.0


def test_lyapunov_deterministic(cantor_diff):
    a = lyapunov_estimate(cantor_diff, samples=300, depth=120, seed=42)
    b = lyapunov_estimate(cantor_diff, samples=300, depth=120, seed=42)
    assert a == b
    c = lyapunov_estimate(cantor_diff, samples=300, depth=120, seed=43)
    assert a != c
    assert 0.0 < a[0] < 1.0


def test_lyapunov_needs_covering(no_cover):
    with pytest.raises(CoveringRequired):
        lyapunov_estimate(no_cover, samples=10, depth=10, seed=1)
