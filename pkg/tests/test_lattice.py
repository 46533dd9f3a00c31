import random
from fractions import Fraction

import pytest

from slicekit import (
    covering_condition,
    enumerate_integer_intervals,
    strong_separation,
    type_assignment,
    xi_set,
)
from slicekit.errors import OutOfRange
from slicekit.instance import ProblemInstance
from slicekit.lattice import (
    cover_multiplicity,
    interval_type_counts,
    make_interval,
    working_intervals,
)


def test_interval_counts(cantor_diff, cantor_double_diff):
    ivs = enumerate_integer_intervals(cantor_diff)
    assert [iv.u for iv in ivs] == [-3, -2, -1, 0, 1, 2]
    assert [iv.display_label for iv in ivs] == [0, 1, 2, 3, 4, 5]
    assert len(enumerate_integer_intervals(cantor_double_diff)) == 9


def test_interval_count_unit_span():
    inst = ProblemInstance(n=2, digit_sets=((0,),), coefficients=(1,))
    assert [iv.u for iv in enumerate_integer_intervals(inst)] == [0, 1]


def test_interval_endpoints(cantor_diff):
    iv = make_interval(cantor_diff, -3)
    assert (iv.left, iv.right) == (Fraction(-1), Fraction(-2, 3))
    with pytest.raises(OutOfRange):
        make_interval(cantor_diff, 3)


def test_covering(cantor_diff, base7_double, no_cover):
    assert covering_condition(cantor_diff)
    assert covering_condition(base7_double)
    assert not covering_condition(no_cover)


def test_covering_matches_sampling(cantor_diff, base7_double, no_cover, cantor_sum):
    # dense rational sampling agrees with the exact sweep
    for inst in (cantor_diff, base7_double, no_cover, cantor_sum):
        spans = [inst.projection_interval(w) for w in inst.cube_weights]
        lo, hi = Fraction(inst.proj_min), Fraction(inst.proj_max)
        step = Fraction(1, 7 * inst.n)
        x = lo
        sampled = True
        while x <= hi:
            if not any(a <= x <= b for a, b in spans):
                sampled = False
                break
            x += step
        assert sampled == covering_condition(inst)


def test_strong_separation_cases(cantor_diff, base7_double):
    assert strong_separation(cantor_diff) == [True, True]
    assert strong_separation(base7_double) == [False, False]
    inst = ProblemInstance(n=2, digit_sets=((0, 1),), coefficients=(1,))
    assert strong_separation(inst) == [False]


def test_type_assignment_unique(cantor_diff):
    ta = type_assignment(cantor_diff, -3)
    assert [(t, c.digits) for t, c in ta.entries] == [(-1, (2, 0))]


def test_type_assignment_double_cover(cantor_diff):
    ta = type_assignment(cantor_diff, -1)
    assert [(t, c.digits) for t, c in ta.entries] == [(-1, (0, 0)), (-1, (2, 2))]
    assert cover_multiplicity(cantor_diff, -1) == 2


def test_type_assignment_empty(no_cover):
    # interval [1/2, 3/4] sits in a gap between projections
    assert type_assignment(no_cover, 2).entries == ()


def test_xi_sets(cantor_diff, cantor_sum, base7_double, base6_mixed):
    assert [iv.u for iv in xi_set(cantor_diff)] == [-3, -2, 1, 2]
    assert [iv.display_label for iv in xi_set(cantor_diff)] == [0, 1, 4, 5]
    assert [iv.display_label for iv in xi_set(cantor_sum)] == [0, 1, 4, 5]
    assert len(xi_set(base7_double)) == 7
    assert len(xi_set(base6_mixed)) == 8


def test_working_intervals(cantor_diff):
    assert [w.t for w in working_intervals(cantor_diff)] == [-1, 0]


def test_containment_type_equivalence(cantor_diff, base7_double, no_cover):
    # interval inside a cube's projection iff the offset u - weight is a type
    rng = random.Random(7)
    for inst in (cantor_diff, base7_double, no_cover):
        us = [iv.u for iv in enumerate_integer_intervals(inst)]
        for _ in range(50):
            u = rng.choice(us)
            digits = tuple(rng.choice(s) for s in inst.digit_sets)
            w = inst.weight(digits)
            lo, hi = inst.projection_interval(w)
            contained = lo <= Fraction(u, inst.n) and Fraction(u + 1, inst.n) <= hi
            assert contained == (inst.proj_min <= u - w <= inst.proj_max - 1)


def test_type_counts_sum(cantor_diff):
    for u in range(-3, 3):
        total = sum(c for _, c in interval_type_counts(cantor_diff, u))
        assert total == len(type_assignment(cantor_diff, u).entries)
