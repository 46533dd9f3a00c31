"""Cross-module invariants on randomly generated instances."""

import random
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from slicekit import (
    build_congruent_graph,
    build_full_graph,
    build_xi_graph,
    covering_condition,
    exact_card,
    brute_force_cube_count,
    scc,
    strong_separation,
    transition_matrices,
    type_assignment,
)
from slicekit.instance import ProblemInstance
from slicekit.lattice import u_range, xi_types


@st.composite
def instances(draw):
    n = draw(st.integers(2, 6))
    l = draw(st.integers(1, 2))
    sets = tuple(
        tuple(sorted(draw(st.sets(st.integers(0, n - 1), min_size=1, max_size=n))))
        for _ in range(l)
    )
    coeffs = tuple(
        draw(st.integers(-3, 3).filter(lambda m: m != 0)) for _ in range(l)
    )
    return ProblemInstance(n=n, digit_sets=sets, coefficients=coeffs)


@settings(max_examples=60, deadline=None, derandomize=True)
@given(instances())
def test_matrix_entries_match_type_assignments(inst):
    # positive entry at (u, v) iff the interval n*u+j is covered at position v
    for mat in transition_matrices(inst):
        for u in range(inst.proj_min, inst.proj_max):
            ta = type_assignment(inst, inst.n * u + mat.digit)
            types = [t for t, _ in ta.entries]
            for v in range(inst.proj_min, inst.proj_max):
                entry = mat.entry(u, v)
                assert (entry > 0) == (v in types)
                assert entry == types.count(v)


@settings(max_examples=60, deadline=None, derandomize=True)
@given(instances())
def test_unique_interval_neighbours_fill_working_interval(inst):
    # a uniquely covered interval points at exactly the n intervals of its
    # working interval
    g = build_full_graph(inst)
    for u, t in xi_types(inst).items():
        assert g.adjacency[u] == tuple(range(inst.n * t, inst.n * t + inst.n))


@settings(max_examples=40, deadline=None, derandomize=True)
@given(instances())
def test_xi_sccs_survive_in_subset_graph(inst):
    if len(xi_types(inst)) > 12:
        return
    graph = build_congruent_graph(inst, mode="full")
    xi_comps = {
        frozenset((u,) for u in comp)
        for comp in scc(build_xi_graph(inst)).components
    }
    sub_comps = {frozenset(c) for c in graph.scc.components}
    assert xi_comps <= sub_comps
    xi_radii = {rr.estimate for rr in scc(build_xi_graph(inst)).radii}
    sub_radii = {rr.estimate for rr in graph.scc.radii}
    assert xi_radii <= sub_radii


@settings(max_examples=40, deadline=None, derandomize=True)
@given(instances(), st.integers(0, 10**6))
def test_monotone_counts_iff_useful(inst, salt):
    """Under covering, brute-force counts never decrease with depth."""
    if not covering_condition(inst):
        return
    rng = random.Random(salt)
    q = rng.choice([5, 7, 11, 13])
    while inst.n % q == 0:
        q += 2
    k = rng.randrange(1, inst.span * q)
    x = Fraction(inst.proj_min) + Fraction(k, q)
    counts = [brute_force_cube_count(inst, x, depth) for depth in range(6)]
    assert all(a <= b for a, b in zip(counts, counts[1:]))


@settings(max_examples=30, deadline=None, derandomize=True)
@given(instances(), st.integers(0, 10**6))
def test_exact_card_dominates_cube_counts(inst, salt):
    """Finite representation counts bound the surviving-cube counts."""
    if not covering_condition(inst) or not all(strong_separation(inst)):
        return
    rng = random.Random(salt)
    q = rng.choice([5, 7, 11])
    while inst.n % q == 0:
        q += 2
    x = Fraction(inst.proj_min) + Fraction(rng.randrange(1, inst.span * q), q)
    res = exact_card(inst, x, budget=512, max_depth=96)
    if res.verdict != "Finite":
        return
    for k in range(6):
        assert brute_force_cube_count(inst, x, k) <= res.count


@settings(max_examples=40, deadline=None, derandomize=True)
@given(instances())
def test_every_interval_covered_iff_covering(inst):
    covered = all(
        sum(
            c
            for t in range(inst.proj_min, inst.proj_max)
            for c in [inst.cube_weights.get(u - t, 0)]
        )
        > 0
        for u in u_range(inst)
    )
    assert covered == covering_condition(inst)
