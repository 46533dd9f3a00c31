"""Lattice geometry of an instance: the length-1/n integer intervals, the
unit working intervals, projection intervals of digit cubes, interval types,
and the covering / strong-separation checks.

All endpoints here are rationals with denominator n, so every containment
question is decided exactly on scaled integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import OutOfRange
from .instance import ProblemInstance


@dataclass(frozen=True)
class IntegerInterval:
    """The interval [u, u+1]/n inside [proj_min, proj_max].

    ``display_label`` renumbers intervals from 0 upward (u - n*proj_min) to
    match the usual figure-style labelling; graph code keys on the raw u.
    """

    u: int
    n: int
    display_label: int

    @property
    def left(self) -> Fraction:
        return Fraction(self.u, self.n)

    @property
    def right(self) -> Fraction:
        return Fraction(self.u + 1, self.n)


@dataclass(frozen=True)
class WorkingInterval:
    """The unit interval [t, t+1] with proj_min <= t <= proj_max - 1."""

    t: int


@dataclass(frozen=True)
class SmallCube:
    """A depth-1 digit cube: its digit tuple, form value, and the exact
    projection interval (weight + [proj_min, proj_max]) / n."""

    digits: tuple[int, ...]
    weight: int
    projection: tuple[Fraction, Fraction]


@dataclass(frozen=True)
class TypeAssignment:
    """All (type, cube) pairs covering one integer interval.

    A cube of weight w covers interval u exactly when t = u - w lies in
    [proj_min, proj_max - 1]; t is the position of the interval inside the
    cube's projection interval.
    """

    interval: IntegerInterval
    entries: tuple[tuple[int, SmallCube], ...]


def u_range(inst: ProblemInstance) -> range:
    return range(inst.n * inst.proj_min, inst.n * inst.proj_max)


def make_interval(inst: ProblemInstance, u: int) -> IntegerInterval:
    if u not in u_range(inst):
        raise OutOfRange(f"u={u} outside [{inst.n * inst.proj_min}, {inst.n * inst.proj_max - 1}]")
    return IntegerInterval(u=u, n=inst.n, display_label=u - inst.n * inst.proj_min)


def enumerate_integer_intervals(inst: ProblemInstance) -> list[IntegerInterval]:
    """All n*span integer intervals, ascending in u."""
    return [make_interval(inst, u) for u in u_range(inst)]


def working_intervals(inst: ProblemInstance) -> list[WorkingInterval]:
    return [WorkingInterval(t) for t in range(inst.proj_min, inst.proj_max)]


def interval_type_counts(inst: ProblemInstance, u: int) -> list[tuple[int, int]]:
    """(type, number of cubes realising it) for interval u, ascending type."""
    weights = inst.cube_weights
    out = []
    for t in range(inst.proj_min, inst.proj_max):
        c = weights.get(u - t, 0)
        if c:
            out.append((t, c))
    return out


def cover_multiplicity(inst: ProblemInstance, u: int) -> int:
    """Number of depth-1 cubes whose projection interval contains interval u."""
    return sum(c for _, c in interval_type_counts(inst, u))


def type_assignment(inst: ProblemInstance, interval: IntegerInterval | int) -> TypeAssignment:
    """Enumerate the cubes covering one integer interval, with their types."""
    iv = interval if isinstance(interval, IntegerInterval) else make_interval(inst, interval)
    entries = []
    for digits in inst.iter_cubes():
        w = inst.weight(digits)
        t = iv.u - w
        if inst.proj_min <= t <= inst.proj_max - 1:
            entries.append((t, SmallCube(digits, w, inst.projection_interval(w))))
    return TypeAssignment(interval=iv, entries=tuple(entries))


def covering_condition(inst: ProblemInstance) -> bool:
    """Do the depth-1 projection intervals cover [proj_min, proj_max]?

    Decided exactly: scaled by n the projection intervals have integer
    endpoints [w + proj_min, w + proj_max]; sort and sweep for gaps.
    """
    lo = inst.n * inst.proj_min
    hi = inst.n * inst.proj_max
    spans = sorted((w + inst.proj_min, w + inst.proj_max) for w in inst.cube_weights)
    reach = lo
    for a, b in spans:
        if a > reach:
            return False
        reach = max(reach, b)
        if reach >= hi:
            return True
    return reach >= hi


def strong_separation(inst: ProblemInstance) -> list[bool]:
    """Per factor set: no two digits at distance exactly 1.

    When this holds the depth-1 pieces of that factor are pairwise disjoint,
    and so are all deeper product cubes.
    """
    out = []
    for digits in inst.digit_sets:
        s = set(digits)
        out.append(not any(d + 1 in s for d in s))
    return out


def xi_set(inst: ProblemInstance) -> list[IntegerInterval]:
    """Integer intervals covered by exactly one cube projection, ascending."""
    return [
        make_interval(inst, u)
        for u in u_range(inst)
        if cover_multiplicity(inst, u) == 1
    ]


def xi_types(inst: ProblemInstance) -> dict[int, int]:
    """u -> its unique type, for every uniquely covered interval."""
    out = {}
    for u in u_range(inst):
        tc = interval_type_counts(inst, u)
        if len(tc) == 1 and tc[0][1] == 1:
            out[u] = tc[0][0]
    return out
