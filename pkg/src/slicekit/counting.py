"""Exact representation counting for rational points.

Two mechanisms, deliberately kept apart:

* the matrix route: the number of depth-k product cubes meeting the slice at
  a non-boundary x equals the 1-norm of e_i T_{j1} ... T_{jk}, where i is the
  integer part and j1 j2 ... the base-n digits of x;
* the slice-state automaton: the exact multiset of per-chain offsets
  n^k * x - (weighted digit prefix), advanced one digit at a time over
  rationals.  It also covers boundary points (x = q1/n^q2), where chains are
  kept alive by closed-interval containment.

For rational x the automaton state space is finite, so recurrences are real
cycles.  An exact recurrence of (digit phase, offset multiset) proves the
count stays constant; a recurrence of (digit phase, offset support) with a
strictly larger multiset proves unbounded growth, because under the covering
condition every surviving chain keeps at least one child, so the surplus
mass reproduces itself every cycle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import log

import numpy as np

from .errors import (
    BoundaryPoint,
    CoveringRequired,
    HypothesisViolated,
    OutOfRange,
)
from .instance import ProblemInstance
from .lattice import covering_condition, strong_separation
from .spectral import transition_matrices

DEFAULT_BUDGET = 4096


@dataclass(frozen=True)
class NadicExpansion:
    """Base-n expansion x = integer_part + 0.d1 d2 d3 ...

    ``preperiod`` then ``period`` (repeating) describe the whole digit
    stream; terminating expansions carry period (0,) and the boundary flag.
    """

    integer_part: int
    preperiod: tuple[int, ...]
    period: tuple[int, ...]
    boundary: bool
    prefix: tuple[int, ...]

    def digit(self, k: int) -> int:
        """k-th digit, 1-based."""
        idx = k - 1
        if idx < len(self.preperiod):
            return self.preperiod[idx]
        return self.period[(idx - len(self.preperiod)) % len(self.period)]

    def digits(self, count: int) -> tuple[int, ...]:
        return tuple(self.digit(k) for k in range(1, count + 1))

    def phase(self, depth: int) -> int:
        """Position in the digit stream after ``depth`` digits were consumed;
        equal phases mean identical remaining digit streams."""
        pre = len(self.preperiod)
        if depth < pre:
            return depth
        return pre + (depth - pre) % len(self.period)


def nadic_expansion(inst: ProblemInstance, x: Fraction | int, depth: int = 0) -> NadicExpansion:
    """Exact expansion by long division; remainders of the fractional part
    recur, which pins down the preperiod/period split."""
    x = Fraction(x)
    if not inst.proj_min <= x <= inst.proj_max:
        raise OutOfRange(f"{x} outside [{inst.proj_min}, {inst.proj_max}]")
    n = inst.n
    i = x.numerator // x.denominator
    frac = x - i
    p, q = frac.numerator, frac.denominator
    digits: list[int] = []
    seen: dict[int, int] = {}
    preperiod: tuple[int, ...]
    period: tuple[int, ...]
    while True:
        if p == 0:
            preperiod, period, boundary = tuple(digits), (0,), True
            break
        if p in seen:
            cut = seen[p]
            preperiod, period, boundary = tuple(digits[:cut]), tuple(digits[cut:]), False
            break
        seen[p] = len(digits)
        d, p = divmod(n * p, q)
        digits.append(d)
    exp = NadicExpansion(
        integer_part=i,
        preperiod=preperiod,
        period=period,
        boundary=boundary,
        prefix=(),
    )
    if depth:
        exp = NadicExpansion(
            integer_part=i,
            preperiod=preperiod,
            period=period,
            boundary=boundary,
            prefix=exp.digits(depth),
        )
    return exp


def expansion_value(inst_n: int, integer_part: int, preperiod, period) -> Fraction:
    """Rational value of an eventually periodic expansion."""
    n = inst_n
    value = Fraction(integer_part)
    scale = Fraction(1)
    for d in preperiod:
        scale /= n
        value += d * scale
    if period and any(period):
        num = 0
        for d in period:
            num = num * n + d
        value += scale * Fraction(num, n ** len(period) - 1)
    return value


def cube_count_vector(inst: ProblemInstance, x: Fraction | int, k: int) -> tuple[int, ...]:
    """e_i T_{j1} ... T_{jk} for the expansion of a non-boundary x; the
    entries are the depth-k chain counts per unit offset, their sum the
    number of depth-k cubes meeting the slice."""
    if not covering_condition(inst):
        raise CoveringRequired("the depth-1 projections must cover the full range")
    exp = nadic_expansion(inst, x, depth=k)
    if exp.boundary:
        raise BoundaryPoint(f"{x} is a base-{inst.n} boundary point")
    mats = transition_matrices(inst)
    span = inst.span
    vec = [0] * span
    vec[exp.integer_part - inst.proj_min] = 1
    for j in exp.prefix:
        rows = mats[j].entries
        vec = [
            sum(vec[u] * rows[u][v] for u in range(span)) for v in range(span)
        ]
    return tuple(vec)


@dataclass(frozen=True)
class SliceState:
    """Multiset of surviving chain offsets at one depth.

    Offset of a chain = n^depth * x - (weighted digit prefix); a chain
    survives while its offset stays inside [proj_min, proj_max] (closed:
    slices through a cube face do meet the cube)."""

    offsets: tuple[Fraction, ...]
    depth: int

    @property
    def cardinality(self) -> int:
        return len(self.offsets)

    def support(self) -> tuple[Fraction, ...]:
        return tuple(sorted(set(self.offsets)))


def initial_state(inst: ProblemInstance, x: Fraction) -> SliceState:
    if not inst.proj_min <= x <= inst.proj_max:
        raise OutOfRange(f"{x} outside [{inst.proj_min}, {inst.proj_max}]")
    return SliceState(offsets=(Fraction(x),), depth=0)


def advance_state(inst: ProblemInstance, state: SliceState) -> SliceState:
    """One digit of depth: each chain branches into the cubes whose closed
    projection interval contains its offset."""
    weights = inst.cube_weights
    lo, hi = inst.proj_min, inst.proj_max
    n = inst.n
    children: list[Fraction] = []
    for r in state.offsets:
        base = n * r
        for w, count in weights.items():
            v = base - w
            if lo <= v <= hi:
                children.extend([v] * count)
    return SliceState(offsets=tuple(sorted(children)), depth=state.depth + 1)


@dataclass(frozen=True)
class CycleCertificate:
    start_depth: int
    period: int
    cardinality_before: int
    cardinality_after: int


@dataclass(frozen=True)
class CardResult:
    """Outcome of exact counting: Finite(r), Infinite, or budget exhaustion.

    Finite carries a proved cycle of constant cardinality; Infinite carries a
    support recurrence whose multiset strictly grew.
    """

    verdict: str  # "Finite" | "Infinite" | "ExceedsBudget"
    count: int | None
    depth_reached: int
    certificate: CycleCertificate | None

    @property
    def is_finite(self) -> bool:
        return self.verdict == "Finite"


def exact_card(
    inst: ProblemInstance,
    x: Fraction | int,
    budget: int = DEFAULT_BUDGET,
    max_depth: int | None = None,
) -> CardResult:
    """Exact number of representations of x, via the slice-state automaton.

    Requires the covering condition (counts are then nondecreasing in depth)
    and strong separation for every factor (depth-k cubes are then pairwise
    disjoint, so surviving-cube counts converge to the solution count).
    """
    x = Fraction(x)
    if not covering_condition(inst) or not all(strong_separation(inst)):
        raise HypothesisViolated(
            "exact counting needs the covering condition and strong separation"
        )
    exp = nadic_expansion(inst, x)
    if max_depth is None:
        max_depth = 64 * (len(exp.preperiod) + len(exp.period))
    state = initial_state(inst, x)
    seen_exact: dict[tuple, int] = {}
    seen_support: dict[tuple, tuple[int, int]] = {}
    while True:
        phase = exp.phase(state.depth)
        exact_key = (phase, state.offsets)
        if exact_key in seen_exact:
            start = seen_exact[exact_key]
            return CardResult(
                verdict="Finite",
                count=state.cardinality,
                depth_reached=state.depth,
                certificate=CycleCertificate(
                    start_depth=start,
                    period=state.depth - start,
                    cardinality_before=state.cardinality,
                    cardinality_after=state.cardinality,
                ),
            )
        seen_exact[exact_key] = state.depth
        support_key = (phase, state.support())
        if support_key in seen_support:
            depth0, card0 = seen_support[support_key]
            if state.cardinality > card0:
                return CardResult(
                    verdict="Infinite",
                    count=None,
                    depth_reached=state.depth,
                    certificate=CycleCertificate(
                        start_depth=depth0,
                        period=state.depth - depth0,
                        cardinality_before=card0,
                        cardinality_after=state.cardinality,
                    ),
                )
        else:
            seen_support[support_key] = (state.depth, state.cardinality)
        if state.cardinality > budget or state.depth >= max_depth:
            return CardResult(
                verdict="ExceedsBudget",
                count=state.cardinality,
                depth_reached=state.depth,
                certificate=None,
            )
        state = advance_state(inst, state)


def lyapunov_estimate(
    inst: ProblemInstance, samples: int, depth: int, seed: int
) -> tuple[float, float]:
    """Monte-Carlo estimate of the growth exponent of random digit-matrix
    products, normalised by log n (the almost-sure slice dimension under the
    covering condition).

    Each sample draws a uniform starting unit offset and a uniform digit
    string, then averages log ||e_i T_{d1} ... T_{dk}||_1 / (k log n) with
    running renormalisation.  Samples are seeded in fixed-size blocks from
    (seed, block index), so the result depends only on (seed, samples,
    depth), regardless of how the work would be partitioned.
    """
    if not covering_condition(inst):
        raise CoveringRequired("the depth-1 projections must cover the full range")
    if samples <= 0 or depth <= 0:
        raise OutOfRange("samples and depth must be positive")
    mats = np.array(
        [[list(row) for row in m.entries] for m in transition_matrices(inst)],
        dtype=np.float64,
    )
    span = inst.span
    block_size = 256
    per_sample = np.empty(samples, dtype=np.float64)
    for block_start in range(0, samples, block_size):
        block = min(block_size, samples - block_start)
        rng = np.random.default_rng(
            np.random.SeedSequence(entropy=seed, spawn_key=(block_start,))
        )
        starts = rng.integers(0, span, size=block)
        digits = rng.integers(0, inst.n, size=(block, depth))
        vecs = np.zeros((block, span), dtype=np.float64)
        vecs[np.arange(block), starts] = 1.0
        acc = np.zeros(block, dtype=np.float64)
        for k in range(depth):
            step = mats[digits[:, k]]
            vecs = np.einsum("bu,buv->bv", vecs, step)
            norms = vecs.sum(axis=1)
            acc += np.log(norms)
            vecs /= norms[:, None]
        per_sample[block_start : block_start + block] = acc / (depth * log(inst.n))
    estimate = float(per_sample.mean())
    if samples > 1:
        stderr = float(per_sample.std(ddof=1) / samples**0.5)
    else:
        stderr = 0.0
    return estimate, stderr
