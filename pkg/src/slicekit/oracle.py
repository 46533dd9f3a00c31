"""Independent brute-force ground truth.

Chains of digit tuples are extended depth-first; a chain survives exactly
while the closed projection interval of its cube still contains x.  The
containment test is carried out on scaled integers (multiply through by the
denominator of x), so there is no floating point anywhere.  The count walks
digit tuples one by one and only memoises identical (offset, remaining
depth) subtrees, which leaves the enumeration semantics untouched.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import OutOfRange, TooLarge
from .instance import ProblemInstance

_CHAIN_CAP = 10**6


@dataclass(frozen=True)
class CubeChain:
    """A surviving chain: digit tuples per depth plus the exact projection
    interval of the final cube."""

    digits: tuple[tuple[int, ...], ...]
    interval: tuple[Fraction, Fraction]


def _check_range(inst: ProblemInstance, x: Fraction) -> Fraction:
    x = Fraction(x)
    if not inst.proj_min <= x <= inst.proj_max:
        raise OutOfRange(f"{x} outside [{inst.proj_min}, {inst.proj_max}]")
    return x


def brute_force_cube_count(inst: ProblemInstance, x: Fraction | int, k: int) -> int:
    """Number of depth-k chains whose closed projection interval contains x.

    State: R = q * (n^depth * x - weighted prefix) for x = p/q; a cube of
    weight w keeps the chain alive iff q*proj_min <= n*R - q*w <= q*proj_max.
    """
    x = _check_range(inst, x)
    if k < 0:
        raise OutOfRange("depth must be >= 0")
    p, q = x.numerator, x.denominator
    n = inst.n
    lo, hi = q * inst.proj_min, q * inst.proj_max
    cube_weights = [inst.weight(d) for d in inst.iter_cubes()]
    memo: dict[tuple[int, int], int] = {}

    def count(r: int, remaining: int) -> int:
        if remaining == 0:
            return 1
        key = (r, remaining)
        hit = memo.get(key)
        if hit is not None:
            return hit
        total = 0
        base = n * r
        for w in cube_weights:
            child = base - q * w
            if lo <= child <= hi:
                total += count(child, remaining - 1)
        memo[key] = total
        return total

    return count(p, k)


def brute_force_solutions(inst: ProblemInstance, x: Fraction | int, k: int) -> list[CubeChain]:
    """The surviving chains themselves, in lexicographic digit order."""
    x = _check_range(inst, x)
    if k < 0:
        raise OutOfRange("depth must be >= 0")
    p, q = x.numerator, x.denominator
    n = inst.n
    lo, hi = q * inst.proj_min, q * inst.proj_max
    cubes = [(d, inst.weight(d)) for d in inst.iter_cubes()]
    out: list[tuple[tuple[int, ...], ...]] = []

    def extend(prefix: list[tuple[int, ...]], r: int) -> None:
        if len(prefix) == k:
            if len(out) >= _CHAIN_CAP:
                raise TooLarge(f"more than {_CHAIN_CAP} surviving chains")
            out.append(tuple(prefix))
            return
        base = n * r
        for digits, w in cubes:
            child = base - q * w
            if lo <= child <= hi:
                prefix.append(digits)
                extend(prefix, child)
                prefix.pop()

    extend([], p)
    big = n**k
    chains = []
    for digits in out:
        weighted = 0
        for tup in digits:
            weighted = weighted * n + inst.weight(tup)
        chains.append(
            CubeChain(
                digits=digits,
                interval=(
                    Fraction(weighted + inst.proj_min, big),
                    Fraction(weighted + inst.proj_max, big),
                ),
            )
        )
    return sorted(chains, key=lambda c: c.digits)
