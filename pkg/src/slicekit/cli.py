"""Command-line front end.

Exit codes: 0 success, 1 usage / malformed input, 2 precondition violation,
3 resource cap (including counting budgets).
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from .analysis import dim_u1, enumerate_achievable_r, measure_ur, witness_ur
from .counting import exact_card, lyapunov_estimate
from .errors import NotPlanar, SlicekitError, TooLarge, UsageError
from .instance import ProblemInstance, parse_instance
from .lattice import covering_condition, strong_separation
from .oracle import brute_force_cube_count, brute_force_solutions
from .report import (
    build_report,
    decimal,
    format_rational,
    parse_rational,
    radius_json,
    report_json,
)
from .spectral import spectral_radius, transition_matrices
from .graphs import build_xi_graph

import json

_RENDER_CUBE_CAP = 4096


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse default exits with code 2
        raise UsageError(message)


def _load(path: str) -> ProblemInstance:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    inst = parse_instance(text)
    if inst.cube_count > 10**6:
        print(
            f"warning: {inst.cube_count} digit cubes per level; "
            "brute-force operations may be slow",
            file=sys.stderr,
        )
    return inst


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="slicekit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("instance", help="path to an instance JSON document")
        p.add_argument("--out", help="write output to this path instead of stdout")
        p.add_argument("--json", action="store_true", help="emit JSON")
        return p

    p = add("analyze", "full report: checks, graphs, matrices, dimensions, multiplicities")
    p.add_argument("--max-r", type=int, default=6)
    p.add_argument("--budget", type=int, default=4096)

    add("check", "covering and strong-separation checks plus the basic bounds")
    add("matrices", "the 0-1 transition matrix and the digit count matrices")
    add("dim-u1", "dimension/measure report for the uniquely represented set")

    p = add("count", "exact number of representations of a rational point")
    p.add_argument("--x", required=True, help="rational point, e.g. 1/3")
    p.add_argument("--budget", type=int, default=4096)
    p.add_argument("--max-depth", type=int, default=None)

    p = add("oracle", "brute-force depth-k cube count (and chains) through a point")
    p.add_argument("--x", required=True)
    p.add_argument("--depth", type=int, default=4)
    p.add_argument("--solutions", action="store_true", help="also list surviving chains")

    p = add("enumerate-r", "classify multiplicities 1..max_r")
    p.add_argument("--max-r", type=int, default=6)

    p = add("dim-ur", "dimension of the multiplicity-r set")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--max-r", type=int, default=None)

    p = add("witness", "eventually periodic point with exactly r representations")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--max-r", type=int, default=None)

    p = add("lyapunov", "Monte-Carlo growth exponent of random digit products")
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--depth", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)

    p = add("render", "SVG figure of the unit square, digit cubes and projection lines")
    p.add_argument("--depth", type=int, default=1)
    return parser


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return _dispatch(args)
    except SlicekitError as exc:
        print(f"slicekit: error: {exc}", file=sys.stderr)
        return exc.exit_code
    except SystemExit as exc:  # argparse --help
        return int(exc.code or 0)


main = run


def _dispatch(args) -> int:
    inst = _load(args.instance)
    cmd = args.command
    if cmd == "analyze":
        report = build_report(inst, max_r=args.max_r, budget=args.budget)
        _emit(report_json(report), args.out)
        return 0
    if cmd == "check":
        payload = {
            "bounds": {
                "proj_min": inst.proj_min,
                "proj_max": inst.proj_max,
                "norm1": inst.span,
            },
            "covering": covering_condition(inst),
            "ssc": strong_separation(inst),
        }
        if args.json:
            _emit(json.dumps(payload, sort_keys=True, indent=2) + "\n", args.out)
        else:
            lines = [
                f"bounds: [{inst.proj_min}, {inst.proj_max}], norm1={inst.span}",
                f"covering: {payload['covering']}",
                f"strong separation: {payload['ssc']}",
            ]
            _emit("\n".join(lines) + "\n", args.out)
        return 0
    if cmd == "matrices":
        xi = build_xi_graph(inst)
        payload = {
            "xi": list(xi.us),
            "M": [list(r) for r in xi.matrix],
            "rho": radius_json(spectral_radius(xi.matrix)),
            "T": [
                {"digit": m.digit, "rows": [list(r) for r in m.entries]}
                for m in transition_matrices(inst)
            ],
        }
        _emit(json.dumps(payload, sort_keys=True, indent=2) + "\n", args.out)
        return 0
    if cmd == "dim-u1":
        rep = dim_u1(inst)
        payload = {
            "dim": {"decimal": decimal(rep.s)},
            "dim_exact": rep.dim_exact,
            "measure_class": rep.measure_class,
            "rho": radius_json(rep.rho),
            "notes": list(rep.notes),
        }
        _emit(json.dumps(payload, sort_keys=True, indent=2) + "\n", args.out)
        return 0
    if cmd == "count":
        x = parse_rational(args.x)
        result = exact_card(inst, x, budget=args.budget, max_depth=args.max_depth)
        payload = {
            "x": format_rational(x),
            "verdict": result.verdict,
            "count": result.count,
            "depth_reached": result.depth_reached,
        }
        _emit(json.dumps(payload, sort_keys=True, indent=2) + "\n", args.out)
        return 3 if result.verdict == "ExceedsBudget" else 0
    if cmd == "oracle":
        x = parse_rational(args.x)
        payload = {
            "x": format_rational(x),
            "depth": args.depth,
            "count": brute_force_cube_count(inst, x, args.depth),
        }
        if args.solutions:
            payload["chains"] = [
                {
                    "digits": [list(t) for t in chain.digits],
                    "interval": [
                        format_rational(chain.interval[0]),
                        format_rational(chain.interval[1]),
                    ],
                }
                for chain in brute_force_solutions(inst, x, args.depth)
            ]
        _emit(json.dumps(payload, sort_keys=True, indent=2) + "\n", args.out)
        return 0
    if cmd == "enumerate-r":
        search = enumerate_achievable_r(inst, max_r=args.max_r)
        payload = {
            "achievable": search.achievable(),
            "statuses": {
                str(r): st.status for r, st in sorted(search.statuses.items())
            },
        }
        _emit(json.dumps(payload, sort_keys=True, indent=2) + "\n", args.out)
        return 0
    if cmd == "dim-ur":
        rep = measure_ur(inst, args.r, max_r=args.max_r)
        payload = {
            "r": args.r,
            "dim": {"decimal": decimal(rep.dim)},
            "candidates": [decimal(c) for c in rep.candidates],
            "countable": rep.countable_flag,
            "measure_class": rep.measure_class,
        }
        _emit(json.dumps(payload, sort_keys=True, indent=2) + "\n", args.out)
        return 0
    if cmd == "witness":
        w = witness_ur(inst, args.r, max_r=args.max_r)
        payload = {
            "r": args.r,
            "integer_part": w.integer_part,
            "preperiod": list(w.preperiod),
            "period": list(w.period),
            "value": format_rational(w.value(inst.n)),
        }
        _emit(json.dumps(payload, sort_keys=True, indent=2) + "\n", args.out)
        return 0
    if cmd == "lyapunov":
        estimate, stderr = lyapunov_estimate(
            inst, samples=args.samples, depth=args.depth, seed=args.seed
        )
        payload = {
            "samples": args.samples,
            "depth": args.depth,
            "seed": args.seed,
            "estimate": decimal(estimate),
            "stderr": decimal(stderr),
        }
        _emit(json.dumps(payload, sort_keys=True, indent=2) + "\n", args.out)
        return 0
    if cmd == "render":
        svg = render_grid(inst, depth=args.depth)
        _emit(svg, args.out)
        return 0
    raise UsageError(f"unknown command {cmd!r}")


# -- figure rendering ----------------------------------------------------------

_CANVAS = 800
_MARGIN = 60
_SIDE = _CANVAS - 2 * _MARGIN


def _to_canvas(y1: float, y2: float) -> tuple[float, float]:
    return _MARGIN + y1 * _SIDE, _MARGIN + (1.0 - y2) * _SIDE


def _clip_line(m1: int, m2: int, c: Fraction) -> tuple | None:
    """Segment of the line m1*y1 + m2*y2 = c inside the unit square."""
    pts = set()
    for y1 in (Fraction(0), Fraction(1)):
        if m2 != 0:
            y2 = (c - m1 * y1) / m2
            if 0 <= y2 <= 1:
                pts.add((y1, y2))
    for y2 in (Fraction(0), Fraction(1)):
        if m1 != 0:
            y1 = (c - m2 * y2) / m1
            if 0 <= y1 <= 1:
                pts.add((y1, y2))
    pts = sorted(pts)
    if len(pts) < 2:
        return None
    return pts[0], pts[-1]


def render_grid(inst: ProblemInstance, depth: int = 1) -> str:
    """Deterministic SVG: unit square, shaded digit cubes to the given
    depth, projection lines through every integer-interval endpoint, and
    interval labels."""
    if inst.l != 2:
        raise NotPlanar("render requires l=2")
    if depth < 0:
        raise UsageError("depth must be >= 0")
    if inst.cube_count**depth > _RENDER_CUBE_CAP:
        raise TooLarge(f"{inst.cube_count ** depth} cubes exceed render cap")
    m1, m2 = inst.coefficients
    n = inst.n
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_CANVAS}" height="{_CANVAS}" '
        f'viewBox="0 0 {_CANVAS} {_CANVAS}">',
        f'<rect width="{_CANVAS}" height="{_CANVAS}" fill="white"/>',
    ]

    def rect(y1, y2, side):
        x, y = _to_canvas(float(y1), float(y2 + side))
        w = float(side) * _SIDE
        parts.append(
            f'<rect class="cube" x="{x:.2f}" y="{y:.2f}" width="{w:.2f}" '
            f'height="{w:.2f}" fill="#7a7abf" fill-opacity="0.45"/>'
        )

    def chains(level):
        if level == 0:
            yield (Fraction(0), Fraction(0))
            return
        for a, b in chains(level - 1):
            for d1 in inst.digit_sets[0]:
                for d2 in inst.digit_sets[1]:
                    yield (
                        a + Fraction(d1, n**level),
                        b + Fraction(d2, n**level),
                    )

    if depth > 0:
        side = Fraction(1, n**depth)
        for a, b in sorted(chains(depth)):
            rect(a, b, side)

    x0, y0 = _to_canvas(0.0, 1.0)
    parts.append(
        f'<rect x="{x0:.2f}" y="{y0:.2f}" width="{_SIDE:.2f}" height="{_SIDE:.2f}" '
        f'fill="none" stroke="black" stroke-width="1.5"/>'
    )

    lo, hi = inst.n * inst.proj_min, inst.n * inst.proj_max
    for u in range(lo, hi + 1):
        seg = _clip_line(m1, m2, Fraction(u, n))
        if seg is None:
            continue
        (a1, a2), (b1, b2) = seg
        xa, ya = _to_canvas(float(a1), float(a2))
        xb, yb = _to_canvas(float(b1), float(b2))
        heavy = u % n == 0
        parts.append(
            f'<line class="proj" x1="{xa:.2f}" y1="{ya:.2f}" x2="{xb:.2f}" y2="{yb:.2f}" '
            f'stroke="{"#c03030" if heavy else "#404040"}" '
            f'stroke-width="{1.6 if heavy else 0.7}"/>'
        )
    for u in range(lo, hi):
        seg = _clip_line(m1, m2, Fraction(2 * u + 1, 2 * n))
        if seg is None:
            continue
        (a1, a2), (b1, b2) = seg
        mx, my = _to_canvas(float((a1 + b1) / 2), float((a2 + b2) / 2))
        parts.append(
            f'<text class="interval-label" x="{mx:.2f}" y="{my:.2f}" font-size="13" '
            f'text-anchor="middle" fill="#202020">I{u - lo}</text>'
        )
    for t in range(inst.proj_min, inst.proj_max):
        seg = _clip_line(m1, m2, Fraction(2 * t + 1, 2))
        if seg is None:
            continue
        (a1, a2), (b1, b2) = seg
        mx, my = _to_canvas(float((a1 + b1) / 2), float((a2 + b2) / 2))
        parts.append(
            f'<text class="working-label" x="{mx + 18:.2f}" y="{my - 18:.2f}" '
            f'font-size="16" font-weight="bold" text-anchor="middle" '
            f'fill="#c03030">J{t}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


if __name__ == "__main__":
    sys.exit(main())
