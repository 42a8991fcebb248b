"""Command-line driver.

Exit codes: 0 verdict true (or success), 2 verdict false, 1 error,
3 internal disagreement between independent methods.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .balayage import DEFAULT_GRID, DEFAULT_GUARD, SweepConfig, sweep_measure, verify_sweep
from .carlson import dichotomy_check
from .exceptions import AliasRisk, AtomTooClose, CarlsonKitError
from .expsum import (DEFAULT_GROWTH_SAMPLES, DEFAULT_Y_MAX, DEFAULT_Y_MIN, ExpSum,
                     direct_integer_vanishing, growth_rate_imaginary)
from .hardy import DEFAULT_TOL, discrete_criterion, pipeline_criterion, real_frequency_form
from .io import read_document, render_human, render_records, serialize_document
from .measures import CircleMeasure, merge_atoms, split_interior_boundary, support_radius

EXIT_TRUE = 0
EXIT_ERROR = 1
EXIT_FALSE = 2
EXIT_DISAGREE = 3

DEFAULT_DIRECT_N_MAX = 30


class UsageError(CarlsonKitError):
    pass


def _expect(doc, kind):
    if doc.kind != kind:
        raise UsageError(f"expected a {kind} document, got {doc.kind}")
    return doc.payload


def _emit(sections, fmt, stream=None):
    stream = stream or sys.stdout
    render = render_records if fmt == "records" else render_human
    stream.write(render(sections))


@dataclass(frozen=True)
class _Verdicts:
    discrete: bool
    pipeline: bool
    direct: bool


def cmd_check(args) -> int:
    g: ExpSum = _expect(read_document(args.input), "expsum")
    sections = {}
    verdicts = []
    if args.mode in ("discrete", "both"):
        rep = discrete_criterion(real_frequency_form(g), args.tol, args.tol)
        sections["discrete"] = rep
        verdicts.append(rep.verdict)
    if args.mode in ("pipeline", "both"):
        rep = pipeline_criterion(g, args.tol)
        sections["pipeline"] = rep
        verdicts.append(rep.verdict)
    if args.mode == "both":
        direct = direct_integer_vanishing(g, args.n_max, args.tol)
        verdicts.append(direct.verdict)
        agree = len(set(verdicts)) == 1
        sections["agreement"] = _Verdicts(*verdicts)
        _emit(sections, args.format)
        if not agree:
            print("error: criteria disagree", file=sys.stderr)
            return EXIT_DISAGREE
        return EXIT_TRUE if verdicts[0] else EXIT_FALSE
    _emit(sections, args.format)
    return EXIT_TRUE if verdicts[0] else EXIT_FALSE


@dataclass(frozen=True)
class _SweepSummary:
    radius: float
    grid_size: int
    interior_atoms: int
    boundary_atoms: int
    n_verify: int
    max_relative_moment_error: float


def cmd_sweep(args) -> int:
    nu: CircleMeasure = merge_atoms(_expect(read_document(args.input), "circle_measure"))
    cfg = SweepConfig(args.grid, args.guard)
    if args.n_verify * 4 > cfg.grid_size:
        raise AliasRisk(f"--n-verify {args.n_verify} needs --grid >= {4 * args.n_verify}")
    if nu:
        r = args.radius if args.radius is not None else max(1.0, support_radius(nu))
        if r < support_radius(nu):
            raise UsageError(f"--radius {r} is smaller than the support radius {support_radius(nu)}")
    else:
        r = args.radius if args.radius is not None else 1.0
    interior, boundary = split_interior_boundary(nu, r)
    h = sweep_measure(interior, r, cfg.grid_size, cfg.guard)
    err = verify_sweep(interior, h, args.n_verify) if interior else 0.0
    summary = _SweepSummary(r, cfg.grid_size, len(interior), len(boundary), args.n_verify, err)

    text = serialize_document(h)
    if args.output:
        Path(args.output).write_text(text)
        _emit({"sweep": summary}, args.format)
    else:
        sys.stdout.write(text)
        _emit({"sweep": summary}, args.format, sys.stderr)
    return EXIT_TRUE


def cmd_growth(args) -> int:
    g: ExpSum = _expect(read_document(args.input), "expsum")
    est = growth_rate_imaginary(g, args.y_min, args.y_max, args.samples)
    _emit({"growth": est}, args.format)
    return EXIT_TRUE


def cmd_dichotomy(args) -> int:
    g: ExpSum = _expect(read_document(args.input), "expsum")
    rep = dichotomy_check(g, args.n_max, args.y_max, args.tol, args.criterion_tol, args.samples)
    _emit({"dichotomy": rep}, args.format)
    if rep.vanishes != rep.direct_vanishing:
        print("error: pipeline and direct evaluation disagree", file=sys.stderr)
        return EXIT_DISAGREE
    if rep.carlson_bound_met is False:
        print("error: nontrivial vanishing sum grows slower than pi", file=sys.stderr)
        return EXIT_DISAGREE
    return EXIT_TRUE


class _Parser(argparse.ArgumentParser):
    # usage errors share the generic error code; 2 is reserved for "false"
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="carlsonkit", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"carlsonkit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("input", help="input document ('-' for stdin)")
        p.add_argument("--format", choices=("human", "records"), default="human")

    p = sub.add_parser("check", help="decide vanishing on the non-negative integers")
    common(p)
    p.add_argument("--mode", choices=("discrete", "pipeline", "both"), default="pipeline")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--n-max", type=int, default=DEFAULT_DIRECT_N_MAX,
                   help="highest integer for the direct evaluation cross-check")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("sweep", help="sweep interior atoms onto the boundary circle")
    common(p)
    p.add_argument("--grid", type=int, default=DEFAULT_GRID, help="boundary samples M")
    p.add_argument("--guard", type=float, default=DEFAULT_GUARD)
    p.add_argument("--n-verify", type=int, default=16)
    p.add_argument("--radius", type=float, default=None,
                   help="circle radius (default: max(1, support radius))")
    p.add_argument("--output", "-o", default=None, help="write the density document here")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("growth", help="growth rate along the imaginary axis")
    common(p)
    p.add_argument("--y-min", type=float, default=DEFAULT_Y_MIN)
    p.add_argument("--y-max", type=float, default=DEFAULT_Y_MAX)
    p.add_argument("--samples", type=int, default=DEFAULT_GROWTH_SAMPLES)
    p.set_defaults(func=cmd_growth)

    p = sub.add_parser("dichotomy", help="vanishing verdict plus growth bound")
    common(p)
    p.add_argument("--n-max", type=int, default=DEFAULT_DIRECT_N_MAX)
    p.add_argument("--y-max", type=float, default=DEFAULT_Y_MAX)
    p.add_argument("--samples", type=int, default=DEFAULT_GROWTH_SAMPLES)
    p.add_argument("--tol", type=float, default=0.05, help="slack below pi for the growth bound")
    p.add_argument("--criterion-tol", type=float, default=DEFAULT_TOL)
    p.set_defaults(func=cmd_dichotomy)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except AtomTooClose as exc:
        print(f"error: {exc}", file=sys.stderr)
        print("hint: raise --grid and --guard, or sweep onto a larger --radius", file=sys.stderr)
        return EXIT_ERROR
    except (CarlsonKitError, ValueError, OverflowError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
