"""Command-line entry point.

Exit codes: 0 every check passed, 1 some identity failed, 2 degenerate
input, 3 parse or usage error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from ..errors import (
    DegenerateError,
    HypothesisViolation,
    InadmissibleError,
    InvariantViolation,
    ParseError,
    UsageError,
)
from ..hierarchy import bracket_level, generate
from ..poisson import involutivity_report
from ..symexpr import DEFAULT_SEED, IdentityConfig, render
from .catalog import builtin, builtin_catalog, builtin_names
from .loader import load_scenario, validate_scenario
from .planar import PLANAR_CATALOG, check_2d, load_scenario_2d
from .runner import run_report

EXIT_OK, EXIT_VIOLATION, EXIT_DEGENERATE, EXIT_USAGE = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_sampling(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="sampling seed")
    p.add_argument("--samples", type=int, default=20, help="sample points per identity")
    p.add_argument("--tol", type=float, default=1e-9, help="absolute and relative tolerance")


def _add_scenario(p: argparse.ArgumentParser, depth: bool = True) -> None:
    p.add_argument("scenario", help="scenario file or builtin name")
    if depth:
        p.add_argument("--depth", type=int, default=4, help="hierarchy depth K (>= 2)")
    p.add_argument("--no-validate", action="store_true", help="skip the flow hypotheses at load")
    _add_sampling(p)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="kinsym", description="Symmetry hierarchies of frozen-in flows.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", help="run the full verification suite")
    _add_scenario(p)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--timings", action="store_true", help="include wall times in the report")

    p = sub.add_parser("hierarchy", help="print h_k, W_k and xi_k")
    _add_scenario(p)

    p = sub.add_parser("brackets", help="print the h_kl table and involutivity verdicts")
    _add_scenario(p)

    p = sub.add_parser("check2d", help="planar vorticity check on the lifted flow")
    p.add_argument("scenario", help="planar scenario file or builtin name")
    p.add_argument("--format", choices=("text", "json"), default="text")
    _add_sampling(p)

    sub.add_parser("catalog", help="list builtin scenarios")
    return parser


def _config(args) -> IdentityConfig:
    return IdentityConfig(samples=args.samples, abs_tol=args.tol, rel_tol=args.tol, seed=args.seed)


def _resolve(args, cfg):
    validate = not args.no_validate
    if args.scenario.upper() in builtin_names():
        s = builtin(args.scenario)
        if validate:
            validate_scenario(s, cfg)
        return s
    path = Path(args.scenario)
    if not path.is_file():
        raise UsageError(f"no such scenario file or builtin: {args.scenario}")
    return load_scenario(path.read_text(), validate=validate, cfg=cfg, default_name=path.stem)


def _cmd_check(args, out) -> int:
    cfg = _config(args)
    s = _resolve(args, cfg)
    report = run_report(s, depth=args.depth, cfg=cfg, validate=not args.no_validate)
    out.write(report.to_json(args.timings) if args.format == "json" else report.to_text())
    return report.exit_code


def _cmd_hierarchy(args, out) -> int:
    cfg = _config(args)
    s = _resolve(args, cfg)
    levels = generate(s, depth=args.depth, cfg=cfg, validate=not args.no_validate)
    for lvl in levels:
        out.write(f"k={lvl.k}{'  (truncated)' if lvl.truncated else ''}\n")
        out.write(f"  h_k  = {render(lvl.h)}\n")
        out.write(f"  W_k  = ({', '.join(render(c) for c in lvl.W)})\n")
        out.write(f"  xi_k = {render(lvl.xi)}\n")
    failed = [(lvl.k, name) for lvl in levels for _, name, v in lvl.checks if not v.zero]
    for k, name in failed:
        out.write(f"violated at k={k}: {name}\n")
    return EXIT_VIOLATION if failed else EXIT_OK


def _cmd_brackets(args, out) -> int:
    cfg = _config(args)
    s = _resolve(args, cfg)
    levels = generate(s, depth=args.depth, cfg=cfg, validate=not args.no_validate)
    live = [lvl for lvl in levels if lvl.k >= 1 and not lvl.truncated]
    out.write("h_kl = {h_k, h_l}_Phi:\n")
    for a in live:
        for b in live:
            if a.k < b.k:
                _, hkl = bracket_level(a, b, s, cfg)
                out.write(f"  h_{a.k}{b.k} = {render(hkl)}\n")
    out.write("gauge brackets {h_k, h_l}_Gauge:\n")
    status = EXIT_OK
    for p in involutivity_report(levels, s, cfg):
        if p.k < p.l:
            mark = "zero" if p.verdict.zero else f"NONZERO at {p.verdict.witness}"
            out.write(f"  ({p.k}, {p.l}): {mark}\n")
            if not p.verdict.zero:
                status = EXIT_VIOLATION
    return status


def _cmd_check2d(args, out) -> int:
    cfg = _config(args)
    name = args.scenario.upper()
    if name in PLANAR_CATALOG:
        s = PLANAR_CATALOG[name]
    else:
        path = Path(args.scenario)
        if not path.is_file():
            raise UsageError(f"no such planar scenario file or builtin: {args.scenario}")
        s = load_scenario_2d(path.read_text(), default_name=path.stem)
    report = check_2d(s, cfg)
    out.write(report.to_json() if args.format == "json" else report.to_text())
    return report.exit_code


def _cmd_catalog(args, out) -> int:
    for s in builtin_catalog():
        out.write(f"{s.name:<22} expect={s.expect:<11} v=({', '.join(render(c) for c in s.v)})  "
                  f"B=({', '.join(render(c) for c in s.B)})  phi={render(s.phi)}  h={render(s.h)}\n")
    for name, s in PLANAR_CATALOG.items():
        out.write(f"{name:<22} planar      psi={render(s.psi)}  phi2={render(s.phi2)}\n")
    return EXIT_OK


COMMANDS = {
    "check": _cmd_check,
    "hierarchy": _cmd_hierarchy,
    "brackets": _cmd_brackets,
    "check2d": _cmd_check2d,
    "catalog": _cmd_catalog,
}


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        if getattr(args, "depth", 2) < 2:
            raise UsageError("--depth must be at least 2")
        return COMMANDS[args.command](args, out)
    except (ParseError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DegenerateError as exc:
        print(f"degenerate: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (HypothesisViolation, InvariantViolation, InadmissibleError) as exc:
        print(f"violation: {exc}", file=sys.stderr)
        return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
