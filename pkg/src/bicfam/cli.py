"""Command-line front end.

Commands: eval, closure, order, cone, solve, check, export-dot.  The
family comes from --family as an inline literal ("[0),[1)"), a file
path, or "@all-tails".  Exit codes: 0 success, 1 a property suite
failed, 2 malformed input, 3 an operation was asked outside its domain,
4 a resource cap was hit.

JSON output is canonical and stable for a fixed seed; the text format
additionally shows wall times.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from functools import reduce
from typing import List, Optional

from .errors import FamilySizeCapError, PreconditionError, SetSyntaxError
from .families import (
    ALL_TAILS_DIRECTIVE,
    DEFAULT_FAMILY_CAP,
    Family,
    build_family,
    closure_report,
    omega_closure,
    resolve_generators,
)
from .omega_sets import OmegaSet, format_set
from .core_semigroup import (
    AlgebraContext,
    axioms_report,
    element_sort_key,
    enumerate_window,
    multiply,
    parse_element,
    translate_cover_report,
)
from .order_solve import (
    LEFT,
    finite_fibers_report,
    nat_leq,
    order_report,
    simplicity_report,
    solve,
    up_cone,
)
from .reports import SCHEMA_VERSION, CheckReport
from .topology_model import certify_separate_continuity, proof_identity_suite

DEFAULT_FAMILY = "[0),[1)"

SUITES = ("axioms", "order", "fibers", "cover", "identities", "topology", "closure", "simplicity")


@dataclass(frozen=True)
class RunConfig:
    family_source: str = DEFAULT_FAMILY
    window: int = 4
    k_bound: int = 4
    seed: int = 0
    fmt: str = "text"
    zero_adjoined: bool = False
    max_excluded: int = 4
    bounds: int = 16
    cap: int = DEFAULT_FAMILY_CAP

    def context(self) -> AlgebraContext:
        gens = resolve_generators(self.family_source)
        if gens == ALL_TAILS_DIRECTIVE:
            family = Family.tails()
        else:
            family = build_family(gens)
        return AlgebraContext(family, self.zero_adjoined)


def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be a natural number")
    return value


def _add_global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    # the same flags live on the main parser (with real defaults) and on every
    # subparser (defaults suppressed), so they parse in either position
    d = (lambda _v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--family", default=d(DEFAULT_FAMILY), help="inline literal, file path, or @all-tails")
    parser.add_argument("--window", type=_nonneg, default=d(4), metavar="N")
    parser.add_argument("--k-bound", type=_nonneg, default=d(4), metavar="K")
    parser.add_argument("--seed", type=int, default=d(0))
    parser.add_argument(
        "--zero",
        action="store_true",
        help="adjoin an absorbing zero",
        **({"default": argparse.SUPPRESS} if suppress else {}),
    )
    parser.add_argument("--format", choices=("text", "json"), default=d("text"))
    parser.add_argument("--max-excluded", type=_nonneg, default=d(4), metavar="M")
    parser.add_argument("--bounds", type=_nonneg, default=d(16), metavar="B")
    parser.add_argument("--cap", type=_nonneg, default=d(DEFAULT_FAMILY_CAP), help="family size cap for closure")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bicfam",
        description="exact computations with bicyclic-style triples over a family of sets",
    )
    _add_global_flags(parser, suppress=False)

    common = argparse.ArgumentParser(add_help=False)
    _add_global_flags(common, suppress=True)

    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", parents=[common], help="multiply a * b * ... of element literals")
    p_eval.add_argument("expression")

    sub.add_parser("closure", parents=[common], help="close the family source under shifted intersection")

    p_order = sub.add_parser("order", parents=[common], help="is a below b in the natural partial order")
    p_order.add_argument("a")
    p_order.add_argument("b")

    p_cone = sub.add_parser("cone", parents=[common], help="everything above a in the natural partial order")
    p_cone.add_argument("a")

    p_solve = sub.add_parser("solve", parents=[common], help="all x with p*x = q (or x*p = q)")
    p_solve.add_argument("--side", choices=("left", "right"), default="left")
    p_solve.add_argument("p")
    p_solve.add_argument("q")

    p_check = sub.add_parser("check", parents=[common], help="run a property suite")
    p_check.add_argument("suite", choices=SUITES + ("all",))

    p_export = sub.add_parser("export-dot", parents=[common], help="DOT digraph of the order on a window")
    p_export.add_argument("--target", choices=("order", "idempotents"), default="order")

    return parser


def config_from_args(args) -> RunConfig:
    return RunConfig(
        family_source=args.family,
        window=args.window,
        k_bound=args.k_bound,
        seed=args.seed,
        fmt=args.format,
        zero_adjoined=args.zero,
        max_excluded=args.max_excluded,
        bounds=args.bounds,
        cap=args.cap,
    )


def _emit_json(payload: dict, out) -> None:
    out.write(json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n")


def cmd_eval(cfg: RunConfig, expression: str, out) -> int:
    ctx = cfg.context()
    parts = expression.replace("·", "*").split("*")
    factors = [ctx.require(parse_element(part)) for part in parts]
    result = reduce(lambda a, b: multiply(ctx, a, b), factors)
    if cfg.fmt == "json":
        _emit_json({"schema": SCHEMA_VERSION, "result": str(result)}, out)
    else:
        out.write(f"{result}\n")
    return 0


def cmd_closure(cfg: RunConfig, out) -> int:
    gens = resolve_generators(cfg.family_source)
    if gens == ALL_TAILS_DIRECTIVE:
        if cfg.fmt == "json":
            _emit_json({"schema": SCHEMA_VERSION, "family": ALL_TAILS_DIRECTIVE, "members": None}, out)
        else:
            out.write(f"{ALL_TAILS_DIRECTIVE} (closed by construction)\n")
        return 0
    family = omega_closure(gens, cfg.cap)
    if cfg.fmt == "json":
        _emit_json(
            {
                "schema": SCHEMA_VERSION,
                "members": [format_set(m) for m in family.members],
                "flags": {
                    "has_zero_tail": family.has_zero_tail,
                    "has_empty": family.has_empty,
                    "inductive": family.is_inductive,
                },
            },
            out,
        )
    else:
        for m in family.members:
            out.write(format_set(m) + "\n")
    return 0


def cmd_order(cfg: RunConfig, a_text: str, b_text: str, out) -> int:
    ctx = cfg.context()
    a = ctx.require(parse_element(a_text))
    b = ctx.require(parse_element(b_text))
    verdict = nat_leq(ctx, a, b)
    if cfg.fmt == "json":
        _emit_json({"schema": SCHEMA_VERSION, "leq": verdict}, out)
    else:
        out.write(("true" if verdict else "false") + "\n")
    return 0


def cmd_cone(cfg: RunConfig, a_text: str, out) -> int:
    ctx = cfg.context()
    a = ctx.require(parse_element(a_text))
    cone = up_cone(ctx, a, cfg.k_bound)
    if cfg.fmt == "json":
        _emit_json({"schema": SCHEMA_VERSION, "cone": [str(x) for x in cone]}, out)
    else:
        for x in cone:
            out.write(f"{x}\n")
    return 0


def cmd_solve(cfg: RunConfig, side: str, p_text: str, q_text: str, out) -> int:
    ctx = cfg.context()
    p = ctx.require(parse_element(p_text))
    q = ctx.require(parse_element(q_text))
    sols = solve(ctx, side, p, q)
    if cfg.fmt == "json":
        _emit_json(
            {
                "schema": SCHEMA_VERSION,
                "side": sols.side,
                "solutions": [str(x) for x in sols.solutions],
                "bound": sols.bound,
                "complete": sols.complete,
            },
            out,
        )
    else:
        for x in sols.solutions:
            out.write(f"{x}\n")
        if not sols.complete:
            out.write(f"(incomplete: scanned up to bound {sols.bound})\n")
    return 0


def _run_suite(name: str, cfg: RunConfig, ctx: AlgebraContext) -> CheckReport:
    n, k = cfg.window, cfg.k_bound
    start = time.perf_counter()
    if name == "axioms":
        report = axioms_report(ctx, n, k)
    elif name == "order":
        report = order_report(ctx, n, k)
    elif name == "fibers":
        report = finite_fibers_report(ctx, n, k)
    elif name == "cover":
        report = translate_cover_report(ctx, n, k)
    elif name == "identities":
        report = proof_identity_suite(ctx, cfg.bounds)
    elif name == "topology":
        report = certify_separate_continuity(ctx, n, k, cfg.max_excluded, cfg.seed)
    elif name == "closure":
        report = closure_report(ctx.family, cfg.seed, cap=cfg.cap)
    elif name == "simplicity":
        report = simplicity_report(ctx, n, k)
    else:
        raise PreconditionError(f"unknown suite {name}")
    return report.with_wall((time.perf_counter() - start) * 1000.0)


def _suite_applicable(name: str, ctx: AlgebraContext, cfg: RunConfig) -> Optional[str]:
    """None when runnable, otherwise the reason `check all` skips it."""
    family = ctx.family
    if name == "cover":
        if not (family.has_zero_tail and family.contains(OmegaSet.tail_from(1))):
            return "needs [0) and [1) in the family"
    if name in ("identities", "simplicity") and not family.is_inductive:
        return "needs an inductive family"
    if name == "identities" and not family.all_tails:
        if any(not family.contains(OmegaSet.tail_from(t)) for t in range(cfg.bounds + 2)):
            return f"needs tails up to [{cfg.bounds + 1})"
    return None


def cmd_check(cfg: RunConfig, suite: str, out) -> int:
    ctx = cfg.context()
    if suite == "all":
        selected = []
        skipped = []
        for name in SUITES:
            reason = _suite_applicable(name, ctx, cfg)
            if reason is None:
                selected.append(name)
            else:
                skipped.append({"suite": name, "reason": reason})
    else:
        selected = [suite]
        skipped = []
    reports = [_run_suite(name, cfg, ctx) for name in selected]
    if cfg.fmt == "json":
        payload = {
            "schema": SCHEMA_VERSION,
            "reports": [r.to_dict() for r in reports],
            "skipped": skipped,
        }
        _emit_json(payload, out)
    else:
        for r in reports:
            out.write(r.render_text() + "\n")
        for s in skipped:
            out.write(f"suite {s['suite']}: skipped ({s['reason']})\n")
    return 0 if all(r.passed for r in reports) else 1


def cmd_export(cfg: RunConfig, target: str, out) -> int:
    ctx = cfg.context()
    window = enumerate_window(ctx, cfg.window, cfg.k_bound)
    if target == "idempotents":
        nodes = [x for x in window if x.i == x.j]
    else:
        nodes = list(window)
    nodes.sort(key=element_sort_key)
    below = {
        (a, b)
        for a in nodes
        for b in nodes
        if a != b and nat_leq(ctx, a, b)
    }
    edges = []
    for a, b in sorted(below, key=lambda ab: (element_sort_key(ab[0]), element_sort_key(ab[1]))):
        # Hasse reduction relative to the window: drop transitive edges
        if any((a, c) in below and (c, b) in below for c in nodes):
            continue
        edges.append((a, b))
    name = "order" if target == "order" else "idempotents"
    lines = [f"digraph {name} {{"]
    for x in nodes:
        lines.append(f'  "{x}";')
    for a, b in edges:
        lines.append(f'  "{a}" -> "{b}";')
    lines.append("}")
    out.write("\n".join(lines) + "\n")
    return 0


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    cfg = config_from_args(args)
    out = sys.stdout
    try:
        if args.command == "eval":
            return cmd_eval(cfg, args.expression, out)
        if args.command == "closure":
            return cmd_closure(cfg, out)
        if args.command == "order":
            return cmd_order(cfg, args.a, args.b, out)
        if args.command == "cone":
            return cmd_cone(cfg, args.a, out)
        if args.command == "solve":
            return cmd_solve(cfg, args.side, args.p, args.q, out)
        if args.command == "check":
            return cmd_check(cfg, args.suite, out)
        if args.command == "export-dot":
            return cmd_export(cfg, args.target, out)
        parser.error(f"unknown command {args.command}")
        return 2
    except SetSyntaxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except FamilySizeCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
