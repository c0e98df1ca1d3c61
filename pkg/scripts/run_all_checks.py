#!/usr/bin/env python3
"""Run every property suite across the reference contexts and print a
one-line verdict per (context, suite) pair.

Exit status is nonzero when any suite fails, mirroring the CLI.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from typing import Tuple

from bicfam.cli import RunConfig, SUITES, _run_suite, _suite_applicable


@dataclass(frozen=True)
class SweepConfig:
    window: int = 3
    k_bound: int = 3
    seed: int = 0
    bounds: int = 8
    max_excluded: int = 4
    families: Tuple[str, ...] = ("[0)", "[0),[1)", "[0),[1),[2)", "@all-tails")
    as_json: bool = False


def sweep(cfg: SweepConfig) -> int:
    failures = 0
    reports = []
    for source in cfg.families:
        run_cfg = RunConfig(
            family_source=source,
            window=cfg.window,
            k_bound=cfg.k_bound,
            seed=cfg.seed,
            bounds=cfg.bounds,
            max_excluded=cfg.max_excluded,
        )
        ctx = run_cfg.context()
        for suite in SUITES:
            reason = _suite_applicable(suite, ctx, run_cfg)
            if reason is not None:
                print(f"skip {source:16s} {suite:10s} ({reason})")
                continue
            report = _run_suite(suite, run_cfg, ctx)
            reports.append(report)
            verdict = "ok  " if report.passed else "FAIL"
            print(
                f"{verdict} {source:16s} {suite:10s} {report.wall_ms:8.1f} ms"
                f"  cex={report.counts['counterexamples_total']}"
            )
            if not report.passed:
                failures += 1
    if cfg.as_json:
        for report in reports:
            print(report.to_json())
    print(f"{len(reports)} suites run, {failures} failed")
    return 1 if failures else 0


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--window", type=int, default=3)
    parser.add_argument("--k-bound", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--bounds", type=int, default=8)
    parser.add_argument("--json", action="store_true")
    args = parser.parse_args()
    return sweep(
        SweepConfig(
            window=args.window,
            k_bound=args.k_bound,
            seed=args.seed,
            bounds=args.bounds,
            as_json=args.json,
        )
    )


if __name__ == "__main__":
    sys.exit(main())
