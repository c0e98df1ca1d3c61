#!/usr/bin/env python3
"""Export Hasse-diagram DOT files for the reference contexts.

Writes one .dot per (family, target) pair into --out-dir; render with
`dot -Tsvg file.dot -o file.svg` if graphviz is installed.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Tuple

from bicfam.cli import RunConfig, cmd_export


@dataclass(frozen=True)
class DiagramConfig:
    window: int = 2
    k_bound: int = 2
    out_dir: Path = Path("diagrams")
    families: Tuple[Tuple[str, str], ...] = (
        ("tail0", "[0)"),
        ("tails01", "[0),[1)"),
        ("all_tails", "@all-tails"),
    )
    targets: Tuple[str, ...] = ("order", "idempotents")


def export(cfg: DiagramConfig) -> int:
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    for label, source in cfg.families:
        run_cfg = RunConfig(family_source=source, window=cfg.window, k_bound=cfg.k_bound)
        for target in cfg.targets:
            path = cfg.out_dir / f"{label}_{target}_n{cfg.window}.dot"
            with path.open("w") as out:
                cmd_export(run_cfg, target, out)
            print(f"wrote {path}")
    return 0


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--window", type=int, default=2)
    parser.add_argument("--k-bound", type=int, default=2)
    parser.add_argument("--out-dir", type=Path, default=Path("diagrams"))
    args = parser.parse_args()
    return export(
        DiagramConfig(window=args.window, k_bound=args.k_bound, out_dir=args.out_dir)
    )


if __name__ == "__main__":
    sys.exit(main())
