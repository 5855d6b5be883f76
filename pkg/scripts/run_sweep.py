#!/usr/bin/env python3
"""Run the verification sweep and write a JSON report.

Example:
    python scripts/run_sweep.py --max-rank 4 --jobs 4 --out sweep.json
"""

from __future__ import annotations

import argparse
import sys
import time

from cascade_lab.harness import CHECKS, SweepConfig, run_sweep


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--types", nargs="*", default=[], help="e.g. A3 B4 G2 (default: every type up to --max-rank)")
    ap.add_argument("--max-rank", type=int, default=3)
    ap.add_argument("--checks", nargs="*", default=[], choices=sorted(CHECKS), metavar="CHECK")
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--out", default="sweep.json")
    args = ap.parse_args()

    start = time.perf_counter()
    cfg = SweepConfig(types=args.types, max_rank=args.max_rank, checks=args.checks,
                      parallelism=args.jobs, output=args.out)
    report = run_sweep(cfg)
    s = report["summary"]
    for name, counts in s["per_check"].items():
        print(f"{name:20s} " + " ".join(f"{k}={v}" for k, v in counts.items()))
    print(f"contexts={s['contexts']} fail={s['fail']} skipped={s['skipped']} "
          f"open_case={s['open_case']} ({time.perf_counter() - start:.1f}s) -> {args.out}")
    return 1 if s["fail"] or s["skipped"] else 0


if __name__ == "__main__":
    sys.exit(main())
