#!/usr/bin/env python3
"""Print the D-series table of cascade sizes r_p and greedy counts N_p at d_{G/B}.

With --brute, the counts for small p are re-derived by enumerating every
greedy decomposition.
"""

from __future__ import annotations

import argparse
import sys

from cascade_lab.degree import all_greedy_decompositions, context
from cascade_lab.harness import golden_counts
from cascade_lab.minimal import compute_d_X


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-p", type=int, default=8)
    ap.add_argument("--brute", type=int, default=6, help="enumerate sequences up to this p")
    args = ap.parse_args()

    ok = True
    print(f"{'type':5s} {'r':>3s} {'N':>6s} {'brute':>6s}  d_GB")
    for row in golden_counts(range(3, args.max_p + 1)):
        p = int(row["type"][1:])
        brute = ""
        if p <= args.brute:
            cb = context(row["type"])
            n = len(all_greedy_decompositions(cb, compute_d_X(cb)))
            brute = str(n)
            ok &= n == row["N"]
        ok &= row["ok"]
        print(f"{row['type']:5s} {row['r']:3d} {row['N']:6d} {brute:>6s}  {row['d_GB']}"
              + ("" if row["ok"] else f"  expected {row['expected']}"))
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
