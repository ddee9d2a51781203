#!/usr/bin/env python3
"""Print the four transformation matrices at a given rank and level, and
check the mixed-kind symmetry and unitarity-like column norms numerically.

Usage: python scripts/smatrix_tables.py --rank 1 --level 2
"""

import argparse
import sys

from kacmod.modular import smatrix, smatrix_entry
from kacmod.roots import enumerate_dominant, phi_involution


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--rank", type=int, default=1)
    ap.add_argument("--level", type=int, default=2)
    args = ap.parse_args()
    l, k = args.rank, args.level

    for kind in ("aI", "aI_II", "aII_I", "aII"):
        sm = smatrix(kind, k, l)
        print(f"\n{kind}  (rank {l}, level {k}, dim {len(sm.index)})")
        for row in sm.entries:
            print("  " + "  ".join(f"{e.real:+.6f}{e.imag:+.6f}i" for e in row))

    lams = enumerate_dominant(l, k)
    worst = 0.0
    for lam in lams:
        for mu in lams:
            lhs = smatrix_entry("aI_II", k, phi_involution(lam), mu)
            rhs = smatrix_entry("aII_I", k, phi_involution(mu), lam)
            worst = max(worst, abs(lhs - rhs))
    print(f"\nmixed-kind symmetry residual: {worst:.3e}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
