"""Containment sweep for uniform fat schemes t*S in the plane.

For every m <= MMAX, r <= RMAX with m/r > (t+1)/t, decide
(I^(t))^(m) ⊆ (I^(t))^r and print one CSV row with the wall time.

    python3 scripts/sweep_uniform_fat.py [--method groebner|oracle|both]
"""

import argparse
import csv
import sys
import time
from fractions import Fraction

from fatpoints import library
from fatpoints.containment import symbolic_containment

SETS = ("triangle", "xyxmyz.points", "generic4.points")


def pairs(t, mmax=6, rmax=3):
    for r in range(1, rmax + 1):
        for m in range(1, mmax + 1):
            if Fraction(m, r) > Fraction(t + 1, t):
                yield m, r


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--method", default="groebner")
    ap.add_argument("--sets", nargs="*", default=SETS)
    ap.add_argument("--t", nargs="*", type=int, default=(2, 3))
    args = ap.parse_args()
    fixtures = {S.name: S for S in library.point_fixtures()}
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["scheme", "t", "m", "r", "verdict", "seconds"])
    for name in args.sets:
        for t in args.t:
            fat = fixtures[name].scaled(t)
            for m, r in pairs(t):
                start = time.perf_counter()
                rep = symbolic_containment(fat, m, r, method=args.method)
                w.writerow([name, t, m, r, rep.verdict, f"{time.perf_counter() - start:.2f}"])
                sys.stdout.flush()


if __name__ == "__main__":
    main()
