"""Table of the moment identity: integral of (H^m - H^n) delta against 1/(m+1) - 1/(n+1)."""

import argparse

from lcfield.core import std_part
from lcfield.dist import dirac_bump, heaviside, moment_expected, moment_identity


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max", type=int, default=8, help="largest m and n")
    args = ap.parse_args()
    delta = dirac_bump(0)
    H = heaviside(delta)
    worst = 0.0
    print(f"{'m':>3}{'n':>3}{'computed':>22}{'expected':>10}{'defect':>10}")
    for m in range(args.max + 1):
        for n in range(m + 1, args.max + 1):
            got = std_part(moment_identity(delta, H, m, n))
            want = moment_expected(m, n)
            err = abs(got - float(want))
            worst = max(worst, err)
            print(f"{m:>3}{n:>3}{got:>22.17f}{str(want):>10}{err:>10.1e}")
    print(f"max defect {worst:.2e}")


if __name__ == "__main__":
    main()
