"""Pair a quartic bump and its Heaviside function against test functions."""

import argparse
import math

from lcfield.dist import dirac_bump, dirac_heaviside_product_check, heaviside, pair, pair_derivative

FUNCTIONS = {
    "cos": math.cos,
    "exp": math.exp,
    "gauss": lambda x: math.exp(-x * x),
    "sqrt(2+x)": lambda x: math.sqrt(2 + x),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--at", type=float, default=0.0, help="bump centre")
    ap.add_argument("--schedule", default="2,4,6,8,10,12,14,16")
    args = ap.parse_args()
    schedule = tuple(int(n) for n in args.schedule.split(","))
    r = args.at
    delta = dirac_bump(r)
    H = heaviside(delta)
    print(f"{'function':<11}{'<delta,f>':>14}{'f(r)':>14}{'<H delta,f>':>14}{'-<delta1,f>':>14}{'<delta2,f>':>14}")
    for name, f in FUNCTIONS.items():
        p = pair(delta, f, schedule, expected=f(r))
        hd = dirac_heaviside_product_check(delta, H, f, schedule)
        d1 = pair_derivative(delta, 1, f, schedule)
        d2 = pair_derivative(dirac_bump(r, order=3), 2, f, schedule)
        print(f"{name:<11}{p.limit:>14.10f}{f(r):>14.10f}{hd.limit:>14.10f}{-d1.limit:>14.10f}{d2.limit:>14.10f}")


if __name__ == "__main__":
    main()
