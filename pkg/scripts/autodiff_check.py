"""Compare derivatives read off f(r + d) with symbolic derivatives."""

import argparse
import time

import sympy as sp

from lcfield.series import derivatives_at

EXPRESSIONS = [
    "exp(sin(x))",
    "cos(x)^3/(2 + x^2)",
    "sin(x*exp(x)) - x^2",
    "exp(cos(x) - 1)/(1 + x^2)",
]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--order", type=int, default=6)
    ap.add_argument("--at", type=float, nargs="+", default=[-0.7, 0.0, 0.4, 1.3])
    args = ap.parse_args()
    x = sp.Symbol("x")
    worst = 0.0
    t0 = time.perf_counter()
    for src in EXPRESSIONS:
        e = sp.sympify(src.replace("^", "**"))
        ders = [e]
        for _ in range(args.order):
            ders.append(sp.diff(ders[-1], x))
        for r in args.at:
            got = derivatives_at(src, r, args.order)
            want = [float(d.subs(x, r)) for d in ders]
            err = max(abs(g - w) / max(1.0, abs(w)) for g, w in zip(got, want))
            worst = max(worst, err)
            print(f"{src:<28} x={r:<5} max rel err {err:.1e}")
    print(f"worst {worst:.1e} in {time.perf_counter() - t0:.2f} s")


if __name__ == "__main__":
    main()
