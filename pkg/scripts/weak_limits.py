"""Weak-limit verdicts for the standard regression sequences."""

import argparse
import json

from lcfield.core import LCNumber, add, to_text
from lcfield.sequences import SequenceHandle, weak_limit


def partial_sums():
    cache = [LCNumber()]

    def a(k):
        while len(cache) <= k:
            j = len(cache)
            cache.append(add(cache[-1], LCNumber.monomial(1.0 / j, -j)))
        return cache[k]

    return a


SEQUENCES = {
    "1/n": lambda n: LCNumber.real(1.0 / n),
    "1/(n d) - 1": lambda n: add(LCNumber.monomial(1.0 / n, -1), LCNumber.real(-1.0)),
    "n d": lambda n: LCNumber.monomial(float(n), 1),
    "d^-n / n": lambda n: LCNumber.monomial(1.0 / n, -n),
    "d^-n": lambda n: LCNumber.monomial(1.0, -n),
    "sum_k<=n d^-k / k": partial_sums(),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=256)
    ap.add_argument("--cutoff", type=int, default=8)
    ap.add_argument("--evidence", action="store_true", help="print the evidence record too")
    args = ap.parse_args()
    for name, fn in SEQUENCES.items():
        v = weak_limit(SequenceHandle(fn, name), cutoff_q=args.cutoff, n_max=args.n_max)
        value = to_text(v.value) if v.value is not None else "-"
        flag = " (non-regular)" if v.evidence.get("non_regular") else ""
        print(f"{name:<20} {v.verdict:<10} {value}{flag}")
        if args.evidence:
            print("    " + json.dumps(v.evidence))


if __name__ == "__main__":
    main()
