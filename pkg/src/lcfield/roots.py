"""Real root isolation for real polynomials by bisection on monotone pieces.

Between consecutive sign changes of p' the polynomial is monotone, so each
such segment holds at most one sign change of p; recursion on the degree
gives every sign-changing root.
"""

from __future__ import annotations

import math
from typing import Sequence

BISECT_STEPS = 200


def trim(c: Sequence[float]) -> list[float]:
    c = [float(v) for v in c]
    while c and c[-1] == 0:
        c.pop()
    return c


def peval(c: Sequence[float], x: float) -> float:
    acc = 0.0
    for v in reversed(c):
        acc = acc * x + v
    return acc


def pderiv(c: Sequence[float]) -> list[float]:
    return [i * c[i] for i in range(1, len(c))]


def cauchy_bound(c: Sequence[float]) -> float:
    c = trim(c)
    if len(c) < 2:
        return 0.0
    lead = abs(c[-1])
    return 1.0 + max(abs(v) / lead for v in c[:-1])


def _bisect(c, lo: float, hi: float, flo: float) -> float:
    for _ in range(BISECT_STEPS):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fm = peval(c, mid)
        if fm == 0:
            return mid
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def sign_change_roots(c: Sequence[float], a: float, b: float) -> list[float]:
    """Points in (a, b) where the polynomial changes sign, ascending."""
    c = trim(c)
    if len(c) < 2 or not a < b:
        return []
    if len(c) == 2:
        r = -c[0] / c[1]
        return [r] if a < r < b else []
    pts = [a] + sign_change_roots(pderiv(c), a, b) + [b]
    vals = [peval(c, x) for x in pts]
    out = []
    for i in range(len(pts) - 1):
        fu, fv = vals[i], vals[i + 1]
        if fu * fv < 0:
            out.append(_bisect(c, pts[i], pts[i + 1], fu))
        elif fv == 0 and 0 < i + 1 < len(pts) - 1:
            # exact zero at a split point: a crossing only if the sides differ
            left = next((v for v in reversed(vals[: i + 1]) if v), 0.0)
            right = next((v for v in vals[i + 2 :] if v), 0.0)
            if left * right < 0:
                out.append(pts[i + 1])
    return out


def critical_points(c: Sequence[float], a: float, b: float) -> list[float]:
    """Local extrema of the polynomial inside (a, b)."""
    return sign_change_roots(pderiv(trim(c)), a, b)


def multiplicity(c: Sequence[float], r: float, rtol: float = 1e-7) -> int:
    """Numerical multiplicity of r as a root: first derivative order that is
    clearly nonzero relative to the coefficient scale."""
    c = trim(c)
    scale = max((abs(v) for v in c), default=0.0) * max(1.0, abs(r)) ** len(c)
    k = 0
    cur = c
    while cur:
        val = peval(cur, r) / math.factorial(k)
        if abs(val) > rtol * scale:
            return k
        cur = pderiv(cur)
        k += 1
    return k
