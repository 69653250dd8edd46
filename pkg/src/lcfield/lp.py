"""L^p norms of piecewise polynomials and the Hoelder inequality."""

from __future__ import annotations

from fractions import Fraction

from .core import (
    DEFAULT_HORIZON,
    INF,
    ZERO,
    LCNumber,
    add,
    cmp,
    div,
    horizon_of,
    lc_max,
    mul,
    nth_root,
    shift,
    sign,
    std_part,
    truncate,
    valuation,
)
from .errors import IndeterminateOrder, InsufficientHorizon, NoInfimum, SignUndecidable
from .measure import PiecewiseSimple, as_set, intersect_intervals, pw_product
from .roots import cauchy_bound, critical_points, multiplicity, peval, sign_change_roots, trim
from .series import PowerSeries, definite, poly_eval as _poly_eval, ps_power, recenter

__all__ = ["lp_norm", "holder_defect", "nth_root", "sign_segments", "is_inf"]

NEWTON_MAX = 60
NOISE_RTOL = 1e-13
EDGE_PAD = 1e-9


def is_inf(p) -> bool:
    return p == INF or p == "inf"


def _leading_level(coeffs: list[LCNumber]) -> tuple[Fraction, list[float]]:
    """Smallest valuation among coefficients and the real polynomial at it."""
    q = min(valuation(b) for b in coeffs if b.terms)
    L = []
    for b in coeffs:
        if not b.horizon > q:
            raise InsufficientHorizon("piece coefficient is not known at the leading order")
        L.append(b[q])
    return q, L


def _monomial_scaled(coeffs: list[LCNumber], q: Fraction) -> bool:
    return all(b.is_zero() or (b.exact and len(b.terms) == 1 and b.terms[0][0] == q) for b in coeffs)


def _newton_lift(g: list[LCNumber], r0: float, T) -> LCNumber:
    """Lift a simple real root of the leading polynomial of g to a root of g."""
    dg = [mul(b, LCNumber.real(i)) for i, b in enumerate(g)][1:]
    rho = LCNumber.real(r0)
    for _ in range(NEWTON_MAX):
        val = _poly_eval(g, rho)
        der = _poly_eval(dg, rho)
        step = div(val, der, T)
        size = max([1.0] + [abs(c) for _, c in rho.terms])
        step = LCNumber(
            tuple((q, c) for q, c in step.terms if abs(c) > NOISE_RTOL * size), step.horizon
        )
        if not step.terms:
            break
        rho = add(rho, -step)
    return rho if rho.exact else truncate(rho, T)


def sign_segments(s: PowerSeries, lo: LCNumber, hi: LCNumber, target_horizon=DEFAULT_HORIZON):
    """Split [lo, hi] where the polynomial s changes sign.

    Returns a list of (a, b, sign) covering [lo, hi] in order.
    """
    T = horizon_of(target_horizon)
    if not s.is_polynomial:
        raise SignUndecidable("sign analysis needs a polynomial piece")
    f = recenter(s, lo)
    width = add(hi, -lo)
    sigma = valuation(width)
    W = shift(width, -sigma)  # u ranges over [0, W], W finite and not infinitesimal
    g = [shift(b, sigma * i) for i, b in enumerate(f.coeffs)]
    if not any(b.terms for b in g):
        return [(lo, hi, 0)]
    q, L = _leading_level(g)
    Lc = trim(L)
    mono = _monomial_scaled(g, q)
    U = std_part(W)
    pad = EDGE_PAD * (1.0 + U)
    a, b = -pad, U + pad
    if len(Lc) > 1:
        B = cauchy_bound(Lc)
        a, b = max(a, -B - 1.0), min(b, B + 1.0)
    crossings = sign_change_roots(Lc, a, b)
    if not mono:
        for c0 in critical_points(Lc, a, b):
            if multiplicity(Lc, c0) >= 2:
                raise SignUndecidable(f"leading polynomial touches zero at {c0:.6g}")
    cuts = []
    for r0 in crossings:
        if multiplicity(Lc, r0) == 1:
            rho = _newton_lift(g, r0, T)
        elif mono:
            rho = LCNumber.real(r0)
        else:
            raise SignUndecidable(f"multiple root of the leading polynomial near {r0:.6g}")
        try:
            inside = cmp(rho, ZERO) > 0 and cmp(rho, W) < 0
        except IndeterminateOrder:
            # root agrees with an endpoint up to the horizon; the sliver it
            # would cut off is invisible below the horizon
            inside = False
        if inside:
            cuts.append(rho)
    pts = [ZERO] + cuts + [W]
    out = []
    for u0, u1 in zip(pts, pts[1:]):
        try:
            sg = _segment_sign(g, u0, u1)
        except IndeterminateOrder as exc:
            raise SignUndecidable(str(exc)) from exc
        x0 = add(lo, shift(u0, sigma)) if u0 is not pts[0] else lo
        x1 = add(lo, shift(u1, sigma)) if u1 is not pts[-1] else hi
        out.append((x0, x1, sg))
    return out


def _segment_sign(g: list[LCNumber], u0: LCNumber, u1: LCNumber) -> int:
    """Sign of g inside (u0, u1), which holds no sign change.

    A probe can land on a touching root, so up to deg + 1 distinct interior
    points are tried; a nonzero polynomial cannot vanish at all of them.
    """
    width = add(u1, -u0)
    n = len(g)
    for t in [0.5] + [(k + 1) / (n + 2) for k in range(n)]:
        sg = sign(_poly_eval(g, add(u0, mul(width, LCNumber.real(t)))))
        if sg:
            return sg
    return 0


def _pieces_in(f: PiecewiseSimple, A):
    for iv, s in f.pieces:
        for a in as_set(A):
            k = intersect_intervals(iv, a)
            if k is not None and not k.is_degenerate:
                yield k, s


def lp_norm(f: PiecewiseSimple, A, p, target_horizon=DEFAULT_HORIZON) -> LCNumber:
    T = horizon_of(target_horizon)
    if is_inf(p):
        return _sup_norm(f, A)
    if int(p) != p or p < 1:
        raise ValueError("p must be a positive integer or inf")
    p = int(p)
    total = ZERO
    for k, s in _pieces_in(f, A):
        if not s.is_polynomial:
            raise SignUndecidable("finite-p norms need polynomial pieces")
        sp = ps_power(s, p)
        if p % 2 == 0:
            total = add(total, definite(sp, k.lo, k.hi, T))
            continue
        for a, b, sg in sign_segments(s, k.lo, k.hi, T):
            if sg:
                part = definite(sp, a, b, T)
                total = add(total, part if sg > 0 else -part)
    if not total.terms and total.exact:
        return ZERO
    return nth_root(total, p, T)


def _sup_norm(f: PiecewiseSimple, A) -> LCNumber:
    best = ZERO
    for k, s in _pieces_in(f, A):
        if not s.is_polynomial:
            raise NoInfimum("sup norm needs polynomial pieces")
        if not s.center.is_real() or not all(c.is_real() for c in s.coeffs):
            raise NoInfimum("mixed-order coefficients: the set of bounds has no infimum")
        c = [a[0] if a.terms else 0.0 for a in s.coeffs]
        x0 = s.center[0] if s.center.terms else 0.0
        cand = [abs(_poly_eval(s.coeffs, add(k.lo, -s.center))), abs(_poly_eval(s.coeffs, add(k.hi, -s.center)))]
        lo_r, hi_r = std_part(k.lo) - x0, std_part(k.hi) - x0
        for r in critical_points(c, lo_r, hi_r):
            x = LCNumber.real(r + x0)
            if cmp(k.lo, x) < 0 and cmp(x, k.hi) < 0:
                cand.append(LCNumber.real(abs(peval(c, r))))
        best = lc_max([best] + cand)
    return best


def holder_defect(f: PiecewiseSimple, g: PiecewiseSimple, A, p, q, target_horizon=DEFAULT_HORIZON) -> LCNumber:
    """||f||_p ||g||_q - ||fg||_1 for the integer conjugate pairs."""
    pair = ("inf" if is_inf(p) else int(p), "inf" if is_inf(q) else int(q))
    if pair not in ((1, "inf"), ("inf", 1), (2, 2)):
        raise ValueError(f"unsupported exponent pair {pair}")
    fp = lp_norm(f, A, p, target_horizon)
    gq = lp_norm(g, A, q, target_horizon)
    fg = lp_norm(pw_product(f, g), A, 1, target_horizon)
    return add(mul(fp, gq), -fg)
