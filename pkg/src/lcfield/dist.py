"""Dirac-like functions, the Heaviside function as their antiderivative,
and pairings against real test functions.

The canonical bump of order m on [r - h, r + h] is

    delta(x) = c_m / h * (1 - u^2)^m,   u = (x - r) / h,
    c_m = (2m + 1)! / (2^(2m+1) (m!)^2),

which is C^(m-1) across the seams and integrates to 1 exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .approx import RealPolynomial, as_handle, cheb_approx, ext_polynomial
from .core import (
    DEFAULT_HORIZON,
    ONE,
    ZERO,
    LCNumber,
    add,
    cmp,
    coerce,
    inv,
    mul,
    std_part,
    strip_noise,
    valuation,
)
from .errors import InsufficientSmoothness, NotInfinitesimal, VerificationError
from .measure import (
    PiecewiseSimple,
    closed,
    half_open,
    Interval,
    integrate_with_bound,
    piecewise,
    pw_derivative,
    pw_power,
    pw_product,
    pw_sub,
)
from .series import constant, polynomial

DEFAULT_SCHEDULE = (2, 4, 6, 8, 10, 12, 14, 16)
PAIR_TOL = 1e-6
NOISE_RTOL = 1e-12
SANDWICH_RTOL = 1e-9
INTEGRAL_TOL = 1e-12


def bump_normalizer(m: int) -> Fraction:
    """c_m with c_m * integral of (1 - u^2)^m over [-1, 1] = 1."""
    return Fraction(math.factorial(2 * m + 1), 2 ** (2 * m + 1) * math.factorial(m) ** 2)


@dataclass(frozen=True)
class DiracLike:
    body: PiecewiseSimple
    center: LCNumber
    half_width: LCNumber
    order: int = 2  # m in (1 - u^2)^m

    @property
    def smoothness(self) -> int:
        """Number of continuous derivatives across the seams."""
        return self.order - 1

    @property
    def support(self) -> Interval:
        return closed(add(self.center, -self.half_width), add(self.center, self.half_width))


@dataclass(frozen=True)
class HeavisideFn:
    body: PiecewiseSimple
    source: DiracLike


def _powers(x: LCNumber, n: int) -> list[LCNumber]:
    out = [ONE]
    for _ in range(n):
        out.append(mul(out[-1], x))
    return out


def _check_unit_mass(body: PiecewiseSimple, support: Interval):
    total, bound = integrate_with_bound(body, support)
    total = strip_noise(total, bound, NOISE_RTOL)
    defect = add(total, -ONE)
    if any(abs(c) > INTEGRAL_TOL for _, c in defect.terms):
        raise VerificationError(f"bump integral is {total}, not 1")


def dirac_bump(r=0, h=None, order: int = 2, target_horizon=DEFAULT_HORIZON) -> DiracLike:
    """Canonical Dirac-like bump centred at r with infinitesimal half-width h."""
    r = coerce(r)
    h = coerce(h) if h is not None else LCNumber.monomial(1.0, 1)
    if order < 1:
        raise ValueError("bump order must be at least 1")
    if not h.terms or cmp(h, ZERO) <= 0 or not valuation(h) > 0:
        raise NotInfinitesimal(f"half-width {h} is not a positive infinitesimal")
    ih = inv(h, target_horizon)
    ihp = _powers(ih, 2 * order + 1)
    c = float(bump_normalizer(order))
    coeffs = [ZERO] * (2 * order + 1)
    for j in range(order + 1):
        a = c * math.comb(order, j) * (-1) ** j
        coeffs[2 * j] = mul(LCNumber.real(a), ihp[2 * j + 1])
    s = polynomial(coeffs, center=r)
    support = closed(add(r, -h), add(r, h))
    body = piecewise([(support, s)])
    _check_unit_mass(body, support)
    return DiracLike(body, r, h, order)


def heaviside(delta: DiracLike, lo=-1, hi=1) -> HeavisideFn:
    """0 left of the support, the bump's antiderivative on it, 1 to the right."""
    lo, hi = coerce(lo), coerce(hi)
    r, h = delta.center, delta.half_width
    left, right = add(r, -h), add(r, h)
    if not (cmp(lo, left) < 0 and cmp(right, hi) < 0):
        raise ValueError(f"support [{left}, {right}] must lie inside ({lo}, {hi})")
    (_, s), = delta.body.pieces
    coeffs = [LCNumber.real(0.5)]
    for i, c in enumerate(s.coeffs):
        coeffs.append(mul(c, LCNumber.real(1.0 / (i + 1))))
    ramp = polynomial(coeffs, center=r)
    body = piecewise(
        [
            (half_open(lo, left), constant(0)),
            (closed(left, right), ramp),
            (Interval(right, hi, False, True), constant(1)),
        ]
    )
    return HeavisideFn(body, delta)


# pairings


@dataclass(frozen=True)
class PairingReport:
    degrees: tuple[int, ...]
    values: tuple[float, ...]
    limit: float
    stabilized: bool
    sandwich: tuple[bool, ...] = ()
    expected: Optional[float] = None
    tol: float = PAIR_TOL

    @property
    def defect(self) -> Optional[float]:
        return None if self.expected is None else abs(self.limit - self.expected)

    @property
    def ok(self) -> bool:
        d = self.defect
        return self.stabilized and all(self.sandwich) and (d is None or d <= self.tol)

    def to_json(self) -> dict:
        out = {
            "degrees": list(self.degrees),
            "values": list(self.values),
            "limit": self.limit,
            "stabilized": self.stabilized,
            "sandwich": list(self.sandwich),
        }
        if self.expected is not None:
            out["expected"] = self.expected
            out["defect"] = self.defect
        return out


def _pairing_value(g: PiecewiseSimple, P: RealPolynomial, a, b) -> float:
    total, bound = integrate_with_bound(pw_product(g, ext_polynomial(P, (a, b))), closed(a, b))
    return std_part(strip_noise(total, bound, NOISE_RTOL))


def _stabilized(values: Sequence[float], tol: float, window: int = 3) -> bool:
    if len(values) < window:
        return False
    tail = values[-window:]
    return max(tail) - min(tail) <= tol


def _report(degrees, values, sandwich, expected, tol) -> PairingReport:
    return PairingReport(
        tuple(degrees),
        tuple(values),
        values[-1],
        _stabilized(values, tol),
        tuple(sandwich),
        expected,
        tol,
    )


def _sandwich_ok(delta: DiracLike, p: RealPolynomial, value: float) -> bool:
    """The value lies between min and max of p on the real points of the support."""
    r = delta.center
    if r.is_real() or not r.terms:
        # an infinitesimal support holds exactly one real point
        x0 = std_part(r)
        v = float(p(x0))
        return abs(value - v) <= SANDWICH_RTOL * max(1.0, abs(v))
    return True


def pair(
    g,
    f,
    schedule: Sequence[int] = DEFAULT_SCHEDULE,
    a: float = -1.0,
    b: float = 1.0,
    tol: float = PAIR_TOL,
    expected: Optional[float] = None,
) -> PairingReport:
    """sh of the integral of g against the extension of Chebyshev approximants of f."""
    body = g.body if isinstance(g, (DiracLike, HeavisideFn)) else g
    fh = as_handle(f, (a, b))
    values, sandwich = [], []
    for n in schedule:
        p = cheb_approx(fh, n, (a, b))
        v = _pairing_value(body, p, a, b)
        values.append(v)
        if isinstance(g, DiracLike):
            sandwich.append(_sandwich_ok(g, p, v))
    return _report(schedule, values, sandwich, expected, tol)


def dirac_heaviside_product_check(
    delta: DiracLike,
    H: HeavisideFn,
    f,
    schedule: Sequence[int] = DEFAULT_SCHEDULE,
    a: float = -1.0,
    b: float = 1.0,
    tol: float = PAIR_TOL,
) -> PairingReport:
    """Pair H * delta against f; the limit should be f(r) / 2."""
    fh = as_handle(f, (a, b))
    expected = 0.5 * fh(std_part(delta.center))
    return pair(pw_product(H.body, delta.body), fh, schedule, a, b, tol, expected)


def moment_identity(delta: DiracLike, H: HeavisideFn, m: int, n: int) -> LCNumber:
    """Integral of (H^m - H^n) * delta over the support."""
    if m < 0 or n < 0:
        raise ValueError("moments need non-negative integers")
    g = pw_product(pw_sub(pw_power(H.body, m), pw_power(H.body, n)), delta.body)
    total, bound = integrate_with_bound(g, delta.support)
    return strip_noise(total, bound, NOISE_RTOL)


def moment_expected(m: int, n: int) -> Fraction:
    return Fraction(1, m + 1) - Fraction(1, n + 1)


def pair_derivative(
    delta: DiracLike,
    k: int,
    f,
    schedule: Sequence[int] = DEFAULT_SCHEDULE,
    a: float = -1.0,
    b: float = 1.0,
    tol: float = PAIR_TOL,
) -> PairingReport:
    """Pair the k-th derivative of the bump against P_n with P_n^(k) = p_n ~ f.

    The expected limit is (-1)^k f(r).
    """
    if k < 0:
        raise ValueError("derivative order must be non-negative")
    if delta.smoothness < k:
        raise InsufficientSmoothness(
            f"bump of order {delta.order} is C^{delta.smoothness} at the seams; "
            f"pairing a derivative of order {k} needs bump order {k + 1}"
        )
    fh = as_handle(f, (a, b))
    body = delta.body
    for _ in range(k):
        body = pw_derivative(body)
    expected = (-1) ** k * fh(std_part(delta.center))
    values = []
    for n in schedule:
        p = cheb_approx(fh, n, (a, b))
        values.append(_pairing_value(body, p.antiderivative(k), a, b))
    return _report(schedule, values, (), expected, tol)
