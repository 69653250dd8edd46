"""Power series over the field: evaluation, term-wise calculus, canonical
extensions of exp/sin/cos, and derivative extraction at real points."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .core import (
    DEFAULT_HORIZON,
    ONE,
    ZERO,
    D,
    LCNumber,
    add,
    coerce,
    horizon_of,
    mul,
    scale,
    std_part,
    to_json,
    from_json,
    from_terms,
    truncate,
)
from .errors import (
    DomainError,
    InsufficientHorizon,
    NonInfinitesimalOffset,
    NotInWeakConvergenceRegion,
)


class Kind(Enum):
    POLYNOMIAL = "polynomial"
    ELEMENTARY = "elementary"  # Maclaurin truncation; infinitesimal offsets only
    ANALYTIC = "analytic"  # real-coefficient series with a known radius


Tail = Callable[[int], float]


@dataclass(frozen=True)
class PowerSeries:
    """sum_i a_i (x - center)^i.

    ``coeffs`` is a finite list of field coefficients.  Infinite series add a
    real coefficient function ``tail``; the i-th coefficient is
    ``coeffs[i] + tail(i)`` with missing entries read as zero.
    """

    center: LCNumber = ZERO
    coeffs: tuple[LCNumber, ...] = ()
    kind: Kind = Kind.POLYNOMIAL
    real_radius: Optional[float] = None
    tail: Optional[Tail] = field(default=None, compare=False, repr=False)
    source: str = ""

    def coefficient(self, i: int) -> LCNumber:
        a = self.coeffs[i] if i < len(self.coeffs) else ZERO
        if self.tail is not None:
            t = self.tail(i)
            if t:
                a = add(a, LCNumber.real(t))
        return a

    @property
    def is_polynomial(self) -> bool:
        return self.kind is Kind.POLYNOMIAL

    @property
    def degree(self) -> int:
        if not self.is_polynomial:
            raise ValueError("degree of an infinite series")
        return len(self.coeffs) - 1

    def __call__(self, x, target_horizon=DEFAULT_HORIZON) -> LCNumber:
        return ps_eval(self, x, target_horizon)


def _strip(coeffs: Sequence[LCNumber]) -> tuple[LCNumber, ...]:
    out = list(coeffs)
    while out and out[-1].is_zero():
        out.pop()
    return tuple(out)


def polynomial(coeffs, center=0) -> PowerSeries:
    """Polynomial with ascending coefficients in powers of (x - center)."""
    return PowerSeries(coerce(center), _strip([coerce(a) for a in coeffs]))


def constant(c) -> PowerSeries:
    return polynomial([c])


X = polynomial([0, 1])


def _exp_tail(i: int) -> float:
    return 1.0 / math.factorial(i)


def _sin_tail(i: int) -> float:
    if i % 2 == 0:
        return 0.0
    return (-1.0 if (i // 2) % 2 else 1.0) / math.factorial(i)


def _cos_tail(i: int) -> float:
    if i % 2:
        return 0.0
    return (-1.0 if (i // 2) % 2 else 1.0) / math.factorial(i)


EXP = PowerSeries(kind=Kind.ELEMENTARY, tail=_exp_tail, source="exp")
SIN = PowerSeries(kind=Kind.ELEMENTARY, tail=_sin_tail, source="sin")
COS = PowerSeries(kind=Kind.ELEMENTARY, tail=_cos_tail, source="cos")


def analytic(tail: Tail, radius: float, center=0, source: str = "") -> PowerSeries:
    """Real-coefficient series with a user-supplied radius of convergence."""
    return PowerSeries(coerce(center), (), Kind.ANALYTIC, float(radius), tail, source)


def geometric() -> PowerSeries:
    return analytic(lambda i: 1.0, 1.0, source="geometric")


# evaluation

NUMERIC_MAX_TERMS = 20000
NUMERIC_RTOL = 1e-17


def _poly_eval(coeffs: Sequence[LCNumber], h: LCNumber) -> LCNumber:
    if not coeffs:
        return ZERO
    total = coeffs[0]
    p = ONE
    for a in coeffs[1:]:
        p = mul(p, h)
        if not a.is_zero():
            total = add(total, mul(a, p))
    return total


poly_eval = _poly_eval


def _max_abs(x: LCNumber) -> float:
    return max((abs(c) for _, c in x.terms), default=0.0)


def ps_eval(s: PowerSeries, x, target_horizon=DEFAULT_HORIZON) -> LCNumber:
    x = coerce(x)
    T = horizon_of(target_horizon)
    h = add(x, -s.center)
    if s.real_radius is not None:
        a = abs(std_part(h))
        if not a < s.real_radius:
            raise NotInWeakConvergenceRegion(
                f"|sh(x - center)| = {a:g} is not below the radius {s.real_radius:g}"
            )
    if s.is_polynomial:
        return _poly_eval(s.coeffs, h)
    if h.is_zero():
        return s.coefficient(0)
    low = h.terms[0][0] if h.terms else h.horizon
    if low > 0:
        return _eval_infinitesimal(s, h, T)
    if s.kind is Kind.ELEMENTARY:
        raise NonInfinitesimalOffset("truncated Maclaurin series need an infinitesimal offset")
    if low < 0:
        raise NotInWeakConvergenceRegion("infinite offset")
    return _eval_numeric(s, h, T)


def _eval_infinitesimal(s: PowerSeries, h: LCNumber, T) -> LCNumber:
    total = truncate(s.coefficient(0), T)
    p = ONE
    i = 0
    while True:
        i += 1
        p = mul(p, h, T)
        if not p.terms:
            return add(total, p)
        a = s.coefficient(i)
        if not a.is_zero():
            total = add(total, mul(a, p, T))


def _eval_numeric(s: PowerSeries, h: LCNumber, T) -> LCNumber:
    # |sh h| < R with an infinitesimal part: every coefficient is an
    # absolutely convergent real series; sum until terms are negligible
    total = truncate(s.coefficient(0), T)
    p = ONE
    quiet = 0
    for i in range(1, NUMERIC_MAX_TERMS):
        p = mul(p, h, T)
        a = s.coefficient(i)
        if a.is_zero():
            continue
        term = mul(a, p, T)
        total = add(total, term)
        if _max_abs(term) <= NUMERIC_RTOL * max(1.0, _max_abs(total)):
            quiet += 1
            if quiet >= 3:
                return total
        else:
            quiet = 0
    raise NotInWeakConvergenceRegion("series did not settle numerically")


# term-wise calculus


def _div_int(x: LCNumber, n: int) -> LCNumber:
    return from_terms(((q, c / n) for q, c in x.terms), x.horizon)


def _mul_int(x: LCNumber, n: int) -> LCNumber:
    return scale(x, n)


def derivative(s: PowerSeries) -> PowerSeries:
    coeffs = _strip([_mul_int(a, i) for i, a in enumerate(s.coeffs)][1:])
    tail = None
    if s.tail is not None:
        t = s.tail
        tail = lambda i: (i + 1) * t(i + 1)  # noqa: E731
    return PowerSeries(s.center, coeffs, s.kind, s.real_radius, tail, s.source and s.source + "'")


def antiderivative(s: PowerSeries) -> PowerSeries:
    """Term-wise antiderivative vanishing at the center."""
    coeffs = _strip([ZERO] + [_div_int(a, i + 1) for i, a in enumerate(s.coeffs)]) if s.coeffs else ()
    tail = None
    if s.tail is not None:
        t = s.tail
        tail = lambda i: t(i - 1) / i if i else 0.0  # noqa: E731
    return PowerSeries(s.center, coeffs, s.kind, s.real_radius, tail, s.source and "int " + s.source)


def definite(s: PowerSeries, lo, hi, target_horizon=DEFAULT_HORIZON) -> LCNumber:
    """F(hi) - F(lo) with F the term-wise antiderivative.

    For polynomials the difference is taken term by term, so symmetric
    endpoints cancel even powers exactly.
    """
    lo, hi = coerce(lo), coerce(hi)
    F = antiderivative(s)
    if not F.is_polynomial:
        return add(ps_eval(F, hi, target_horizon), -ps_eval(F, lo, target_horizon))
    a = add(lo, -F.center)
    b = add(hi, -F.center)
    total = ZERO
    pa, pb = ONE, ONE
    for i, c in enumerate(F.coeffs):
        if i:
            pa, pb = mul(pa, a), mul(pb, b)
        if c.is_zero():
            continue
        total = add(total, mul(c, add(pb, -pa)))
    return total


def _abs(x: LCNumber) -> LCNumber:
    return LCNumber(tuple((q, abs(c)) for q, c in x.terms), x.horizon)


def definite_with_bound(s: PowerSeries, lo, hi) -> tuple[LCNumber, LCNumber]:
    """Polynomial definite integral plus a per-exponent magnitude bound.

    The bound sums the absolute values of every contribution, so rounding in
    the value at exponent q is at most a few ulps of bound[q].
    """
    if not s.is_polynomial:
        raise ValueError("magnitude bounds need a polynomial")
    lo, hi = coerce(lo), coerce(hi)
    F = antiderivative(s)
    a = add(lo, -F.center)
    b = add(hi, -F.center)
    total, bound = ZERO, ZERO
    pa, pb = ONE, ONE
    for i, c in enumerate(F.coeffs):
        if i:
            pa, pb = mul(pa, a), mul(pb, b)
        if c.is_zero():
            continue
        total = add(total, mul(c, add(pb, -pa)))
        bound = add(bound, mul(_abs(c), add(_abs(pb), _abs(pa))))
    return total, bound


# polynomial algebra


def _binom(n: int, k: int) -> int:
    return math.comb(n, k)


def recenter(s: PowerSeries, center) -> PowerSeries:
    """Re-expand a polynomial around a new center (Taylor shift)."""
    center = coerce(center)
    if s.center == center:
        return s
    if not s.is_polynomial:
        raise ValueError("only polynomials can be re-centered")
    delta = add(center, -s.center)
    n = len(s.coeffs)
    powers = [ONE]
    for _ in range(1, n):
        powers.append(mul(powers[-1], delta))
    out = []
    for j in range(n):
        b = ZERO
        for i in range(j, n):
            a = s.coeffs[i]
            if a.is_zero():
                continue
            b = add(b, scale(mul(a, powers[i - j]), _binom(i, j)))
        out.append(b)
    return PowerSeries(center, _strip(out))


def _align(s: PowerSeries, t: PowerSeries) -> tuple[PowerSeries, PowerSeries]:
    if s.center == t.center:
        return s, t
    if t.is_polynomial:
        return s, recenter(t, s.center)
    if s.is_polynomial:
        return recenter(s, t.center), t
    raise ValueError("cannot combine infinite series with different centers")


def _combine_kind(s: PowerSeries, t: PowerSeries) -> Kind:
    kinds = {s.kind, t.kind}
    if Kind.ELEMENTARY in kinds:
        return Kind.ELEMENTARY
    if Kind.ANALYTIC in kinds:
        return Kind.ANALYTIC
    return Kind.POLYNOMIAL


def _min_radius(s: PowerSeries, t: PowerSeries) -> Optional[float]:
    radii = [r for r in (s.real_radius, t.real_radius) if r is not None]
    return min(radii) if radii else None


def ps_add(s: PowerSeries, t: PowerSeries) -> PowerSeries:
    s, t = _align(s, t)
    n = max(len(s.coeffs), len(t.coeffs))
    coeffs = []
    for i in range(n):
        a = s.coeffs[i] if i < len(s.coeffs) else ZERO
        b = t.coeffs[i] if i < len(t.coeffs) else ZERO
        coeffs.append(add(a, b))
    tail = None
    if s.tail is not None and t.tail is not None:
        ts, tt = s.tail, t.tail
        tail = lambda i: ts(i) + tt(i)  # noqa: E731
    else:
        tail = s.tail or t.tail
    return PowerSeries(s.center, _strip(coeffs), _combine_kind(s, t), _min_radius(s, t), tail)


def ps_scale(s: PowerSeries, c) -> PowerSeries:
    c = coerce(c)
    coeffs = _strip([mul(a, c) for a in s.coeffs])
    tail = None
    if s.tail is not None:
        if not c.is_real():
            raise ValueError("infinite series can only be scaled by reals")
        r, t = c[0], s.tail
        tail = lambda i: r * t(i)  # noqa: E731
    return PowerSeries(s.center, coeffs, s.kind, s.real_radius, tail, s.source)


def ps_neg(s: PowerSeries) -> PowerSeries:
    return ps_scale(s, -1.0)


def ps_sub(s: PowerSeries, t: PowerSeries) -> PowerSeries:
    return ps_add(s, ps_neg(t))


def ps_mul(s: PowerSeries, t: PowerSeries) -> PowerSeries:
    if not (s.is_polynomial and t.is_polynomial):
        raise ValueError("products are defined for polynomial pieces only")
    s, t = _align(s, t)
    if not s.coeffs or not t.coeffs:
        return PowerSeries(s.center, ())
    out = [ZERO] * (len(s.coeffs) + len(t.coeffs) - 1)
    for i, a in enumerate(s.coeffs):
        if a.is_zero():
            continue
        for j, b in enumerate(t.coeffs):
            if not b.is_zero():
                out[i + j] = add(out[i + j], mul(a, b))
    return PowerSeries(s.center, _strip(out))


def ps_power(s: PowerSeries, n: int) -> PowerSeries:
    result = PowerSeries(s.center, (ONE,))
    for _ in range(n):
        result = ps_mul(result, s)
    return result


def ps_is_zero(s: PowerSeries, probe: int = 64) -> bool:
    if any(not a.is_zero() for a in s.coeffs):
        return False
    if s.tail is None:
        return True
    return all(s.tail(i) == 0 for i in range(probe))


def series_to_json(s: PowerSeries) -> dict:
    if not s.is_polynomial:
        raise ValueError("only polynomial series have a finite JSON form")
    return {
        "center": to_json(s.center),
        "coeffs": [to_json(a) for a in s.coeffs],
        "radius": s.real_radius,
    }


def series_from_json(obj: dict) -> PowerSeries:
    return PowerSeries(
        from_json(obj["center"]),
        _strip([from_json(a) for a in obj["coeffs"]]),
        real_radius=obj.get("radius"),
    )


# canonical extensions of elementary functions


def elementary(name: str, x, target_horizon=DEFAULT_HORIZON) -> LCNumber:
    x = coerce(x)
    T = horizon_of(target_horizon)
    if x.terms and x.terms[0][0] < 0:
        raise DomainError(f"{name} is only extended to finite arguments")
    r = std_part(x)
    eps = add(x, -LCNumber.real(r))
    if name == "exp":
        if eps.is_zero():
            return LCNumber.real(math.exp(r))
        return scale(ps_eval(EXP, eps, T), math.exp(r))
    if name not in ("sin", "cos"):
        raise ValueError(f"unknown elementary function {name!r}")
    sr, cr = math.sin(r), math.cos(r)
    if eps.is_zero():
        return LCNumber.real(sr if name == "sin" else cr)
    se, ce = ps_eval(SIN, eps, T), ps_eval(COS, eps, T)
    if name == "sin":
        # sin(r + e) = sin r cos e + cos r sin e
        return add(scale(ce, sr), scale(se, cr))
    # cos(r + e) = cos r cos e - sin r sin e
    return add(scale(ce, cr), scale(se, -sr))


def exp(x, target_horizon=DEFAULT_HORIZON) -> LCNumber:
    return elementary("exp", x, target_horizon)


def sin(x, target_horizon=DEFAULT_HORIZON) -> LCNumber:
    return elementary("sin", x, target_horizon)


def cos(x, target_horizon=DEFAULT_HORIZON) -> LCNumber:
    return elementary("cos", x, target_horizon)


# derivatives of real functions as coefficients of f(r + d)

MAX_RETRIES = 6


def _as_evaluator(f, var: str):
    if callable(f) and not isinstance(f, str):
        if hasattr(f, "evaluate"):
            return lambda x, T: f.evaluate({var: x}, T)
        return lambda x, T: coerce(f(x, T)) if _takes_horizon(f) else coerce(f(x))
    from .parse import eval_expr, parse

    expr = parse(f) if isinstance(f, str) else f
    return lambda x, T: eval_expr(expr, {var: x}, T)


HORIZON_PARAM_NAMES = ("T", "horizon", "target_horizon")


def _takes_horizon(f) -> bool:
    import inspect

    try:
        params = inspect.signature(f).parameters
    except (TypeError, ValueError):
        return False
    ps = [p for p in params.values() if p.kind in (p.POSITIONAL_ONLY, p.POSITIONAL_OR_KEYWORD)]
    if len(ps) < 2:
        return False
    # a second parameter with a default is a horizon only if it is named like one
    return ps[1].default is ps[1].empty or ps[1].name in HORIZON_PARAM_NAMES


def derivatives_at(f, r: float, k_max: int, var: str = "x", horizon=None) -> list[float]:
    """[f(r), f'(r), ..., f^(k_max)(r)] read off f(r + d).

    ``f`` may be expression text, a parsed expression, or a callable on
    LCNumbers.
    """
    evaluate = _as_evaluator(f, var)
    want = Fraction(k_max + 1)
    T = horizon_of(horizon) if horizon is not None else want
    x = add(LCNumber.real(float(r)), D)
    for _ in range(MAX_RETRIES):
        y = coerce(evaluate(x, T))
        if y.terms and y.terms[0][0] < 0:
            raise DomainError(f"pole at {r}")
        if y.horizon >= want:
            break
        T = T + (want - y.horizon) + 1
    else:
        raise InsufficientHorizon(f"could not resolve derivatives to order {k_max}")
    for q, _ in y.terms:
        if q < want and q.denominator != 1:
            raise DomainError(f"not differentiable at {r}: term d^({q})")
    return [math.factorial(i) * y[i] for i in range(k_max + 1)]
