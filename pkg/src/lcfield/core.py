"""The Levi-Civita field with precision-tracked finite representations.

A number is a finite, strictly ascending list of (exponent, coefficient)
terms meaning ``sum c * d**q``, plus a horizon: every coefficient at an
exponent below the horizon is known exactly, nothing is known at or above
it.  Exact numbers carry horizon ``inf``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Union

from .errors import (
    IndeterminateOrder,
    InsufficientHorizon,
    NonPositive,
    VerificationError,
)

INF = math.inf
DEFAULT_HORIZON = Fraction(12)
VERIFY_RTOL = 1e-9
NEWTON_STEPS = 3
NEWTON_RTOL = 1e-11

Horizon = Union[Fraction, float]


def exponent(q) -> Fraction:
    """Coerce ints, Fractions and 'p/q' strings to an exact exponent."""
    if isinstance(q, Fraction):
        return q
    if isinstance(q, float):
        if not q.is_integer():
            raise TypeError(f"exponent must be rational, got float {q!r}")
        return Fraction(int(q))
    return Fraction(q)


def horizon_of(h) -> Horizon:
    if h is None or h == INF or h == "inf":
        return INF
    return exponent(h)


def _fmt_exp(q: Fraction) -> str:
    return str(q)


def _fmt_horizon(h: Horizon) -> str:
    return "inf" if h == INF else _fmt_exp(h)


@dataclass(frozen=True)
class LCNumber:
    terms: tuple[tuple[Fraction, float], ...] = ()
    horizon: Horizon = INF

    def __post_init__(self):
        prev = None
        for q, c in self.terms:
            if prev is not None and not q > prev:
                raise ValueError("terms must be strictly ascending")
            if c == 0:
                raise ValueError(f"zero coefficient at exponent {q}")
            if not math.isfinite(c):
                raise OverflowError(f"coefficient {c!r} at exponent {q} is not finite")
            if not q < self.horizon:
                raise ValueError("term at or beyond the horizon")
            prev = q

    # construction

    @classmethod
    def from_dict(cls, coeffs: dict, horizon=INF, floor: float = 0.0) -> "LCNumber":
        h = horizon_of(horizon)
        items = []
        for q, c in coeffs.items():
            q = exponent(q)
            c = float(c)
            if q < h and c != 0 and abs(c) >= floor:
                items.append((q, c))
        items.sort(key=lambda t: t[0])
        return cls(tuple(items), h)

    @classmethod
    def monomial(cls, c: float, q=0) -> "LCNumber":
        if c == 0:
            return ZERO
        return cls(((exponent(q), float(c)),))

    @classmethod
    def real(cls, c: float) -> "LCNumber":
        return cls.monomial(c, 0)

    # accessors

    def __getitem__(self, q) -> float:
        q = exponent(q)
        if self.horizon != INF and not q < self.horizon:
            raise InsufficientHorizon(f"coefficient at {q} is beyond horizon {_fmt_horizon(self.horizon)}")
        lookup = self.__dict__.get("_lookup")
        if lookup is None:
            lookup = dict(self.terms)
            object.__setattr__(self, "_lookup", lookup)
        return lookup.get(q, 0.0)

    def support(self) -> tuple[Fraction, ...]:
        return tuple(q for q, _ in self.terms)

    @property
    def exact(self) -> bool:
        return self.horizon == INF

    def is_zero(self) -> bool:
        """True only for the exact zero."""
        return not self.terms and self.horizon == INF

    def is_real(self) -> bool:
        return self.exact and all(q == 0 for q, _ in self.terms)

    def leading(self) -> tuple[Fraction, float]:
        if not self.terms:
            if self.exact:
                raise ZeroDivisionError("zero has no leading term")
            raise InsufficientHorizon("no known terms below the horizon")
        return self.terms[0]

    # operators

    def __add__(self, other):
        other = coerce(other)
        return add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return LCNumber(tuple((q, -c) for q, c in self.terms), self.horizon)

    def __sub__(self, other):
        return add(self, -coerce(other))

    def __rsub__(self, other):
        return add(coerce(other), -self)

    def __mul__(self, other):
        return mul(self, coerce(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return div(self, coerce(other))

    def __rtruediv__(self, other):
        return div(coerce(other), self)

    def __pow__(self, q):
        return power(self, q)

    def __abs__(self):
        return self if sign(self) >= 0 else -self

    def __lt__(self, other):
        return _decided(compare(self, coerce(other))) is Order.LESS

    def __le__(self, other):
        return _decided(compare(self, coerce(other))) is not Order.GREATER

    def __gt__(self, other):
        return _decided(compare(self, coerce(other))) is Order.GREATER

    def __ge__(self, other):
        return _decided(compare(self, coerce(other))) is not Order.LESS

    def __str__(self) -> str:
        return to_text(self)

    def __repr__(self) -> str:
        return f"LCNumber({to_text(self)!r})"


ZERO = LCNumber()
ONE = LCNumber(((Fraction(0), 1.0),))
D = LCNumber(((Fraction(1), 1.0),))


def from_terms(terms, horizon=INF) -> LCNumber:
    """Build from ascending (exponent, coefficient) pairs, dropping underflowed zeros."""
    return LCNumber(tuple(t for t in terms if t[1] != 0), horizon)


def coerce(x) -> LCNumber:
    if isinstance(x, LCNumber):
        return x
    if isinstance(x, (int, float, Fraction)):
        return LCNumber.real(float(x))
    raise TypeError(f"cannot convert {type(x).__name__} to LCNumber")


def truncate(x: LCNumber, h) -> LCNumber:
    """Forget everything at or beyond ``h``."""
    h = horizon_of(h)
    if not h < x.horizon:
        return x
    return LCNumber(tuple(t for t in x.terms if t[0] < h), h)


def shift(x: LCNumber, q) -> LCNumber:
    """Multiply by d**q exactly."""
    q = exponent(q)
    return LCNumber(tuple((e + q, c) for e, c in x.terms), x.horizon + q)


def scale(x: LCNumber, a: float) -> LCNumber:
    a = float(a)
    if a == 0:
        return ZERO
    return from_terms(((q, c * a) for q, c in x.terms), x.horizon)


# valuation and order


def valuation(x: LCNumber) -> Horizon:
    """Smallest exponent in the support; inf for zero.

    For a truncated number with no known terms this is a lower bound only.
    """
    return x.terms[0][0] if x.terms else INF


class Order(Enum):
    LESS = "Less"
    EQUAL = "Equal"
    GREATER = "Greater"
    INDETERMINATE = "Indeterminate"


@dataclass(frozen=True)
class Comparison:
    order: Order
    horizon: Horizon = INF

    def __str__(self) -> str:
        if self.order is Order.INDETERMINATE:
            return f"Indeterminate({_fmt_horizon(self.horizon)})"
        return self.order.value


def compare(x: LCNumber, y: LCNumber) -> Comparison:
    diff = add(x, -y)
    if diff.terms:
        return Comparison(Order.LESS if diff.terms[0][1] < 0 else Order.GREATER)
    if diff.exact:
        return Comparison(Order.EQUAL)
    return Comparison(Order.INDETERMINATE, diff.horizon)


def _decided(c: Comparison) -> Order:
    if c.order is Order.INDETERMINATE:
        raise IndeterminateOrder(f"order undecided below horizon {_fmt_horizon(c.horizon)}")
    return c.order


def sign(x: LCNumber) -> int:
    """-1, 0 or 1; raises IndeterminateOrder when no term is known."""
    if x.terms:
        return -1 if x.terms[0][1] < 0 else 1
    if x.exact:
        return 0
    raise IndeterminateOrder(f"sign undecided below horizon {_fmt_horizon(x.horizon)}")


def cmp(x, y) -> int:
    """Three-way comparison as an int, raising when undecidable."""
    return sign(add(coerce(x), -coerce(y)))


def lc_max(values: Iterable[LCNumber]) -> LCNumber:
    best = None
    for v in values:
        if best is None or cmp(v, best) > 0:
            best = v
    if best is None:
        raise ValueError("empty sequence")
    return best


def std_part(x: LCNumber) -> float:
    if x.terms and x.terms[0][0] < 0:
        return INF if x.terms[0][1] > 0 else -INF
    if not x.horizon > 0:
        raise InsufficientHorizon("real part lies beyond the horizon")
    return x[0]


@dataclass(frozen=True)
class Relations:
    sim: bool
    approx: bool
    ll: bool


def _known_valuation(x: LCNumber) -> Horizon:
    if not x.terms and not x.exact:
        raise InsufficientHorizon("leading term beyond the horizon")
    return valuation(x)


def relations(x: LCNumber, y: LCNumber, rtol: float = 0.0) -> Relations:
    lx, ly = _known_valuation(x), _known_valuation(y)
    sim = lx == ly
    approx = False
    if sim:
        if lx == INF:
            approx = True
        else:
            a, b = x.terms[0][1], y.terms[0][1]
            approx = abs(a - b) <= rtol * max(abs(a), abs(b))
    return Relations(sim=sim, approx=approx, ll=lx > ly)


# arithmetic


def _trusted(terms: tuple, horizon: Horizon) -> LCNumber:
    """Skip validation for terms built ascending and nonzero below the horizon."""
    for _, c in terms:
        if not math.isfinite(c):
            raise OverflowError(f"coefficient {c!r} is not finite")
    out = object.__new__(LCNumber)
    object.__setattr__(out, "terms", terms)
    object.__setattr__(out, "horizon", horizon)
    return out


def add(x: LCNumber, y: LCNumber, floor: float = 0.0) -> LCNumber:
    h = min(x.horizon, y.horizon)
    bounded = h != INF
    acc: dict[Fraction, float] = {}
    for q, c in x.terms:
        if bounded and not q < h:
            break
        acc[q] = c
    for q, c in y.terms:
        if bounded and not q < h:
            break
        acc[q] = acc.get(q, 0.0) + c
    items = sorted((q, c) for q, c in acc.items() if c != 0 and abs(c) >= floor)
    return _trusted(tuple(items), h)


def _low(x: LCNumber) -> Horizon:
    # lower bound on the true valuation; a number with no known terms is O(d^H)
    return x.terms[0][0] if x.terms else x.horizon


def _mul_horizon(x: LCNumber, y: LCNumber) -> Horizon:
    a = x.horizon + _low(y) if x.horizon != INF else INF
    b = y.horizon + _low(x) if y.horizon != INF else INF
    return min(a, b)


def mul(x: LCNumber, y: LCNumber, cap: Horizon = INF) -> LCNumber:
    """Product, optionally truncated at ``cap``."""
    h = min(_mul_horizon(x, y), cap)
    if not x.terms or not y.terms:
        return LCNumber((), h)
    acc: dict[Fraction, float] = {}
    if h == INF:
        for qx, cx in x.terms:
            for qy, cy in y.terms:
                q = qx + qy
                acc[q] = acc.get(q, 0.0) + cx * cy
    else:
        for qx, cx in x.terms:
            if not qx + y.terms[0][0] < h:
                break
            for qy, cy in y.terms:
                q = qx + qy
                if not q < h:
                    break
                acc[q] = acc.get(q, 0.0) + cx * cy
    items = sorted((q, c) for q, c in acc.items() if c != 0)
    return _trusted(tuple(items), h)


def _abs_number(x: LCNumber) -> LCNumber:
    return LCNumber(tuple((q, abs(c)) for q, c in x.terms), x.horizon)


def _verify(got: LCNumber, want: LCNumber, scale_: LCNumber, h: Horizon, what: str):
    """Check ``got == want`` below ``h`` relative to the magnitudes in ``scale_``."""
    diff = add(truncate(got, h), -truncate(want, h))
    for q, c in diff.terms:
        bound = VERIFY_RTOL * max(1.0, abs(scale_[q]) if q < scale_.horizon else 1.0)
        if abs(c) > bound:
            raise VerificationError(f"{what}: residual {c:.3g} at exponent {q}")


def _residual_ok(resid: LCNumber, scale_: LCNumber) -> bool:
    return all(abs(c) <= NEWTON_RTOL * (scale_[q] if q < scale_.horizon else 1.0) for q, c in resid.terms)


def _normalize(x: LCNumber) -> tuple[Fraction, float, LCNumber]:
    """Write x = c * d**lam * (1 + eps); returns (lam, c, eps)."""
    lam, c = x.leading()
    if not x.horizon > lam:
        raise InsufficientHorizon("leading term is not exact")
    eps = from_terms(((q - lam, v / c) for q, v in x.terms[1:]), x.horizon - lam)
    return lam, c, eps


def _series_in(eps: LCNumber, coeffs, cap: Horizon) -> LCNumber:
    """sum_k coeffs(k) eps**k, truncated at ``cap`` (eps has positive valuation)."""
    total = truncate(ONE, cap)
    if not eps.terms:
        if eps.exact:
            return ONE
        return truncate(ONE, min(cap, eps.horizon))
    term = ONE
    k = 0
    while True:
        k += 1
        term = mul(term, eps, cap)
        if not term.terms:
            total = add(total, term)
            break
        total = add(total, scale(term, coeffs(k)))
    return total


def inv(x: LCNumber, target_horizon=DEFAULT_HORIZON) -> LCNumber:
    x = coerce(x)
    T = horizon_of(target_horizon)
    if not x.terms:
        if x.exact:
            raise ZeroDivisionError("inverse of zero")
        raise InsufficientHorizon("cannot invert a number with no known terms")
    lam, c, eps = _normalize(x)
    if not eps.terms and eps.exact:
        return LCNumber(((-lam, 1.0 / c),))
    rh = min(T, x.horizon - 2 * lam)
    # normalized frame: the result is c^-1 d^-lam * S, S needed below rh + lam
    s = _series_in(eps, lambda k: -1.0 if k % 2 else 1.0, rh + lam)
    out = from_terms(((q - lam, v / c) for q, v in s.terms), min(rh, s.horizon - lam))
    check_h = out.horizon
    prod = mul(x, out)
    _verify(prod, ONE, mul(_abs_number(x), _abs_number(out)), check_h, "inverse")
    return out


def _real_root(c: float, n: int) -> float:
    if n == 2:
        return math.sqrt(c)
    r = c ** (1.0 / n)
    return r - (r**n - c) / (n * r ** (n - 1))


def nth_root(x: LCNumber, n: int, target_horizon=DEFAULT_HORIZON) -> LCNumber:
    x = coerce(x)
    if n < 1:
        raise ValueError("root degree must be a positive integer")
    T = horizon_of(target_horizon)
    if not x.terms:
        if x.exact:
            raise NonPositive("root of zero")
        raise InsufficientHorizon("sign of the radicand is unknown")
    lam, c, eps = _normalize(x)
    if c < 0:
        raise NonPositive("root of a negative number")
    if n == 1:
        return x if x.exact else truncate(x, T)
    root_c = _real_root(c, n)
    lam_n = lam / n
    if not eps.terms and eps.exact:
        return LCNumber(((lam_n, root_c),))
    rh = min(T, x.horizon - lam + lam_n)
    alpha = Fraction(1, n)
    binoms = [Fraction(1)]

    def coeff(k):
        while len(binoms) <= k:
            j = len(binoms)
            binoms.append(binoms[-1] * (alpha - j + 1) / j)
        return float(binoms[k])

    s = _series_in(eps, coeff, rh - lam_n)
    out = from_terms(((q + lam_n, v * root_c) for q, v in s.terms), min(rh, s.horizon + lam_n))
    check_h = out.horizon + (n - 1) * lam_n
    # the binomial series cancels badly when x is close to a perfect power;
    # Newton steps on the residual restore accuracy relative to |out|^n
    for _ in range(NEWTON_STEPS):
        resid = truncate(add(x, -_int_power(out, n)), check_h)
        if _residual_ok(resid, _int_power(_abs_number(out), n)):
            break
        step = div(resid, scale(_int_power(out, n - 1), float(n)), out.horizon)
        out = truncate(add(out, step), out.horizon)
    prod = _int_power(out, n)
    _verify(prod, x, _int_power(_abs_number(out), n), check_h, "root")
    return out


def _int_power(x: LCNumber, n: int) -> LCNumber:
    result = ONE
    base = x
    while n:
        if n & 1:
            result = mul(result, base)
        n >>= 1
        if n:
            base = mul(base, base)
    return result


def power(x: LCNumber, q, target_horizon=DEFAULT_HORIZON) -> LCNumber:
    """x**q for rational q; integer q >= 0 is exact on exact input."""
    x = coerce(x)
    q = exponent(q)
    T = horizon_of(target_horizon)
    if q.denominator == 1:
        p = q.numerator
        if p >= 0:
            return _int_power(x, p)
        base = _int_power(x, -p)
        return inv(base, T)
    m, p = q.denominator, q.numerator
    lam = valuation(x) if x.terms else 0
    slack = (abs(p) + 2) * abs(Fraction(lam) / m) + 2
    root = nth_root(x, m, T + slack)
    if p >= 0:
        r = _int_power(root, p)
        return r if r.exact else truncate(r, T)
    return inv(_int_power(root, -p), T)


def div(x: LCNumber, y: LCNumber, target_horizon=DEFAULT_HORIZON) -> LCNumber:
    T = horizon_of(target_horizon)
    if not y.terms and y.exact:
        raise ZeroDivisionError("division by zero")
    if not x.terms and x.exact:
        return ZERO
    if y.exact and len(y.terms) == 1:
        # monomial divisor: divide coefficients directly (correctly rounded)
        q, c = y.terms[0]
        return from_terms(((e - q, v / c) for e, v in x.terms), x.horizon - q)
    lam_x = valuation(x) if x.terms else 0
    r = mul(x, inv(y, T - lam_x))
    return r if r.exact else truncate(r, T)


def strip_noise(x: LCNumber, bound: LCNumber, rtol: float = 1e-12) -> LCNumber:
    """Drop terms that are indistinguishable from rounding error.

    ``bound`` holds, per exponent, the sum of magnitudes that produced the
    coefficient; a term with |c| <= rtol * bound[q] is cancellation residue.
    """
    keep = []
    for q, c in x.terms:
        b = bound[q] if q < bound.horizon else 0.0
        if abs(c) > rtol * abs(b):
            keep.append((q, c))
    return LCNumber(tuple(keep), x.horizon)


# text and JSON


def _fmt_coeff(c: float) -> str:
    return format(c, ".17g")


def _fmt_monomial(q: Fraction, c: float) -> str:
    a = abs(c)
    if q == 0:
        return _fmt_coeff(a)
    if q == 1:
        dpart = "d"
    elif q.denominator == 1 and q > 0:
        dpart = f"d^{q}"
    else:
        dpart = f"d^({q})"
    return dpart if a == 1.0 else f"{_fmt_coeff(a)}*{dpart}"


def to_text(x: LCNumber) -> str:
    if not x.terms:
        body = "0"
    else:
        parts = []
        for i, (q, c) in enumerate(x.terms):
            mono = _fmt_monomial(q, c)
            if i == 0:
                parts.append("-" + mono if c < 0 else mono)
            else:
                parts.append((" - " if c < 0 else " + ") + mono)
        body = "".join(parts)
    return f"{body} [horizon {_fmt_horizon(x.horizon)}]"


_TERM_RE = re.compile(
    r"^(?:(?P<c>[0-9.]+(?:[eE][+-]?[0-9]+)?|inf)\*?)?"
    r"(?P<d>d(?:\^(?:\((?P<pe>[+-]?[0-9]+(?:/[0-9]+)?)\)|(?P<e>[0-9]+)))?)?$"
)


def from_text(text: str) -> LCNumber:
    """Parse the canonical text form produced by :func:`to_text`."""
    text = text.strip()
    m = re.match(r"^(.*?)\s*\[horizon\s+([^\]]+)\]$", text)
    horizon: Horizon = INF
    if m:
        text, horizon = m.group(1), horizon_of(m.group(2).strip())
    pieces = re.split(r"\s+([+-])\s+", text)
    signs = [1.0] + [1.0 if s == "+" else -1.0 for s in pieces[1::2]]
    acc: dict[Fraction, float] = {}
    for sgn, tok in zip(signs, pieces[0::2]):
        tok = tok.strip()
        if tok.startswith("-"):
            sgn, tok = -sgn, tok[1:]
        tm = _TERM_RE.match(tok)
        if not tok or not tm or not (tm.group("c") or tm.group("d")):
            raise ValueError(f"bad term {tok!r}")
        c = float(tm.group("c")) if tm.group("c") else 1.0
        if tm.group("d"):
            q = exponent(tm.group("pe") or tm.group("e") or 1)
        else:
            q = Fraction(0)
        acc[q] = acc.get(q, 0.0) + sgn * c
    return LCNumber.from_dict(acc, horizon)


def to_json(x: LCNumber) -> dict:
    return {
        "terms": [[_fmt_exp(q), c] for q, c in x.terms],
        "horizon": _fmt_horizon(x.horizon),
    }


def from_json(obj: dict) -> LCNumber:
    return LCNumber.from_dict({exponent(q): c for q, c in obj["terms"]}, horizon_of(obj["horizon"]))
