"""Intervals with field endpoints, finite disjoint unions with the uniform
measure, piecewise power-series functions and their integrals."""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from .core import (
    DEFAULT_HORIZON,
    ZERO,
    LCNumber,
    add,
    cmp,
    coerce,
    from_json,
    to_json,
)
from .series import (
    PowerSeries,
    constant,
    definite,
    definite_with_bound,
    derivative,
    ps_add,
    ps_eval,
    ps_is_zero,
    ps_mul,
    ps_neg,
    ps_power,
    ps_scale,
    series_from_json,
    series_to_json,
)


@dataclass(frozen=True)
class Interval:
    lo: LCNumber
    hi: LCNumber
    lo_closed: bool = True
    hi_closed: bool = True

    def __post_init__(self):
        object.__setattr__(self, "lo", coerce(self.lo))
        object.__setattr__(self, "hi", coerce(self.hi))
        c = cmp(self.lo, self.hi)
        if c > 0:
            raise ValueError(f"empty interval: lo {self.lo} > hi {self.hi}")
        if c == 0 and not (self.lo_closed and self.hi_closed):
            raise ValueError("a degenerate interval must be closed")

    @property
    def length(self) -> LCNumber:
        return add(self.hi, -self.lo)

    @property
    def is_degenerate(self) -> bool:
        return cmp(self.lo, self.hi) == 0

    def contains(self, x) -> bool:
        x = coerce(x)
        a, b = cmp(self.lo, x), cmp(x, self.hi)
        left = a < 0 or (a == 0 and self.lo_closed)
        right = b < 0 or (b == 0 and self.hi_closed)
        return left and right

    def __str__(self) -> str:
        lb = "[" if self.lo_closed else "("
        rb = "]" if self.hi_closed else ")"
        return f"{lb}{self.lo}, {self.hi}{rb}"


def closed(lo, hi) -> Interval:
    return Interval(lo, hi, True, True)


def open_interval(lo, hi) -> Interval:
    return Interval(lo, hi, False, False)


def half_open(lo, hi) -> Interval:
    """[lo, hi)"""
    return Interval(lo, hi, True, False)


def point(x) -> Interval:
    return Interval(x, x, True, True)


def make_interval(lo, hi, lo_closed=True, hi_closed=True) -> Optional[Interval]:
    """The interval, or None when the bounds describe the empty set."""
    lo, hi = coerce(lo), coerce(hi)
    c = cmp(lo, hi)
    if c > 0 or (c == 0 and not (lo_closed and hi_closed)):
        return None
    return Interval(lo, hi, lo_closed, hi_closed)


def intersect_intervals(a: Interval, b: Interval) -> Optional[Interval]:
    c = cmp(a.lo, b.lo)
    if c > 0:
        lo, lc = a.lo, a.lo_closed
    elif c < 0:
        lo, lc = b.lo, b.lo_closed
    else:
        lo, lc = a.lo, a.lo_closed and b.lo_closed
    c = cmp(a.hi, b.hi)
    if c < 0:
        hi, hc = a.hi, a.hi_closed
    elif c > 0:
        hi, hc = b.hi, b.hi_closed
    else:
        hi, hc = a.hi, a.hi_closed and b.hi_closed
    return make_interval(lo, hi, lc, hc)


def _order(a: Interval, b: Interval) -> int:
    c = cmp(a.lo, b.lo)
    if c:
        return c
    # closed left end first so merging keeps it
    return int(b.lo_closed) - int(a.lo_closed)


def normalize(intervals: Iterable[Interval]) -> tuple[Interval, ...]:
    """Sort and merge into disjoint intervals.

    Touching intervals merge only when at least one touching end is closed.
    """
    items = sorted(intervals, key=functools.cmp_to_key(_order))
    out: list[Interval] = []
    for iv in items:
        if out:
            last = out[-1]
            c = cmp(last.hi, iv.lo)
            if c > 0 or (c == 0 and (last.hi_closed or iv.lo_closed)):
                c2 = cmp(last.hi, iv.hi)
                if c2 > 0:
                    hi, hc = last.hi, last.hi_closed
                elif c2 < 0:
                    hi, hc = iv.hi, iv.hi_closed
                else:
                    hi, hc = last.hi, last.hi_closed or iv.hi_closed
                out[-1] = Interval(last.lo, hi, last.lo_closed, hc)
                continue
        out.append(iv)
    return tuple(out)


@dataclass(frozen=True)
class MeasurableSet:
    intervals: tuple[Interval, ...] = ()

    @classmethod
    def of(cls, *intervals: Interval) -> "MeasurableSet":
        return cls(normalize(intervals))

    def __iter__(self) -> Iterator[Interval]:
        return iter(self.intervals)

    def __len__(self) -> int:
        return len(self.intervals)

    def contains(self, x) -> bool:
        return any(iv.contains(x) for iv in self.intervals)

    def __str__(self) -> str:
        return " U ".join(str(iv) for iv in self.intervals) or "{}"


EMPTY = MeasurableSet()


def as_set(A) -> MeasurableSet:
    if isinstance(A, MeasurableSet):
        return A
    if isinstance(A, Interval):
        return MeasurableSet((A,))
    return MeasurableSet.of(*A)


def measure(A) -> LCNumber:
    total = ZERO
    for iv in as_set(A):
        total = add(total, iv.length)
    return total


def set_union(A, B) -> MeasurableSet:
    return MeasurableSet(normalize(list(as_set(A)) + list(as_set(B))))


def set_intersect(A, B) -> MeasurableSet:
    parts = []
    for a in as_set(A):
        for b in as_set(B):
            k = intersect_intervals(a, b)
            if k is not None:
                parts.append(k)
    return MeasurableSet(normalize(parts))


def complement_within(A, bound: Interval) -> MeasurableSet:
    """bound minus A."""
    inside = set_intersect(A, MeasurableSet((bound,)))
    gaps = []
    lo, lc = bound.lo, bound.lo_closed
    for iv in inside:
        g = make_interval(lo, iv.lo, lc, not iv.lo_closed)
        if g is not None:
            gaps.append(g)
        lo, lc = iv.hi, not iv.hi_closed
    g = make_interval(lo, bound.hi, lc, bound.hi_closed)
    if g is not None:
        gaps.append(g)
    return MeasurableSet(normalize(gaps))


def set_difference(A, B) -> MeasurableSet:
    parts: list[Interval] = []
    for a in as_set(A):
        parts.extend(complement_within(B, a))
    return MeasurableSet(normalize(parts))


def is_subset(B, A) -> bool:
    return not set_difference(B, A).intervals


# piecewise functions


@dataclass(frozen=True)
class PiecewiseSimple:
    """Finitely many (interval, series) pieces on disjoint intervals; zero elsewhere."""

    pieces: tuple[tuple[Interval, PowerSeries], ...] = ()

    def __post_init__(self):
        ps = self.pieces
        for i in range(len(ps)):
            for j in range(i + 1, len(ps)):
                if intersect_intervals(ps[i][0], ps[j][0]) is not None:
                    raise ValueError(f"overlapping pieces {ps[i][0]} and {ps[j][0]}")

    def __iter__(self):
        return iter(self.pieces)

    def __call__(self, x, target_horizon=DEFAULT_HORIZON) -> LCNumber:
        return pw_eval(self, x, target_horizon)

    def domain(self) -> MeasurableSet:
        return MeasurableSet(normalize(iv for iv, _ in self.pieces))


def piecewise(pieces: Sequence[tuple[Interval, PowerSeries]]) -> PiecewiseSimple:
    return PiecewiseSimple(tuple((iv, s) for iv, s in pieces))


def on(interval: Interval, s) -> PiecewiseSimple:
    if not isinstance(s, PowerSeries):
        s = constant(s)
    return PiecewiseSimple(((interval, s),))


ZERO_FN = PiecewiseSimple()


def pw_eval(f: PiecewiseSimple, x, target_horizon=DEFAULT_HORIZON) -> LCNumber:
    x = coerce(x)
    for iv, s in f.pieces:
        if iv.contains(x):
            return ps_eval(s, x, target_horizon)
    return ZERO


def restrict(f: PiecewiseSimple, A) -> PiecewiseSimple:
    out = []
    for iv, s in f.pieces:
        for a in as_set(A):
            k = intersect_intervals(iv, a)
            if k is not None:
                out.append((k, s))
    return PiecewiseSimple(tuple(out))


def pw_map(f: PiecewiseSimple, fn) -> PiecewiseSimple:
    return PiecewiseSimple(tuple((iv, fn(s)) for iv, s in f.pieces))


def pw_scale(f: PiecewiseSimple, c) -> PiecewiseSimple:
    return pw_map(f, lambda s: ps_scale(s, c))


def pw_neg(f: PiecewiseSimple) -> PiecewiseSimple:
    return pw_map(f, ps_neg)


def pw_derivative(f: PiecewiseSimple) -> PiecewiseSimple:
    """Pointwise derivative inside each piece."""
    return pw_map(f, derivative)


def pw_add(f: PiecewiseSimple, g: PiecewiseSimple) -> PiecewiseSimple:
    out = []
    for iv, s in f.pieces:
        for jv, t in g.pieces:
            k = intersect_intervals(iv, jv)
            if k is not None:
                out.append((k, ps_add(s, t)))
    gdom, fdom = g.domain(), f.domain()
    for iv, s in f.pieces:
        out.extend((k, s) for k in complement_within(gdom, iv))
    for jv, t in g.pieces:
        out.extend((k, t) for k in complement_within(fdom, jv))
    return PiecewiseSimple(tuple(out))


def pw_sub(f: PiecewiseSimple, g: PiecewiseSimple) -> PiecewiseSimple:
    return pw_add(f, pw_neg(g))


def pw_product(f: PiecewiseSimple, g: PiecewiseSimple) -> PiecewiseSimple:
    out = []
    for iv, s in f.pieces:
        for jv, t in g.pieces:
            k = intersect_intervals(iv, jv)
            if k is not None:
                out.append((k, ps_mul(s, t)))
    return PiecewiseSimple(tuple(out))


def pw_power(f: PiecewiseSimple, n: int) -> PiecewiseSimple:
    """f**n on the pieces of f (f**0 is 1 on the domain of f)."""
    return pw_map(f, lambda s: ps_power(s, n))


def integrate(f: PiecewiseSimple, A, target_horizon=DEFAULT_HORIZON) -> LCNumber:
    total = ZERO
    for iv, s in f.pieces:
        for a in as_set(A):
            k = intersect_intervals(iv, a)
            if k is None or k.is_degenerate:
                continue
            total = add(total, definite(s, k.lo, k.hi, target_horizon))
    return total


def integrate_with_bound(f: PiecewiseSimple, A) -> tuple[LCNumber, LCNumber]:
    """Integral of a piecewise polynomial with a per-exponent magnitude bound."""
    total, bound = ZERO, ZERO
    for iv, s in f.pieces:
        for a in as_set(A):
            k = intersect_intervals(iv, a)
            if k is None or k.is_degenerate:
                continue
            v, b = definite_with_bound(s, k.lo, k.hi)
            total, bound = add(total, v), add(bound, b)
    return total, bound


def ae_eq(f: PiecewiseSimple, g: PiecewiseSimple, A) -> bool:
    """f = g except on a set of measure zero within A."""
    diff = restrict(pw_sub(f, g), A)
    return all(iv.is_degenerate or ps_is_zero(s) for iv, s in diff.pieces)


# JSON


def interval_to_json(iv: Interval) -> dict:
    return {"lo": to_json(iv.lo), "hi": to_json(iv.hi), "lc": iv.lo_closed, "hc": iv.hi_closed}


def interval_from_json(obj: dict) -> Interval:
    return Interval(from_json(obj["lo"]), from_json(obj["hi"]), bool(obj["lc"]), bool(obj["hc"]))


def set_to_json(A) -> list:
    return [interval_to_json(iv) for iv in as_set(A)]


def set_from_json(obj: list) -> MeasurableSet:
    return MeasurableSet.of(*(interval_from_json(o) for o in obj))


def piecewise_to_json(f: PiecewiseSimple) -> list:
    return [{"interval": interval_to_json(iv), "series": series_to_json(s)} for iv, s in f.pieces]


def piecewise_from_json(obj: list) -> PiecewiseSimple:
    return PiecewiseSimple(
        tuple((interval_from_json(p["interval"]), series_from_json(p["series"])) for p in obj)
    )
