"""Finite-prefix evidence for weak and strong limits, and the strong
sequence-space layer (norms and inner products of strongly Cauchy
sequences of piecewise functions).

Every verdict here is a heuristic over an evaluated prefix; the evidence
used is returned alongside the verdict.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Optional

from .core import (
    DEFAULT_HORIZON,
    INF,
    LCNumber,
    coerce,
    exponent,
    horizon_of,
    to_json,
    truncate,
)
from .errors import NotStronglyCauchy
from .lp import lp_norm
from .measure import PiecewiseSimple, integrate, pw_product, pw_sub

DECAY_RATIO = 0.75
SNAP_FACTOR = 4.0
COEFF_RTOL = 1e-12


@dataclass(frozen=True)
class SequenceHandle:
    generator: Callable[[int], Any]
    description: str = ""
    start: int = 1
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def __call__(self, n: int):
        if n not in self._cache:
            self._cache[n] = self.generator(n)
        return self._cache[n]

    def prefix(self, count: int) -> list:
        return [self(n) for n in range(self.start, self.start + count)]


@dataclass(frozen=True)
class Verdict:
    verdict: str  # limit | no_limit | divergent
    value: Optional[LCNumber] = None
    evidence: dict = field(default_factory=dict)

    @property
    def is_limit(self) -> bool:
        return self.verdict == "limit"

    def to_json(self) -> dict:
        out: dict = {"verdict": self.verdict}
        if self.value is not None:
            out["value"] = to_json(self.value)
        out["evidence"] = self.evidence
        return out


def _low(x: LCNumber):
    return x.terms[0][0] if x.terms else x.horizon


def _coeff(x: LCNumber, q: Fraction) -> float:
    for e, c in x.terms:
        if e == q:
            return c
        if e > q:
            break
    return 0.0


def _window_spread(cds, lo: int, hi: int, ref: dict, qs) -> dict:
    """Per-exponent max |a_n[q] - ref[q]| over indices lo..hi-1."""
    out = {}
    for q in qs:
        r = ref.get(q, 0.0)
        out[q] = max(abs(cds[i].get(q, 0.0) - r) for i in range(lo, hi))
    return out


def _extrapolate(a4: float, a2: float, a1: float) -> float:
    """Limit from values at N/4, N/2, N assuming a tail ~ C n^-k."""
    d1, d2 = a1 - a2, a2 - a4
    if d1 == 0:
        return a1
    if d2 == 0:
        return a1 + d1  # Richardson step for an O(1/n) tail
    rho = d1 / d2
    if not 0 < rho < 1:
        return a1
    return a1 + d1 * rho / (1.0 - rho)


def _limit_estimate(cds, n: int, qs, tol: float):
    """Coefficient-wise limit from the prefix of length n."""
    a1, a2, a4 = cds[n - 1], cds[n // 2 - 1], cds[n // 4 - 1]
    w0 = _window_spread(cds, n // 2, n, a1, qs)
    coeffs = {}
    for q in qs:
        lim = _extrapolate(a4.get(q, 0.0), a2.get(q, 0.0), a1.get(q, 0.0))
        if abs(lim) > max(tol, SNAP_FACTOR * w0[q]):
            coeffs[q] = lim
    return coeffs


def weak_limit(s: SequenceHandle, cutoff_q=8, tol: float = 1e-9, n_max: int = 512) -> Verdict:
    """Heuristic weak limit of an LCNumber sequence.

    Coefficients at exponents strictly below ``cutoff_q`` are examined on
    the dyadic windows (N/2, N], (N/4, N/2], (N/8, N/4] of the prefix.
    """
    if n_max < 8:
        raise ValueError("n_max must be at least 8")
    cutoff = exponent(cutoff_q)
    values = [coerce(v) for v in s.prefix(n_max)]
    H = min([cutoff] + [v.horizon for v in values[n_max // 8 - 1 :]])
    cds = [{q: c for q, c in v.terms if q < H} for v in values]
    qs = sorted({q for cd in cds for q in cd})
    N = n_max
    windows = [(N // 2, N), (N // 4, N // 2), (N // 8, N // 4)]
    ref = cds[N - 1]
    spreads = [max(_window_spread(cds, a, b, ref, qs).values(), default=0.0) for a, b in windows]
    w0, w1, w2 = spreads
    decaying = w1 > 0 and w2 > 0 and w0 / w1 <= DECAY_RATIO and w1 / w2 <= DECAY_RATIO
    converging = w0 <= tol or decaying

    def new_exponents(a, b):
        seen = {q for cd in cds[:a] for q in cd}
        return len({q for cd in cds[a:b] for q in cd} - seen)

    non_regular = new_exponents(N // 2, N) > 0 and new_exponents(N // 4, N // 2) > 0
    lows = [min(_low(values[i]) for i in range(a, b)) for a, b in windows]
    evidence = {
        "n_max": N,
        "cutoff": str(cutoff),
        "window_spreads": spreads,
        "non_regular": non_regular,
        "min_valuations": [str(v) if v != INF else "inf" for v in lows],
        "heuristic": True,
    }
    if converging:
        coeffs = _limit_estimate(cds, N, qs, tol)
        half_coeffs = _limit_estimate(cds, N // 2, qs, tol)
        evidence["limit_support"] = [len(half_coeffs), len(coeffs)]
        if non_regular and len(coeffs) > len(half_coeffs):
            return Verdict("no_limit", None, evidence)
        return Verdict("limit", LCNumber.from_dict(coeffs, H), evidence)
    falling = lows[0] < lows[1] < lows[2]
    if falling:
        lead = values[N - 1].terms[0][1] if values[N - 1].terms else 0.0
        evidence["sign"] = "+" if lead > 0 else "-"
        return Verdict("divergent", None, evidence)
    return Verdict("no_limit", None, evidence)


# strong sequence spaces


def _agree(a: float, b: float) -> bool:
    return abs(a - b) <= COEFF_RTOL * max(abs(a), abs(b))


def _first_disagreement(x: LCNumber, y: LCNumber):
    h = min(x.horizon, y.horizon)
    qs = sorted({q for q, _ in x.terms} | {q for q, _ in y.terms})
    for q in qs:
        if not q < h:
            break
        if not _agree(_coeff(x, q), _coeff(y, q)):
            return q
    return h


def _stable_value(values: list[LCNumber]) -> LCNumber:
    # the strong Cauchy check is done by the caller; here we only find how far the window agrees
    last = values[-1]
    Q = min(_first_disagreement(v, last) for v in values[:-1]) if len(values) > 1 else last.horizon
    return truncate(last, Q)


def _check_strongly_cauchy(fs: list[PiecewiseSimple], A, p, T) -> list:
    lows = []
    for f, g in zip(fs, fs[1:]):
        lows.append(_low(lp_norm(pw_sub(f, g), A, p, T)))
    tail = lows[len(lows) // 2 :]
    ok = all(b > a or (a == INF and b == INF) for a, b in zip(tail, tail[1:]))
    if not ok:
        raise NotStronglyCauchy(
            "consecutive differences do not shrink in order: valuations "
            + ", ".join("inf" if v == INF else str(v) for v in lows)
        )
    return lows


def slp_norm(s: SequenceHandle, A, p, n_max: int = 8, window: int = 3, target_horizon=DEFAULT_HORIZON) -> LCNumber:
    """Strong limit of ||f_n||_p for a strongly Cauchy sequence."""
    T = horizon_of(target_horizon)
    fs = s.prefix(n_max)
    _check_strongly_cauchy(fs, A, p, T)
    norms = [lp_norm(f, A, p, T) for f in fs[-window:]]
    return _stable_value(norms)


def inner_product(s: SequenceHandle, t: SequenceHandle, A, n_max: int = 8, window: int = 3, target_horizon=DEFAULT_HORIZON) -> LCNumber:
    """Strong limit of the integrals of f_n g_n."""
    T = horizon_of(target_horizon)
    fs, gs = s.prefix(n_max), t.prefix(n_max)
    _check_strongly_cauchy(fs, A, 2, T)
    _check_strongly_cauchy(gs, A, 2, T)
    vals = [integrate(pw_product(f, g), A, T) for f, g in zip(fs[-window:], gs[-window:])]
    return _stable_value(vals)
