"""Measurable representatives of real functions: Chebyshev polynomial
approximants of continuous functions and midpoint step functions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from numpy.polynomial import Chebyshev, Polynomial
from numpy.polynomial import polynomial as npoly

from .core import LCNumber
from .measure import PiecewiseSimple, closed, half_open, on, piecewise
from .series import constant, polynomial

SMOOTHNESS_TAGS = ("continuous", "analytic")


@dataclass(frozen=True)
class RealFunctionHandle:
    evaluator: Callable[[float], float]
    domain: tuple[float, float] = (-1.0, 1.0)
    smoothness: str = "continuous"  # continuous | C^k | analytic
    name: str = ""

    def __post_init__(self):
        a, b = self.domain
        if not a < b:
            raise ValueError(f"empty domain [{a}, {b}]")
        tag = self.smoothness
        if tag not in SMOOTHNESS_TAGS and not (tag.startswith("C^") and tag[2:].isdigit()):
            raise ValueError(f"unknown smoothness tag {tag!r}")

    def __call__(self, x: float) -> float:
        return float(self.evaluator(x))


@dataclass(frozen=True)
class RealPolynomial:
    """Real polynomial in x, coefficients in ascending degree."""

    coeffs: tuple[float, ...]
    domain: tuple[float, float] = (-1.0, 1.0)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        return npoly.polyval(x, self.coeffs)

    def derivative(self, k: int = 1) -> "RealPolynomial":
        return RealPolynomial(tuple(npoly.polyder(self.coeffs, k)) or (0.0,), self.domain)

    def antiderivative(self, k: int = 1) -> "RealPolynomial":
        """k-fold antiderivative vanishing to order k at 0."""
        return RealPolynomial(tuple(npoly.polyint(self.coeffs, k)), self.domain)

    def to_json(self) -> dict:
        return {"coeffs": [float(c) for c in self.coeffs], "domain": [float(v) for v in self.domain]}

    @classmethod
    def from_json(cls, obj: dict) -> "RealPolynomial":
        return cls(tuple(float(c) for c in obj["coeffs"]), tuple(obj["domain"]))


def as_handle(f, domain=(-1.0, 1.0)) -> RealFunctionHandle:
    if isinstance(f, RealFunctionHandle):
        return f
    return RealFunctionHandle(f, (float(domain[0]), float(domain[1])))


def cheb_approx(f, n: int, domain=None) -> RealPolynomial:
    """Degree-n Chebyshev interpolant at n+1 first-kind nodes on the domain."""
    if n < 0:
        raise ValueError("degree must be non-negative")
    h = as_handle(f, domain or (-1.0, 1.0))
    a, b = h.domain if domain is None else domain
    series = Chebyshev.interpolate(lambda xs: np.array([h(x) for x in xs]), n, domain=[a, b])
    p = series.convert(kind=Polynomial, domain=[-1, 1], window=[-1, 1])
    coeffs = tuple(float(c) for c in p.coef) + (0.0,) * (n + 1 - len(p.coef))
    return RealPolynomial(coeffs, (float(a), float(b)))


def sup_error(f, p: RealPolynomial, points: int = 1000) -> float:
    """Sup of |f - p| on an equispaced grid of the polynomial's domain."""
    h = as_handle(f, p.domain)
    xs = np.linspace(p.domain[0], p.domain[1], points)
    return float(max(abs(h(x) - p(x)) for x in xs))


def ext_polynomial(p: RealPolynomial, domain=None) -> PiecewiseSimple:
    """Canonical extension: one piece on [a, b] of the field, same coefficients."""
    a, b = domain or p.domain
    return on(closed(a, b), polynomial(list(p.coeffs)))


def step_approx(f, n: int, domain=None) -> PiecewiseSimple:
    """2^n equal-width steps valued at interval midpoints."""
    h = as_handle(f, domain or (-1.0, 1.0))
    a, b = h.domain if domain is None else domain
    k = 2**n
    xs = [a + (b - a) * i / k for i in range(k + 1)]
    xs[-1] = b
    pieces = []
    for i in range(k):
        iv = closed(xs[i], xs[i + 1]) if i == k - 1 else half_open(xs[i], xs[i + 1])
        pieces.append((iv, constant(LCNumber.real(h(0.5 * (xs[i] + xs[i + 1]))))))
    return piecewise(pieces)


def grid_points(domain: Sequence[float], count: int) -> list[float]:
    a, b = domain
    return [float(x) for x in np.linspace(a, b, count)]
