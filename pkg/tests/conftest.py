from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from lcfield.core import LCNumber

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

exponents = st.builds(
    Fraction,
    st.integers(-6, 10),
    st.sampled_from([1, 2, 3]),
)
coeffs = st.floats(-10, 10, allow_nan=False).filter(lambda c: abs(c) > 1e-3)


@st.composite
def lc_numbers(draw, max_terms=4, nonzero=False):
    qs = draw(st.lists(exponents, min_size=1 if nonzero else 0, max_size=max_terms, unique=True))
    return LCNumber.from_dict({q: draw(coeffs) for q in qs})


@st.composite
def real_polys(draw, max_degree=5):
    return draw(st.lists(st.floats(-5, 5, allow_nan=False, allow_subnormal=False), min_size=1, max_size=max_degree + 1))


def coeff_close(x: LCNumber, y: LCNumber, rtol=1e-12) -> bool:
    scale = max([1.0] + [abs(c) for _, c in x.terms] + [abs(c) for _, c in y.terms])
    qs = {q for q, _ in x.terms} | {q for q, _ in y.terms}
    h = min(x.horizon, y.horizon)
    return all(abs(x[q] - y[q]) <= rtol * scale for q in qs if q < h)


@pytest.fixture
def close():
    return coeff_close


def abs_terms(x: LCNumber) -> LCNumber:
    return LCNumber(tuple((q, abs(c)) for q, c in x.terms), x.horizon)


def agree_scaled(a: LCNumber, b: LCNumber, size: LCNumber, rtol=1e-12) -> bool:
    """a == b below the common horizon, relative to a per-exponent magnitude."""
    h = min(a.horizon, b.horizon)
    qs = {q for q, _ in a.terms} | {q for q, _ in b.terms}
    return all(abs(a[q] - b[q]) <= rtol * (size[q] if q < size.horizon else 0.0) for q in qs if q < h)


def product_is_one(x: LCNumber, y: LCNumber, rtol=1e-12) -> bool:
    """x*y == 1 coefficient-wise, relative to the magnitude |x|*|y| per exponent."""
    prod, size = x * y, abs_terms(x) * abs_terms(y)
    for q, _ in size.terms:
        if q < prod.horizon and abs(prod[q] - (1.0 if q == 0 else 0.0)) > rtol * size[q]:
            return False
    return all(q in {e for e, _ in size.terms} for q, _ in prod.terms)


# acceptance report: one PASS/FAIL line per criterion, printed after the run

ACCEPTANCE_LINES: list[str] = []
SESSION_START = [0.0]


def pytest_sessionstart(session):
    import time

    SESSION_START[0] = time.perf_counter()


def pytest_collection_modifyitems(config, items):
    # the wall-clock criterion must run after everything else
    last = [it for it in items if it.get_closest_marker("run_last")]
    rest = [it for it in items if not it.get_closest_marker("run_last")]
    items[:] = rest + last


def pytest_configure(config):
    config.addinivalue_line("markers", "run_last: run after all other tests")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
