import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from lcfield.core import D, ONE, LCNumber, add, mul, shift, std_part
from lcfield.dist import (
    DEFAULT_SCHEDULE,
    bump_normalizer,
    dirac_bump,
    dirac_heaviside_product_check,
    heaviside,
    moment_expected,
    moment_identity,
    pair,
    pair_derivative,
)
from lcfield.errors import InsufficientSmoothness, NotInfinitesimal
from lcfield.measure import integrate, pw_derivative, pw_power
from lcfield.series import derivative, ps_mul, ps_power, ps_scale

from conftest import coeff_close

TEST_FUNCTIONS = {
    "cos": math.cos,
    "sin": math.sin,
    "exp": math.exp,
    "one": lambda x: 1.0,
    "x^2": lambda x: x * x,
    "runge": lambda x: 1 / (1 + 4 * x * x),
    "gauss": lambda x: math.exp(-x * x),
    "cosh": math.cosh,
    "atan": math.atan,
    "sqrt": lambda x: math.sqrt(2 + x),
}


def at(r, t, h=D):
    return add(LCNumber.real(r), mul(LCNumber.real(t), h))


def test_normalizer_values():
    assert bump_normalizer(2) == Fraction(15, 16)
    for m in range(1, 7):
        u = [i / 4000 - 1 for i in range(8001)]
        trap = sum((1 - x * x) ** m for x in u) / 4000
        assert float(bump_normalizer(m)) * trap == pytest.approx(1.0, rel=1e-6)


@pytest.mark.parametrize("r", [0, 0.3, -0.5])
def test_bump_invariants(r):
    delta = dirac_bump(r)
    assert integrate(delta.body, delta.support)[0] == pytest.approx(1.0, abs=1e-12)
    centre = delta.body(r)
    assert centre.terms[0][0] == -1 and centre.terms[0][1] == pytest.approx(15 / 16)
    dbody = pw_derivative(delta.body)
    for t in (-1, 1):
        assert all(abs(c) < 1e-9 for _, c in delta.body(at(r, t)).terms)
        assert all(abs(c) < 1e-9 for _, c in dbody(at(r, t)).terms)
    assert delta.body(r + 0.01).is_zero()


def test_bump_with_other_widths():
    delta = dirac_bump(0, h=LCNumber.monomial(2.0, 2))
    assert integrate(delta.body, delta.support)[0] == pytest.approx(1.0, abs=1e-12)
    assert delta.smoothness == 1
    assert dirac_bump(0, order=4).smoothness == 3


@pytest.mark.parametrize("h", [ONE, LCNumber.real(0.0), -D, shift(ONE, -1)])
def test_width_must_be_positive_infinitesimal(h):
    with pytest.raises(NotInfinitesimal):
        dirac_bump(0, h=h)


def test_heaviside_values():
    delta = dirac_bump(0)
    H = heaviside(delta)
    assert H.body(-0.5).is_zero()
    assert H.body(0.5) == ONE
    assert std_part(H.body(0)) == pytest.approx(0.5, abs=1e-15)
    assert std_part(H.body(-D)) == pytest.approx(0.0, abs=1e-12)
    assert std_part(H.body(D)) == pytest.approx(1.0, abs=1e-12)
    for u in (-0.7, -0.2, 0.4, 0.9):
        want = 15 / 16 * (u - 2 * u**3 / 3 + u**5 / 5) + 0.5
        assert std_part(H.body(at(0, u))) == pytest.approx(want, rel=1e-12)


def test_heaviside_support_must_fit():
    with pytest.raises(ValueError):
        heaviside(dirac_bump(1))


def test_powers_of_heaviside_differ():
    H = heaviside(dirac_bump(0))
    # H^n == H off the support, so the difference lives at order d
    vals = [integrate(pw_power(H.body, n), H.source.support)[1] for n in (1, 2, 3)]
    assert len({round(v, 12) for v in vals}) == 3
    x = at(0, 0.5)
    assert std_part(pw_power(H.body, 2)(x)) != pytest.approx(std_part(H.body(x)))


@pytest.mark.parametrize("m", range(0, 9))
def test_power_rule_on_the_ramp(m):
    delta = dirac_bump(0)
    H = heaviside(delta)
    ramp = H.body.pieces[1][1]
    (_, bump), = delta.body.pieces
    lhs = derivative(ps_power(ramp, m + 1))
    rhs = ps_scale(ps_mul(ps_power(ramp, m), bump), LCNumber.real(m + 1))
    n = max(len(lhs.coeffs), len(rhs.coeffs))
    for j in range(n):
        a = lhs.coeffs[j] if j < len(lhs.coeffs) else LCNumber()
        b = rhs.coeffs[j] if j < len(rhs.coeffs) else LCNumber()
        assert coeff_close(a, b, 1e-11)


@pytest.mark.parametrize("name", sorted(TEST_FUNCTIONS))
def test_pairing_recovers_value(name):
    f = TEST_FUNCTIONS[name]
    rep = pair(dirac_bump(0), f, expected=f(0.0))
    assert rep.stabilized and all(rep.sandwich)
    assert rep.defect <= 1e-6


@pytest.mark.parametrize("r", [0.3, -0.6])
@pytest.mark.parametrize("name", ["cos", "exp", "runge"])
def test_pairing_off_centre(name, r):
    f = TEST_FUNCTIONS[name]
    # poles at +-i/2 slow Chebyshev convergence to about 1.6^-n
    schedule = tuple(range(8, 49, 4)) if name == "runge" else DEFAULT_SCHEDULE
    rep = pair(dirac_bump(r), f, schedule=schedule, expected=f(r))
    assert rep.ok


def test_flat_near_centre_pairs_to_zero():
    rep = pair(dirac_bump(0), lambda x: 0.0 if abs(x) < 0.5 else (abs(x) - 0.5) ** 3, expected=0.0)
    assert all(rep.sandwich)
    assert rep.limit == pytest.approx(0.0, abs=1e-6)


def test_heaviside_pairing_is_integral_right_of_centre():
    H = heaviside(dirac_bump(0))
    rep = pair(H, math.cos, expected=math.sin(1))
    assert rep.ok


@pytest.mark.parametrize("name", ["one", "cos", "x^2", "exp"])
def test_product_check(name):
    delta = dirac_bump(0)
    rep = dirac_heaviside_product_check(delta, heaviside(delta), TEST_FUNCTIONS[name])
    assert rep.ok
    assert rep.expected == pytest.approx(TEST_FUNCTIONS[name](0) / 2)


def test_moments_grid():
    delta = dirac_bump(0)
    H = heaviside(delta)
    for m in range(9):
        for n in range(9):
            got = moment_identity(delta, H, m, n)
            want = float(moment_expected(m, n))
            assert abs(got[0] - want) <= 1e-12
            assert all(abs(c) <= 1e-12 for q, c in got.terms if q != 0)


def test_moment_example():
    assert moment_expected(2, 5) == Fraction(1, 6)


@pytest.mark.parametrize("name", ["cos", "exp", "x^2", "runge"])
def test_first_derivative_pairing(name):
    f = TEST_FUNCTIONS[name]
    rep = pair_derivative(dirac_bump(0), 1, f)
    assert rep.ok and rep.expected == pytest.approx(-f(0.0))


@pytest.mark.parametrize("name", ["cos", "exp", "x^2", "runge"])
def test_second_derivative_pairing(name):
    f = TEST_FUNCTIONS[name]
    rep = pair_derivative(dirac_bump(0, order=3), 2, f)
    assert rep.ok and rep.expected == pytest.approx(f(0.0))


def test_insufficient_smoothness():
    with pytest.raises(InsufficientSmoothness):
        pair_derivative(dirac_bump(0), 2, math.cos)
    with pytest.raises(InsufficientSmoothness):
        pair_derivative(dirac_bump(0, order=1), 1, math.cos)


@settings(max_examples=15, deadline=None)
@given(st.floats(-0.8, 0.8), st.lists(st.floats(-2, 2), min_size=1, max_size=5))
def test_pairing_polynomials_exactly(r, c):
    def f(x):
        return sum(ci * x**i for i, ci in enumerate(c))

    rep = pair(dirac_bump(r), f, schedule=(len(c) + 1, len(c) + 2, len(c) + 3), expected=f(r))
    assert rep.defect <= 1e-9 * max(1.0, sum(abs(ci) for ci in c))


def test_report_json():
    j = pair(dirac_bump(0), math.cos, expected=1.0).to_json()
    assert j["stabilized"] is True and j["defect"] < 1e-6 and len(j["values"]) == len(j["degrees"])
