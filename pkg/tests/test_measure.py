import random

import pytest
from hypothesis import given, strategies as st

from lcfield.core import D, ONE, LCNumber, add, cmp, shift, valuation
from lcfield.errors import IndeterminateOrder
from lcfield.measure import (
    EMPTY,
    Interval,
    MeasurableSet,
    ae_eq,
    closed,
    complement_within,
    half_open,
    integrate,
    is_subset,
    measure,
    on,
    open_interval,
    piecewise,
    piecewise_from_json,
    piecewise_to_json,
    point,
    pw_add,
    pw_product,
    set_difference,
    set_from_json,
    set_intersect,
    set_to_json,
    set_union,
)
from lcfield.series import X, constant, derivatives_at, polynomial

from conftest import coeff_close


def S(*ivs):
    return MeasurableSet.of(*ivs)


def test_measure_examples():
    assert measure(S(closed(0, 1), closed(2, 3))) == LCNumber.real(2)
    assert measure(S(closed(0, D))) == D
    assert measure(S(closed(0, 1), closed(1 + D, 2))) == LCNumber.from_dict({0: 2, 1: -1})
    assert measure(EMPTY).is_zero()


def test_union_and_intersection_examples():
    assert set_intersect(S(closed(0, 2)), S(closed(1, 3))) == S(closed(1, 2))
    assert set_union(S(closed(0, 1)), S(closed(1, 2))) == S(closed(0, 2))
    assert measure(set_union(S(closed(0, 2)), S(closed(1, 3)))) == LCNumber.real(3)


def test_touching_open_ends_stay_apart():
    u = set_union(S(half_open(0, 1)), S(open_interval(1, 2)))
    assert len(u) == 2
    assert not u.contains(1)
    assert len(set_union(S(half_open(0, 1)), S(closed(1, 2)))) == 1


def test_indeterminate_endpoints():
    a = closed(0, LCNumber.from_dict({0: 1}, 2))  # 1, known only below d^2
    with pytest.raises(IndeterminateOrder):
        set_intersect(S(a), S(closed(1, 2)))


def test_complement_and_difference():
    c = complement_within(S(closed(D, 2 * D)), closed(0, 1))
    assert measure(c) == add(ONE, -D)
    assert set_difference(S(closed(0, 3)), S(open_interval(1, 2))) == S(closed(0, 1), closed(2, 3))


def test_integrate_examples():
    assert integrate(on(closed(0, 1), X), closed(0, 1)) == LCNumber.real(0.5)
    third = integrate(on(closed(0, 1), polynomial([0, 0, 1])), closed(0, 1))
    assert third[0] == pytest.approx(1 / 3, rel=1e-15)
    assert integrate(on(closed(0, D), constant(1)), closed(0, D)) == D


def test_ae_eq_examples():
    f = on(closed(0, 1), constant(1))
    g = piecewise([(half_open(0, 1), constant(1)), (point(1), constant(7))])
    assert ae_eq(f, g, closed(0, 1))
    assert not ae_eq(on(closed(0, 1), X), on(closed(0, 1), polynomial([0, 0, 1])), closed(0, 1))
    assert integrate(f, closed(0, 1)) == integrate(g, closed(0, 1))


def test_json_round_trips():
    A = S(closed(0, D), half_open(1, 2))
    assert set_from_json(set_to_json(A)) == A
    f = piecewise([(closed(0, D), polynomial([1, D])), (open_interval(1, 2), X)])
    assert piecewise_from_json(piecewise_to_json(f)) == f


def test_monad_is_not_an_interval():
    r = LCNumber.real(0.5)
    # infinitesimal radius: a + 2(b - a) is infinitely close to r but excluded
    eps = D * D
    iv = closed(add(r, -eps), add(r, eps))
    probe = add(iv.lo, 2 * iv.length)
    assert valuation(add(probe, -r)) > 0 and not iv.contains(probe)
    # real radius: the interval also holds points not infinitely close to r
    iv = closed(0.25, 0.75)
    probe = add(r, LCNumber.real(0.125))
    assert iv.contains(probe) and valuation(add(probe, -r)) == 0
    assert all(iv.contains(add(r, shift(ONE, q))) for q in (1, 2, 7))


finite_ends = st.one_of(
    st.integers(-3, 3).map(LCNumber.real),
    st.tuples(st.integers(-3, 3), st.integers(-2, 2), st.sampled_from([1, 2])).map(
        lambda t: LCNumber.from_dict({0: t[0], t[2]: t[1]})
    ),
)


@st.composite
def intervals(draw):
    a, b = draw(finite_ends), draw(finite_ends)
    if cmp(a, b) > 0:
        a, b = b, a
    if cmp(a, b) == 0:
        return point(a)
    return Interval(a, b, draw(st.booleans()), draw(st.booleans()))


sets = st.lists(intervals(), max_size=4).map(lambda ivs: MeasurableSet.of(*ivs))


@given(sets, sets)
def test_inclusion_exclusion(A, B):
    lhs = add(measure(set_union(A, B)), measure(set_intersect(A, B)))
    rhs = add(measure(A), measure(B))
    assert coeff_close(lhs, rhs)


@given(sets, sets)
def test_monotone(A, B):
    sub = set_intersect(A, B)
    assert is_subset(sub, A)
    assert cmp(measure(sub), measure(A)) <= 0


@given(st.lists(st.tuples(st.integers(-2, 3), st.floats(0.1, 4)), min_size=1, max_size=6))
def test_sum_of_lengths_has_a_witness(parts):
    # disjoint intervals [k, k + c d^q]
    ivs = [closed(k * 10, add(LCNumber.real(k * 10), LCNumber.monomial(c, q))) for k, (q, c) in enumerate(parts)]
    A = MeasurableSet.of(*ivs)
    lam = valuation(measure(A))
    assert any(valuation(iv.length) == lam for iv in A)


@pytest.mark.parametrize("seed", range(5))
def test_ftc_round_trip(seed):
    rng = random.Random(seed)
    c = [rng.uniform(-2, 2) for _ in range(rng.randint(1, 6))]
    f = on(closed(-1, 3), polynomial(c))

    def F(x):
        return integrate(f, closed(-1, x))

    for x0 in (-0.5, 0.0, 1.25, 2.5):
        got = derivatives_at(F, x0, 1)[1]
        want = sum(ci * x0**i for i, ci in enumerate(c))
        assert abs(got - want) <= 1e-12 * max(1.0, abs(want))


def test_additivity_of_integral():
    f = pw_add(on(closed(0, 2), X), on(closed(1, 3), constant(2)))
    parts = integrate(f, closed(0, 1.5)) + integrate(f, open_interval(1.5, 3))
    assert coeff_close(parts, integrate(f, closed(0, 3)))
    sq = pw_product(f, f)
    assert integrate(sq, closed(0, 3))[0] > 0
