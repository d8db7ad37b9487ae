import random
from fractions import Fraction as Fr

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lrgauge.functions import CounterexampleF, abs_function, polynomial
from lrgauge.lr_analysis import (
    ProbeSeries,
    ZeroLength,
    delta_r,
    density_at_zero,
    lr_continuity_series,
    lr_derivative_estimate,
    omega,
    s_set,
    transfer_check,
)
from lrgauge.numerics import Enclosure, IntervalUnion
from lrgauge.partitions import TaggedInterval

F = CounterexampleF()
coef = st.fractions(min_value=-3, max_value=3, max_denominator=6)


def test_delta_examples():
    assert delta_r(polynomial((Fr(2, 3),)), TaggedInterval.of(0, 1, Fr(1, 2)), 2) == Enclosure.exact(0)
    assert delta_r(polynomial((0, 1)), TaggedInterval.of(0, 1, 0), 1) == Enclosure.exact(Fr(1, 2))
    # tag at the Cantor end of a rank-5 gap
    ti = TaggedInterval.of(Fr(1, 243), Fr(2, 243), Fr(1, 243))
    assert delta_r(F, ti, 1).lo >= Fr(1, 10)


@given(st.lists(coef, min_size=1, max_size=4), coef, st.integers(1, 3))
def test_delta_invariant_under_constants(cs, k, r):
    p = polynomial(tuple(cs))
    q = polynomial((cs[0] + k,) + tuple(cs[1:]))
    ti = TaggedInterval.of(0, 1, Fr(1, 3))
    a, b = delta_r(p, ti, r), delta_r(q, ti, r)
    assert a.lo <= b.hi and b.lo <= a.hi


def test_omega():
    with pytest.raises(ZeroLength):
        omega(F, 0, 0, 1)
    assert omega(F, 0, 1, 1) == delta_r(F, TaggedInterval.of(0, 1, 0), 1)
    assert omega(F, Fr(1, 2), -Fr(1, 20), 1) == Enclosure.exact(0)
    assert omega(F, 0, Fr(1, 9), 1).hi < omega(F, 0, Fr(1, 3), 1).lo


def test_continuity_series_decreases_at_zero():
    s = lr_continuity_series(F, 0, 1, [Fr(1, 3**k) for k in range(1, 6)])
    assert s.nonincreasing()
    assert s.to_csv().splitlines()[0] == "h,reading.lo,reading.hi"
    with pytest.raises(ValueError):
        ProbeSeries((Fr(1, 9), Fr(1, 3)), (Enclosure.exact(0),) * 2)


def test_derivative_of_square():
    p = polynomial((0, 0, 1))
    est, ok = lr_derivative_estimate(p, Fr(1, 2), 2, [Fr(1, 1000)])
    assert abs(est[0].alpha - 1) < Fr(1, 10**6) and ok
    est1, _ = lr_derivative_estimate(p, Fr(1, 2), 1, [Fr(1, 1000)])
    assert abs(est1[0].alpha - 1) < Fr(1, 10**6)


def test_abs_is_not_lr_differentiable_at_zero():
    est, ok = lr_derivative_estimate(abs_function(), 0, 1, [Fr(1, 2), Fr(1, 4), Fr(1, 8)])
    assert all(e.alpha == 0 for e in est)
    # residual is h: ratio constant, not o(h)
    assert [e.residual for e in est] == [Enclosure.exact(e.h) for e in est]
    assert not ok


def test_plateau_residual_is_zero():
    for r in (1, 2, 3):
        est, ok = lr_derivative_estimate(F, Fr(1, 2), r, [Fr(1, 100), Fr(1, 1000)])
        assert ok and all(e.alpha == 0 and e.residual == Enclosure.exact(0) for e in est)


def test_closed_form_matches_search():
    rng = random.Random(3)
    for _ in range(50):
        p = polynomial(tuple(Fr(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(4)))
        x, h = Fr(1, 2), Fr(1, 10)
        a, _ = lr_derivative_estimate(p, x, 2, [h], method="closed")
        b, _ = lr_derivative_estimate(p, x, 2, [h], method="search", tol=Fr(1, 10**8))
        assert abs(a[0].alpha - b[0].alpha) < Fr(1, 10**6)


def test_s_set_examples():
    inner, outer = s_set(polynomial((0, 1)), 0, 1, 1)
    assert inner == outer == IntervalUnion(((Fr(0), Fr(1, 2)),))
    c_in, c_out = s_set(polynomial((Fr(1, 3),)), Fr(1, 2), Fr(1, 4), 1)
    assert c_in.measure == Fr(1, 4) == c_out.measure


def test_s_set_sandwich_and_density():
    inner, outer = s_set(F, 0, Fr(1, 3), 1, Fr(1, 10**6))
    assert inner.measure <= outer.measure <= inner.measure + Fr(1, 10**6)
    dens = density_at_zero(inner, [Fr(1, 3**k) for k in range(1, 8)])
    assert all(b >= a for a, b in zip(dens, dens[1:]))
    assert dens[-1] == 1


def test_density_examples():
    assert density_at_zero(IntervalUnion(((Fr(0), Fr(1)),)), [Fr(1, 2)]) == [1]
    assert density_at_zero(IntervalUnion(((Fr(1, 4), Fr(1)),)), [Fr(1, 2)]) == [Fr(1, 2)]


def test_transfer_check():
    x, h = Fr(1, 3), Fr(1, 9)
    tp, tm = omega(F, x, h, 1), omega(F, x, -h, 1)
    right, _ = s_set(F, x, h, 1, theta=tp)
    left, _ = s_set(F, x, -h, 1, theta=tm)
    ys = [x + a for a, _ in left.parts] + [x + b for _, b in left.parts]
    zs = [x + a for a, _ in right.parts] + [x + b for _, b in right.parts]
    for y in ys:
        for z in zs:
            assert transfer_check(F, x, h, 1, y, z, tm, tp)
