import random
from fractions import Fraction as Fr

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lrgauge.cantor import contiguous_interval, v_interval
from lrgauge.functions import (
    CounterexampleF,
    F_eval,
    abs_function,
    f_eval,
    integrate_abs_pow,
    polynomial,
    vn_integral_exact,
)
from lrgauge.numerics import Enclosure
from lrgauge.partitions import DepthExceeded, OutOfDomain, Segment
from oracles import F_float, gap_integral_float, simpson

F = CounterexampleF()
E = CounterexampleF(variant="remark-e")
unit = st.fractions(min_value=0, max_value=1, max_denominator=5000)


def test_point_values():
    assert F_eval(F, Fr(1, 2)) == Enclosure.exact(1)
    assert F_eval(F, 0) == Enclosure.exact(0)
    assert F_eval(F, Fr(3, 8)) == Enclosure.exact(Fr(1, 2))
    assert f_eval(F, Fr(3, 8)) == 18
    assert f_eval(F, Fr(1, 2)) == 0 and f_eval(F, 0) == 0
    with pytest.raises(OutOfDomain):
        F_eval(F, 2)


def test_deep_points_are_enclosed():
    shallow = CounterexampleF(cutoff_depth=3)
    x = contiguous_interval("LLLLL").midpoint  # rank-6 gap
    assert shallow.value(x) == Enclosure(0, Fr(1, 4))
    with pytest.raises(DepthExceeded):
        shallow.derivative(x)
    assert F.value(x) == Enclosure.exact(Fr(1, 6))


@given(unit)
def test_values_match_float_oracle(x):
    v = F.value(x)
    assert v.is_exact and 0 <= v.lo <= 1
    assert abs(float(v.lo) - F_float(float(x))) < 1e-9
    w = E.value(x)
    assert abs(float(w.lo) - F_float(float(x), variant="remark-e")) < 1e-9


def test_continuity_at_piece_ends():
    for m in range(1, 6):
        pieces = F.gap_pieces(Fr(0), m)
        for a, b in zip(pieces, pieces[1:]):
            assert a.value(a.hi) == b.value(b.lo)
        assert pieces[0].value(pieces[0].lo) == 0 == pieces[-1].value(pieces[-1].hi)


def test_derivative_against_central_difference():
    rng = random.Random(7)
    for _ in range(100):
        m = rng.randint(1, 6)
        pcs = [p for p in F.gap_pieces(Fr(1, 3**m), m) if len(p.loc) > 1]
        pc = rng.choice(pcs)
        x = pc.lo + pc.length * Fr(rng.randint(1, 999), 1000)
        h = pc.length / 10**6
        fd = (F.value(x + h).lo - F.value(x - h).lo) / (2 * h)
        # the profile is cubic, so the central difference is off by exactly
        # |F'''| h^2 / 6 = 2 H h^2 / L^3
        assert abs(fd - F.derivative(x)) == 2 * Fr(1, m) * h**2 / pc.length**3


def test_plateau_integrals_exact():
    for n in range(1, 9):
        for r in (1, 2, 3):
            e = integrate_abs_pow(F, v_interval("L" * (n - 1)), 0, 0, 0, r)
            assert e.is_exact and e.lo == vn_integral_exact(n, r) == Fr(1, 2 * n**r * 3**n)


def test_whole_gap_strictly_larger():
    for n in range(1, 9):
        for r in (1, 2, 3):
            u = F.integrate_abs_pow(contiguous_interval("L" * (n - 1)), 0, r=r)
            assert u.lo > vn_integral_exact(n, r)
            assert abs(float(u.mid) - gap_integral_float(n, r)) < 1e-9 * 3.0**-n


def test_spec_integral_examples():
    assert F.integrate_abs_pow(Segment(Fr(5, 12), Fr(7, 12)), 0) == Enclosure.exact(Fr(1, 6))
    assert F.integrate_abs_pow(Segment(Fr(1, 9), Fr(2, 9)), 0).lo >= Fr(1, 36)
    assert F.integrate_abs_pow(Segment(Fr(5, 12), Fr(1, 2)), 1) == Enclosure.exact(0)


@pytest.mark.parametrize("r", [1, 2])
def test_integral_against_simpson(r):
    rng = random.Random(r)
    for _ in range(4):
        a, b = sorted(Fr(rng.randint(0, 999), 1000) for _ in range(2))
        if a == b:
            continue
        c = Fr(rng.randint(0, 20), 100)
        e = F.integrate_abs_pow(Segment(a, b), c, r=r, max_width=Fr(1, 10**6))
        ref = simpson(lambda y: abs(F_float(y) - float(c)) ** r, float(a), float(b), 60000)
        assert abs(ref - float(e.mid)) < 2e-3 * float(b - a)
        assert e.width <= Fr(1, 10**6)


def test_sloped_integral_converges():
    seg = Segment(0, Fr(1, 3))
    coarse = F.integrate_abs_pow(seg, Fr(1, 100), Fr(1, 3), 0, 1, Fr(1, 10**3))
    fine = F.integrate_abs_pow(seg, Fr(1, 100), Fr(1, 3), 0, 1, Fr(1, 10**5))
    assert fine.width <= Fr(1, 10**5)
    assert coarse.lo <= fine.hi and fine.lo <= coarse.hi


@pytest.mark.parametrize("theta", [Fr(1, 20), Fr(1, 7)])
def test_sublevel_measure_agrees_with_sets(theta):
    seg = Segment(0, Fr(1, 3))
    t = Enclosure.exact(theta)
    m = F.abs_sublevel_measure(seg, 0, t, Fr(1, 10**5))
    inner, outer = F.abs_sublevel(seg, 0, t, Fr(1, 10**4), max_nodes=3000)
    assert inner.measure <= m.hi and m.lo <= outer.measure


def test_remark_variant_plateau_is_one():
    pl = E.plateau("")
    assert E.value(pl.midpoint) == Enclosure.exact(1)
    assert pl.length == Fr(1, 3) * Fr(1, 4)


def test_polynomial_functions():
    p = polynomial((0, 0, 1))
    assert p.value(Fr(1, 2)).lo == Fr(1, 4) and p.derivative(Fr(1, 2)) == 1
    a = abs_function()
    assert a.integrate_abs_pow(Segment(-1, 1), 0) == Enclosure.exact(1)
    assert a.sup_abs == 1
