from fractions import Fraction as Fr

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lrgauge.numerics import (
    Enclosure,
    IntervalUnion,
    NegativeRadicand,
    enclosure_arith,
    fmt_rat,
    iroot_floor,
    rat,
    root_enclosure,
    union_measure,
)
from oracles import bisect_root

small = st.fractions(min_value=-50, max_value=50, max_denominator=1000)


@st.composite
def enclosures(draw):
    a, b = draw(small), draw(small)
    return Enclosure(min(a, b), max(a, b))


def test_rat_refuses_floats():
    with pytest.raises(TypeError):
        rat(0.5)
    assert rat("3/6") == Fr(1, 2)
    assert fmt_rat(Fr(4, 2)) == "2/1"


def test_empty_enclosure_rejected():
    with pytest.raises(ValueError):
        Enclosure(1, 0)


@given(enclosures(), enclosures(), st.sampled_from(["add", "sub", "mul"]))
def test_arith_contains_pointwise_results(a, b, op):
    out = enclosure_arith(a, b, op)
    f = {"add": lambda x, y: x + y, "sub": lambda x, y: x - y, "mul": lambda x, y: x * y}[op]
    for x in (a.lo, a.mid, a.hi):
        for y in (b.lo, b.mid, b.hi):
            assert out.contains(f(x, y))


@given(enclosures(), st.integers(1, 5))
def test_power_contains_pointwise(a, k):
    p = a**k
    for x in (a.lo, a.mid, a.hi):
        assert p.contains(x**k)


def test_pow_k_needs_nonnegative_base():
    with pytest.raises(ValueError):
        enclosure_arith(Enclosure(-1, 1), 2, "pow_k")


@given(st.integers(0, 10**30), st.integers(1, 7))
def test_iroot_floor(n, r):
    y = iroot_floor(n, r)
    assert y**r <= n < (y + 1) ** r


@given(st.fractions(min_value=0, max_value=1000, max_denominator=10**6), st.integers(1, 5))
def test_root_enclosure_brackets_true_root(x, r):
    e = root_enclosure(x, r, Fr(1, 10**9))
    assert e.lo**r <= x <= e.hi**r
    assert e.width <= Fr(1, 10**9)
    if x.denominator == 1 and x > 0:
        assert float(e.lo) <= bisect_root(x.numerator, r) + 1e-9 <= float(e.hi) + 2e-9


def test_root_examples():
    assert root_enclosure(4, 2).is_exact and root_enclosure(4, 2).lo == 2
    e = root_enclosure(2, 2, Fr(1, 10**12))
    assert e.lo < Fr(14142135623731, 10**13) < e.hi
    with pytest.raises(NegativeRadicand):
        root_enclosure(Enclosure(-1, 1), 2)


def test_root_r1_keeps_short_fractions():
    assert root_enclosure(Fr(3, 20), 1) == Enclosure.exact(Fr(3, 20))
    e = root_enclosure(Fr(1, 3**60), 1, Fr(1, 10**6))
    assert e.contains(Fr(1, 3**60)) and e.width <= Fr(1, 10**6)


@st.composite
def unions(draw):
    pts = sorted(draw(st.lists(st.fractions(0, 10, max_denominator=50), max_size=8)))
    return IntervalUnion(tuple(zip(pts[::2], pts[1::2])))


@given(unions(), unions())
def test_union_measure_inclusion_exclusion(u, v):
    assert u.union(v).measure + u.intersect(v).measure == u.measure + v.measure


@given(unions(), st.fractions(-5, 5, max_denominator=20))
def test_shift_and_reflect_preserve_measure(u, d):
    assert u.shift(d).measure == u.measure == u.reflect().measure


def test_union_normalizes():
    u = IntervalUnion(((Fr(0), Fr(1)), (Fr(1), Fr(2)), (Fr(3), Fr(3))))
    assert u.parts == ((0, 2),)
    assert union_measure(u) == 2
    assert u.clip(Fr(1, 2), 5).measure == Fr(3, 2)
