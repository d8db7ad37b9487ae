from fractions import Fraction as Fr

from hypothesis import given
from hypothesis import strategies as st

from lrgauge import poly as P
from oracles import simpson

coef = st.fractions(min_value=-4, max_value=4, max_denominator=8)
polys = st.lists(coef, min_size=1, max_size=5).map(lambda c: P.poly(*c)).filter(lambda p: len(p) > 1)


def test_compose_affine():
    p = P.poly(1, 2, 3)  # 1 + 2y + 3y^2
    q = P.compose_affine(p, 1, 2)  # p(1 + 2u)
    for u in (Fr(0), Fr(1, 3), Fr(2)):
        assert P.evaluate(q, u) == P.evaluate(p, 1 + 2 * u)


@given(polys)
def test_isolated_roots_bracket_sign_changes(p):
    roots = P.isolate_roots(p, -5, 5, Fr(1, 2**30))
    for lo, hi in roots:
        assert hi - lo <= Fr(1, 2**30)
        if lo == hi:
            assert P.evaluate(p, lo) == 0
    # between brackets the sign is constant: sample a grid
    grid = [Fr(k, 7) - 5 for k in range(71)]
    def bracketed(a, b):
        return any(not (hi < a or lo > b) for lo, hi in roots)
    for a, b in zip(grid, grid[1:]):
        va, vb = P.evaluate(p, a), P.evaluate(p, b)
        if va * vb < 0:
            assert bracketed(a, b)


@given(polys, st.integers(1, 3))
def test_integrate_abs_pow_matches_quadrature(p, r):
    e = P.integrate_abs_pow(p, -1, 1, r, Fr(1, 2**40))
    ref = simpson(lambda y: abs(float(P.evaluate(p, Fr(y)))) ** r, -1.0, 1.0, 4000)
    assert float(e.lo) - 1e-4 <= ref <= float(e.hi) + 1e-4
    assert e.width <= Fr(1, 10**6)


def test_abs_integral_exact_example():
    # integral over [-1, 1] of |y| is 1
    e = P.integrate_abs_pow(P.poly(0, 1), -1, 1, 1, Fr(1, 10**9))
    assert e.is_exact and e.lo == 1


@given(polys)
def test_sublevel_sandwich(p):
    inner, outer = P.sublevel_set(p, -2, 2, Fr(1, 2**30))
    assert inner.measure <= outer.measure <= inner.measure + 10 * Fr(1, 2**30)
    for a, b in inner:
        assert P.evaluate(p, (a + b) / 2) <= 0
