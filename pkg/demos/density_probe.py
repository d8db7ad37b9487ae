"""Density at 0 of the set where F stays within its local L^1 mean oscillation.

At each Cantor endpoint the fraction of [0, k] covered by the set climbs to 1
as k shrinks, which is what approximate continuity asks for.
"""

from fractions import Fraction

from lrgauge.functions import CounterexampleF
from lrgauge.lr_analysis import density_at_zero, omega, s_set

F = CounterexampleF()
ks = [Fraction(1, 3**k) for k in range(4, 10)]
h = Fraction(1, 81)

print("x      " + " ".join(f"k=3^-{k}" for k in range(4, 10)))
for x, sign in [(Fraction(0), 1), (Fraction(1, 3), 1), (Fraction(2, 3), -1), (Fraction(2, 9), 1)]:
    hh = sign * h
    theta = omega(F, x, hh, 1, Fraction(1, 10**9))
    inner, _ = s_set(F, x, hh, 1, Fraction(1, 10**6), theta=theta)
    if hh < 0:
        inner = inner.reflect()
    dens = density_at_zero(inner, ks)
    print(f"{str(x):<6} " + " ".join(f"{float(d):7.3f}" for d in dens))
