"""Adversarial variational sums of the Cantor counterexample under several gauges.

Every gauge, however fine near the Cantor set, admits divisions tagged on C
whose L^1 variational sum passes any level we ask for.
"""

from fractions import Fraction

from lrgauge.functions import CounterexampleF
from lrgauge.partitions import CantorRankGauge, ConstantGauge, PiecewiseConstantGauge
from lrgauge.variation import variation_search

F = CounterexampleF()
gauges = [
    ConstantGauge(Fraction(1, 5)),
    ConstantGauge(Fraction(1, 100)),
    PiecewiseConstantGauge((Fraction(1, 3), Fraction(2, 3)), (Fraction(1, 20), Fraction(1, 2), Fraction(1, 200))),
    CantorRankGauge({"L": Fraction(1, 300), "RR": Fraction(1, 4)}, Fraction(1, 1000)),
]

for g in gauges:
    print(g.describe())
    for target in (10, 100):
        rep = variation_search(F, g, 1, target)
        n, l = rep.params
        print(f"  target {target:>4}: n={n} l={l:>2} intervals={len(rep.division):>5} "
              f"sum >= {float(rep.sum.lo):9.2f}  bound {float(rep.paper_bound):8.2f}")
