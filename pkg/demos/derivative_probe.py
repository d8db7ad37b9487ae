"""L^r derivative estimates: polynomials recover p'(x); plateaus of F give slope 0 with zero residual."""

from fractions import Fraction

from lrgauge.functions import CounterexampleF, polynomial
from lrgauge.lr_analysis import lr_derivative_estimate

h = Fraction(1, 1000)
for coeffs in [(0, 0, 1), (0, 1, 1, 1), (1, -2, 0, 3)]:
    p, x = polynomial(coeffs), Fraction(1, 3)
    for r in (1, 2, 3):
        (est,), _ = lr_derivative_estimate(p, x, r, [h])
        print(f"{str(coeffs):<16} r={r} alpha - p'(x) = {float(est.alpha - p.derivative(x)): .3e}")

# a cubic term c t^3 biases the L^2 slope by 3 c h^2 / 5, visible in the last rows

F = CounterexampleF()
for x in (Fraction(1, 2), F.plateau("RL").midpoint):
    est, ok = lr_derivative_estimate(F, x, 1, [Fraction(1, 10**3), Fraction(1, 10**4)])
    print(f"F at {x}: alphas {[e.alpha for e in est]} residuals {[e.residual.hi for e in est]} o(h): {ok}")
