"""L^r averages around a point: Delta_r, the modulus omega, derivative estimates, S-sets."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .numerics import DEFAULT_WIDTH, Enclosure, IntervalUnion, RatLike, fmt_rat, rat, root_enclosure
from .partitions import Segment, TaggedInterval, oriented


class ZeroLength(ValueError):
    pass


def _exact_value(F, x: Fraction) -> Fraction:
    v = F.value(x)
    if not v.is_exact:
        raise ValueError(f"F({x}) is only known as {v}; pick a point that resolves")
    return v.lo


def delta_r(F, ti: TaggedInterval, r: int, max_width: RatLike = DEFAULT_WIDTH) -> Enclosure:
    """((1/|I|) * integral over I of |F(y) - F(x)|**r)**(1/r) for ``ti = (I, x)``."""
    if r < 1:
        raise ValueError("r must be a positive integer")
    max_width = rat(max_width)
    c = _exact_value(F, ti.tag)
    L = ti.seg.length
    mean = F.integrate_abs_pow(ti.seg, c, 0, ti.tag, r, max_width * L / 2) / L
    return root_enclosure(Enclosure(max(mean.lo, 0), mean.hi), r, max_width / 2)


def omega(F, x: RatLike, h: RatLike, r: int, max_width: RatLike = DEFAULT_WIDTH) -> Enclosure:
    """Delta_r on the oriented segment between ``x`` and ``x + h``, tagged at ``x``."""
    x, h = rat(x), rat(h)
    if h == 0:
        raise ZeroLength("h must be nonzero")
    return delta_r(F, TaggedInterval(oriented(x, h), x), r, max_width)


@dataclass(frozen=True)
class ProbeSeries:
    hs: tuple[Fraction, ...]
    readings: tuple[Enclosure, ...]

    def __post_init__(self):
        if len(self.hs) != len(self.readings):
            raise ValueError("one reading per h")
        if any(abs(a) <= abs(b) for a, b in zip(self.hs, self.hs[1:])):
            raise ValueError("|h| must be strictly decreasing")

    def nonincreasing(self) -> bool:
        """Certified: each reading's upper end is at most the previous lower end."""
        return all(b.hi <= a.lo for a, b in zip(self.readings, self.readings[1:]))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["h", "reading.lo", "reading.hi"])
        for h, e in zip(self.hs, self.readings):
            w.writerow([fmt_rat(h), fmt_rat(e.lo), fmt_rat(e.hi)])
        return buf.getvalue()


def lr_continuity_series(F, x: RatLike, r: int, h_list: Sequence[RatLike],
                         max_width: RatLike = Fraction(1, 10**8)) -> ProbeSeries:
    hs = tuple(rat(h) for h in h_list)
    return ProbeSeries(hs, tuple(omega(F, x, h, r, max_width) for h in hs))


# -- L^r derivative ------------------------------------------------------


@dataclass(frozen=True)
class DerivativeEstimate:
    h: Fraction
    alpha: Fraction
    residual: Enclosure


def _objective(F, x, h, alpha, r, width) -> Enclosure:
    # ((1/h) * integral_{-h}^{h} |F(x+t) - F(x) - alpha t|^r dt)^(1/r)
    c = _exact_value(F, x)
    total = F.integrate_abs_pow(Segment(x - h, x + h), c, alpha, x, r, width * h / 2) / h
    return root_enclosure(Enclosure(max(total.lo, 0), total.hi), r, width / 2)


def _alpha_closed_form(F, x, h, width) -> Fraction:
    # alpha = 3/(2h^3) * int t G(t), with G(t) = F(x+t) - F(x); the cross
    # term comes from |G - t|^2 = G^2 - 2tG + t^2
    c = _exact_value(F, x)
    seg = Segment(x - h, x + h)
    w = width * h**3 / 8
    g2 = F.integrate_abs_pow(seg, c, 0, x, 2, w)
    d2 = F.integrate_abs_pow(seg, c, 1, x, 2, w)
    t2 = Fraction(2) * h**3 / 3
    cross = (g2 + t2 - d2) / 2
    return (Fraction(3) / (2 * h**3) * cross).mid


def _snap(v: Fraction, bits: int = 64) -> Fraction:
    return Fraction(round(v * 2**bits), 2**bits)


def _alpha_search(F, x, h, r, width, tol) -> Fraction:
    M = 2 * (F.sup_abs / h) + 1
    lo, hi = -M, M
    # compare raw integrals: near the minimum they move by about h^(r+2) per
    # unit of alpha^2, far below a root taken at the caller's width
    c = _exact_value(F, x)
    seg = Segment(x - h, x + h)
    w = min(width, tol) * h ** (r + 2)
    f = lambda a: F.integrate_abs_pow(seg, c, a, x, r, w).mid
    while hi - lo > tol:
        m1 = _snap(lo + (hi - lo) / 3)
        m2 = _snap(hi - (hi - lo) / 3)
        v1, v2 = f(m1), f(m2)
        # on a tie convexity puts a minimizer in [m1, m2]; keeping both ends
        # keeps a symmetric bracket symmetric
        if v1 == v2:
            lo, hi = m1, m2
        elif v1 < v2:
            hi = m2
        else:
            lo = m1
    return _snap((lo + hi) / 2)


def lr_derivative_estimate(
    F, x: RatLike, r: int, h_list: Sequence[RatLike], method: str = "auto",
    max_width: RatLike = Fraction(1, 10**12), tol: RatLike = Fraction(1, 10**10),
) -> tuple[list[DerivativeEstimate], bool]:
    """Best-fitting slope alpha per h and the residual objective at it.

    ``method`` is ``closed`` (r = 2 projection), ``search`` (ternary search on
    the convex objective) or ``auto``.  The verdict is True when residual/h
    certifiably decreases along ``h_list``, or when every residual is 0.
    """
    x, max_width, tol = rat(x), rat(max_width), rat(tol)
    if method == "auto":
        method = "closed" if r == 2 else "search"
    if method == "closed" and r != 2:
        raise ValueError("the closed form exists only for r = 2")
    out = []
    for h in map(rat, h_list):
        if h <= 0:
            raise ValueError("h must be positive")
        if method == "closed":
            a = _alpha_closed_form(F, x, h, max_width)
        else:
            a = _alpha_search(F, x, h, r, max_width, tol)
        out.append(DerivativeEstimate(h, a, _objective(F, x, h, a, r, max_width)))
    if all(e.residual.hi == 0 for e in out):
        return out, True
    ratios = [e.residual / e.h for e in out]
    return out, all(b.hi < a.lo for a, b in zip(ratios, ratios[1:]))


# -- S-sets and density --------------------------------------------------


def s_set(F, x: RatLike, h: RatLike, r: int, max_width: RatLike = Fraction(1, 10**6),
          theta: Enclosure | None = None) -> tuple[IntervalUnion, IntervalUnion]:
    """Inner/outer unions for {t in <0, h> : |F(x+t) - F(x)| <= omega_x(h)}, in t."""
    x, h = rat(x), rat(h)
    if theta is None:
        theta = omega(F, x, h, r, Fraction(1, 10**9))
    seg = oriented(x, h)
    inner, outer = F.abs_sublevel(seg, _exact_value(F, x), theta, rat(max_width))
    inner, outer = inner.shift(-x), outer.shift(-x)
    return inner, outer


def density_at_zero(u: IntervalUnion, k_list: Sequence[RatLike]) -> list[Fraction]:
    """Exact relative measure of ``u`` in ``[0, k]`` for each k."""
    return [u.clip(0, k).measure / k for k in map(rat, k_list)]


def transfer_check(F, x: RatLike, h: RatLike, r: int, y: RatLike, z: RatLike,
                   theta_minus: Enclosure, theta_plus: Enclosure) -> bool:
    """|F(y) - F(z)| <= omega_x(-h) + omega_x(h) for y <= x <= z in the S-sets.

    Both points are checked against the fixed thresholds of the two S-sets
    they come from, so the inequality follows from the triangle inequality.
    """
    diff = (F.value(rat(y)) - F.value(rat(z))).abs()
    return diff.hi <= (theta_minus + theta_plus).hi
