"""Riemann-type sums for a candidate pair (f, F) and refinement studies over gauges."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .functions import CounterexampleF, PiecewisePolynomial, polynomial
from .numerics import Enclosure, RatLike, fmt_rat, rat, root_enclosure
from .partitions import ConstantGauge, Division, Segment, cousin_division, validate_division
from .variation import Unreachable, VariationReport, variation_search

TERM_WIDTH = Fraction(1, 10**12)


@dataclass(frozen=True)
class CandidatePair:
    """Integrand ``f`` and primitive candidate ``F``; ``f`` is read off ``F.derivative``
    unless an explicit ``integrand`` is given."""

    name: str
    F: object
    integrand: PiecewisePolynomial | None = None

    def f(self, x: Fraction) -> Fraction:
        if self.integrand is not None:
            return self.integrand.value(x).lo
        return self.F.derivative(x)

    @property
    def domain(self) -> Segment:
        return self.F.domain


def candidate_pair(name: str) -> CandidatePair:
    if name == "smooth":
        return CandidatePair("smooth", polynomial((0, 0, 1), name="y^2"), polynomial((0, 2), name="2y"))
    if name == "zero":
        return CandidatePair("zero", polynomial((0,), name="0"), polynomial((0,), name="0"))
    if name == "main":
        return CandidatePair("main", CounterexampleF())
    if name == "remark-e":
        return CandidatePair("remark-e", CounterexampleF(variant="remark-e"))
    raise ValueError(f"unknown pair {name!r}")


def hkr_terms(p: CandidatePair, d: Division, r: int, max_width: RatLike = TERM_WIDTH) -> list[Enclosure]:
    if not validate_division(d):
        raise ValueError("invalid division")
    w = rat(max_width) / max(len(d), 1)
    out = []
    for t in d:
        v = p.F.value(t.tag)
        if not v.is_exact:
            raise ValueError(f"F({t.tag}) does not resolve")
        slope = p.f(t.tag)
        L = t.seg.length
        mean = p.F.integrate_abs_pow(t.seg, v.lo, slope, t.tag, r, w * L / 2) / L
        out.append(root_enclosure(Enclosure(max(mean.lo, 0), mean.hi), r, w / 2))
    return out


def hkr_sum(p: CandidatePair, d: Division, r: int, max_width: RatLike = TERM_WIDTH) -> Enclosure:
    """Sum over d of ((1/|I|) * integral_I |F(y) - F(x) - f(x)(y - x)|**r)**(1/r)."""
    return sum(hkr_terms(p, d, r, max_width), Enclosure.exact(0))


@dataclass(frozen=True)
class StudyRow:
    delta: Fraction
    sum: Enclosure
    verdict: str
    witness: VariationReport | None = None


def hkr_refinement_study(
    p: CandidatePair, schedule: Sequence[RatLike], r: int, target: RatLike = 100,
    l_max: int = 24, max_width: RatLike = Fraction(1, 10**6),
) -> list[StudyRow]:
    """Cousin-division sums for each constant gauge in a strictly decreasing schedule.

    For the main counterexample pair every level also runs the adversarial search;
    a certified sum of at least ``target`` marks the level as falsified.
    Otherwise a level reads as consistent while the upper ends keep falling
    below the previous lower ends (the first level is consistent by default).
    ``max_width`` bounds the enclosure width of each cousin-division sum.
    """
    deltas = [rat(x) for x in schedule]
    if any(b >= a for a, b in zip(deltas, deltas[1:])) or any(x <= 0 for x in deltas):
        raise ValueError("schedule must be strictly decreasing and positive")
    rows: list[StudyRow] = []
    for delta in deltas:
        g = ConstantGauge(delta)
        total = hkr_sum(p, cousin_division(p.domain, g), r, max_width)
        witness = None
        if isinstance(p.F, CounterexampleF) and p.F.variant == "main":
            try:
                witness = variation_search(p.F, g, r, target, l_max)
            except Unreachable:
                witness = None
        if witness is not None:
            verdict = f"falsified at level {fmt_rat(rat(target))}"
        elif not rows or total.hi == 0 or total.hi < rows[-1].sum.lo:
            verdict = "consistent with integrability"
        else:
            verdict = "inconclusive"
        rows.append(StudyRow(delta, total, verdict, witness))
    return rows


def study_csv(rows: Sequence[StudyRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["delta", "sum.lo", "sum.hi", "verdict"])
    for row in rows:
        w.writerow([fmt_rat(row.delta), fmt_rat(row.sum.lo), fmt_rat(row.sum.hi), row.verdict])
    return buf.getvalue()
