"""(delta, r)-variation sums and the divisions that make them blow up on the Cantor set.

For a gauge in one of the closed representations, a rank-n Cantor segment on
which the gauge stays above ``2 * 3**-(n+1)`` is found directly.  Splitting
that segment l more times leaves ``2**l - 1`` gaps; tagging each gap at a
Cantor point just left of it gives a fine division tagged in C whose
Delta_r sum grows like ``2**l / (n + l)``.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal

from .cantor import cantor_endpoints, decompose, extensions, in_cantor, left_adjoining_segment, rank_segment
from .lr_analysis import delta_r
from .numerics import Enclosure, IntervalUnion, RatLike, fmt_rat, rat, root_enclosure
from .partitions import (
    CantorRankGauge,
    ConstantGauge,
    Division,
    Gauge,
    PiecewiseConstantGauge,
    TaggedInterval,
    is_fine,
    validate_division,
)

TERM_WIDTH = Fraction(1, 10**12)
MAX_RANK = 40


class TagSearchFailed(RuntimeError):
    pass


class BadRank(ValueError):
    pass


class Unreachable(RuntimeError):
    def __init__(self, l_max: int):
        super().__init__(f"target not certified within l <= {l_max}")
        self.l_max = l_max


def paper_bound(n: int, l: int, r: int) -> Enclosure:
    """Enclosure of (2**l - 1) / (4**(1/r) * (n + l)); exact for r in {1, 2}."""
    root4 = root_enclosure(4, r, Fraction(1, 10**15))
    return Enclosure(Fraction(2**l - 1, n + l), Fraction(2**l - 1, n + l)) / root4


def exceeds_paper_bound(value: RatLike, n: int, l: int, r: int, count: int | None = None) -> bool:
    """Exact test of value > count / (4**(1/r) * (n + l)), count defaulting to 2**l - 1."""
    value = rat(value)
    count = 2**l - 1 if count is None else count
    if value <= 0:
        return False
    # value * 4^(1/r) * (n+l) > count  <=>  4 * (value * (n+l))^r > count^r
    return 4 * (value * (n + l)) ** r > Fraction(count) ** r


@dataclass(frozen=True)
class VariationReport:
    division: Division
    r: int
    sum: Enclosure
    paper_bound: Fraction
    gauge_descr: str
    params: tuple[int, int] | None = None
    address: str = ""
    terms: tuple[Enclosure, ...] = field(default=(), repr=False)

    def __post_init__(self):
        if self.sum.lo < 0:
            raise ValueError("a variation sum cannot be negative")
        if self.params is not None:
            n, l = self.params
            if not exceeds_paper_bound(self.sum.lo, n, l, self.r):
                raise ValueError("certified sum does not beat the closed-form bound")

    CSV_HEADER = ("n", "l", "r", "k-count", "sum.lo", "sum.hi", "paper_bound", "gauge_descr")

    def csv_row(self) -> tuple[str, ...]:
        n, l = self.params if self.params else ("", "")
        return (str(n), str(l), str(self.r), str(len(self.division)), fmt_rat(self.sum.lo),
                fmt_rat(self.sum.hi), fmt_rat(self.paper_bound), self.gauge_descr)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.CSV_HEADER)
        w.writerow(self.csv_row())
        return buf.getvalue()


def var_sum(F, d: Division, r: int, max_width: RatLike = TERM_WIDTH) -> Enclosure:
    return sum((t for t in var_terms(F, d, r, max_width)), Enclosure.exact(0))


def var_terms(F, d: Division, r: int, max_width: RatLike = TERM_WIDTH) -> list[Enclosure]:
    if not validate_division(d):
        raise ValueError("invalid division")
    w = rat(max_width) / max(len(d), 1)
    return [delta_r(F, ti, r, w) for ti in d]


# -- minimal workable rank ----------------------------------------------


def _gauge_floor(g: Gauge, a: str) -> Fraction:
    if isinstance(g, CantorRankGauge):
        return g.inf_on_address(a)
    return g.inf_on(rank_segment(a))


def minimal_workable_rank(g: Gauge, max_rank: int = MAX_RANK) -> tuple[int, str]:
    """Smallest n, and the leftmost rank-n address a, with gauge > 2 * 3**-(n+1) on a's segment.

    Every gap inside ``rank_segment(a)`` then has length ``<= 3**-(n+1)`` and
    a tag at its left end lies within ``3**-(n+1) + 3**-(n+l)`` of its right end.
    """
    if isinstance(g, ConstantGauge):
        n = 0
        while not 2 * Fraction(1, 3 ** (n + 1)) < g.value:
            n += 1
        return n, "L" * n
    if not isinstance(g, (PiecewiseConstantGauge, CantorRankGauge)):
        raise TypeError(f"unsupported gauge {type(g).__name__}")
    for n in range(max_rank + 1):
        need = 2 * Fraction(1, 3 ** (n + 1))
        candidates = extensions("", n) if n <= 14 else _coarse_candidates(g, n)
        for a in candidates:
            if _gauge_floor(g, a) > need:
                return n, a
    raise BadRank(f"no workable rank up to {max_rank} for {g.describe()}")


def _coarse_candidates(g: Gauge, n: int):
    # beyond rank 14 enumerating 2**n words is hopeless; try the segments
    # around each cell or prefix the gauge itself names
    if isinstance(g, CantorRankGauge):
        for k, _ in g.depth_map:
            yield (k + "L" * n)[:n]
    else:
        from .cantor import address_of

        for b in g.breakpoints:
            yield address_of(b, max_rank=n).ljust(n, "L")


# -- adversarial divisions ------------------------------------------------


def _tag_for_gap(g: Gauge, seg_addr: str, beta: Fraction, depth_limit: int) -> Fraction:
    alpha = rank_segment(seg_addr).right
    if g.at(alpha) > beta - alpha:
        return alpha
    for depth in range(1, depth_limit + 1):
        # closest candidates first: they leave the shortest interval
        for x in sorted(cantor_endpoints(seg_addr, depth), reverse=True):
            if g.at(x) > beta - x:
                return x
    raise TagSearchFailed(f"no fine Cantor tag left of {beta} within depth {depth_limit}")


def adversarial_division(F, g: Gauge, n: int, l: int, address: str | None = None,
                         depth_limit: int = 6) -> Division:
    """Fine division tagged in C, one interval ``[x_k, beta_k]`` per gap of ``decompose(a, l)``."""
    if n < 0:
        raise BadRank(f"rank must be nonnegative, got {n}")
    if l < 1:
        raise ValueError("l must be positive")
    if address is None:
        n0, a0 = minimal_workable_rank(g)
        if n0 > n:
            raise BadRank(f"gauge {g.describe()} needs rank >= {n0}")
        address = a0 + "L" * (n - n0)
    if len(address) != n:
        raise BadRank(f"address {address!r} does not have rank {n}")
    _, gaps = decompose(address, l)
    items = []
    for k, gap in enumerate(gaps):
        seg_addr = left_adjoining_segment(address, l, k)
        x = _tag_for_gap(g, seg_addr, gap.right, depth_limit)
        items.append(TaggedInterval.of(x, gap.right, x))
    d = Division(tuple(items))
    assert validate_division(d) and all(is_fine(t, g) for t in d)
    return d


def _report(F, g, n, l, r, address, max_width) -> VariationReport:
    d = adversarial_division(F, g, n, l, address)
    terms = var_terms(F, d, r, max_width)
    total = sum(terms, Enclosure.exact(0))
    return VariationReport(d, r, total, paper_bound(n, l, r).hi, g.describe(), (n, l), address,
                           tuple(terms))


def adversarial_report(F, g: Gauge, r: int, l: int, n: int | None = None,
                       max_width: RatLike = TERM_WIDTH) -> VariationReport:
    n0, a0 = minimal_workable_rank(g)
    if n is None:
        n = n0
    return _report(F, g, n, l, r, a0 + "L" * (n - n0), max_width)


def variation_search(
    F, g: Gauge, r: int, target: RatLike, l_max: int = 24,
    stop: Literal["paper", "certified"] = "paper", max_width: RatLike = TERM_WIDTH,
) -> VariationReport:
    """Grow l until an adversarial division certifies a sum of at least ``target``.

    ``stop="paper"`` picks the first l whose closed-form bound already reaches
    the target (then certifies that division); ``stop="certified"`` builds
    the division at every l and stops at the first certified success.
    """
    target = rat(target)
    if target <= 0:
        raise ValueError("target must be positive")
    n, a = minimal_workable_rank(g)
    for l in range(1, l_max + 1):
        if stop == "paper" and paper_bound(n, l, r).lo < target:
            continue
        rep = _report(F, g, n, l, r, a, max_width)
        if rep.sum.lo >= target:
            return rep
    raise Unreachable(l_max)


# -- approximate variation -----------------------------------------------


def varap_sum(F, d: Division) -> Enclosure:
    """Sum of |F(z_i) - F(y_i)| over the division's segments ``[y_i, z_i]``."""
    total = Enclosure.exact(0)
    for t in d:
        total = total + (F.value(t.seg.right) - F.value(t.seg.left)).abs()
    return total


def sfine_check(ti: TaggedInterval, s_inner: IntervalUnion) -> bool:
    return s_inner.contains(ti.seg.left) and s_inner.contains(ti.seg.right)


def tags_in_cantor(d: Division) -> bool:
    return all(in_cantor(t.tag) for t in d)
