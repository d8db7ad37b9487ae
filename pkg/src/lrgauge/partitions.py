"""Segments, tagged intervals, divisions and gauges.

Gauges form a closed set of representations (constant, piecewise constant on
a breakpoint grid, and keyed by Cantor addresses) rather than arbitrary
callables, so that callers can compute lower bounds of a gauge on a whole
segment.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .numerics import RatLike, fmt_rat, rat


class OutOfDomain(ValueError):
    pass


class DepthExceeded(RuntimeError):
    pass


@dataclass(frozen=True, order=True)
class Segment:
    left: Fraction
    right: Fraction

    def __post_init__(self):
        object.__setattr__(self, "left", rat(self.left))
        object.__setattr__(self, "right", rat(self.right))
        if not self.left < self.right:
            raise ValueError(f"segment needs left < right, got [{self.left}, {self.right}]")

    @property
    def length(self) -> Fraction:
        return self.right - self.left

    @property
    def midpoint(self) -> Fraction:
        return (self.left + self.right) / 2

    def contains(self, x: RatLike) -> bool:
        return self.left <= rat(x) <= self.right

    def intersect(self, other: Segment) -> Segment | None:
        lo, hi = max(self.left, other.left), min(self.right, other.right)
        return Segment(lo, hi) if lo < hi else None

    def __str__(self):
        return f"[{fmt_rat(self.left)},{fmt_rat(self.right)}]"


def oriented(x: RatLike, h: RatLike) -> Segment:
    """The segment with endpoints ``x`` and ``x + h``, whichever is smaller first."""
    x, h = rat(x), rat(h)
    if h == 0:
        raise ValueError("zero-length oriented segment")
    return Segment(min(x, x + h), max(x, x + h))


@dataclass(frozen=True)
class TaggedInterval:
    seg: Segment
    tag: Fraction

    def __post_init__(self):
        object.__setattr__(self, "tag", rat(self.tag))
        if not self.seg.contains(self.tag):
            raise ValueError(f"tag {self.tag} outside {self.seg}")

    @classmethod
    def of(cls, left: RatLike, right: RatLike, tag: RatLike) -> TaggedInterval:
        return cls(Segment(left, right), tag)


@dataclass(frozen=True)
class Division:
    items: tuple[TaggedInterval, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(self.items))

    def __iter__(self):
        return iter(self.items)

    def __len__(self):
        return len(self.items)

    @property
    def total_length(self) -> Fraction:
        return sum((ti.seg.length for ti in self.items), Fraction(0))

    def csv_rows(self) -> list[tuple[str, str, str]]:
        return [(fmt_rat(t.seg.left), fmt_rat(t.seg.right), fmt_rat(t.tag)) for t in self.items]


def validate_division(d: Division) -> bool:
    items = sorted(d.items, key=lambda t: (t.seg.left, t.seg.right))
    for t in items:
        if not t.seg.contains(t.tag):
            return False
    return all(a.seg.right <= b.seg.left for a, b in zip(items, items[1:]))


def tiles(d: Division, seg: Segment) -> bool:
    """True when the division's segments partition ``seg`` exactly."""
    if not validate_division(d) or not d.items:
        return False
    items = sorted(d.items, key=lambda t: t.seg.left)
    if items[0].seg.left != seg.left or items[-1].seg.right != seg.right:
        return False
    return all(a.seg.right == b.seg.left for a, b in zip(items, items[1:]))


# -- gauges ---------------------------------------------------------------


class Gauge:
    """Strictly positive function on its domain."""

    def at(self, x: Fraction) -> Fraction:
        raise NotImplementedError

    def inf_on(self, seg: Segment) -> Fraction:
        raise NotImplementedError

    def describe(self) -> str:
        raise NotImplementedError


def _positive(v) -> Fraction:
    v = rat(v)
    if v <= 0:
        raise ValueError(f"gauge values must be strictly positive, got {v}")
    return v


@dataclass(frozen=True)
class ConstantGauge(Gauge):
    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", _positive(self.value))

    def at(self, x):
        return self.value

    def inf_on(self, seg):
        return self.value

    def describe(self):
        return f"const:{fmt_rat(self.value)}"


@dataclass(frozen=True)
class PiecewiseConstantGauge(Gauge):
    """Constant on the cells cut out by ``breakpoints``.

    With ``len(values) == len(breakpoints) + 1`` the values fill the cells left
    to right.  With ``len(values) == len(breakpoints)`` value ``i`` starts at
    breakpoint ``i`` and ``default`` covers everything left of the first one.
    A breakpoint itself belongs to the cell on its right.
    """

    breakpoints: tuple[Fraction, ...]
    values: tuple[Fraction, ...]
    default: Fraction | None = None

    def __post_init__(self):
        bps = tuple(rat(b) for b in self.breakpoints)
        vals = tuple(_positive(v) for v in self.values)
        if list(bps) != sorted(set(bps)):
            raise ValueError("breakpoints must be sorted and distinct")
        if len(vals) == len(bps):
            if self.default is None:
                raise ValueError("default required when there is one value per breakpoint")
            vals = (_positive(self.default),) + vals
        elif len(vals) != len(bps) + 1:
            raise ValueError("need len(breakpoints) or len(breakpoints)+1 values")
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "values", vals)
        if self.default is not None:
            object.__setattr__(self, "default", _positive(self.default))

    def at(self, x):
        return self.values[bisect.bisect_right(self.breakpoints, rat(x))]

    def inf_on(self, seg):
        i = bisect.bisect_right(self.breakpoints, seg.left)
        j = bisect.bisect_right(self.breakpoints, seg.right)
        return min(self.values[i : j + 1])

    def describe(self):
        cells = ";".join(fmt_rat(b) for b in self.breakpoints)
        vals = ";".join(fmt_rat(v) for v in self.values)
        return f"pwc:breaks={cells}|values={vals}"


@dataclass(frozen=True)
class CantorRankGauge(Gauge):
    """Value of the longest address prefix (in ``depth_map``) of the point, else ``default``."""

    depth_map: Mapping[str, Fraction] = field(default_factory=dict)
    default: Fraction = Fraction(1)

    def __post_init__(self):
        items = tuple(sorted((str(k), _positive(v)) for k, v in dict(self.depth_map).items()))
        for k, _ in items:
            if any(ch not in "LR" for ch in k):
                raise ValueError(f"bad address key {k!r}")
        object.__setattr__(self, "depth_map", items)
        object.__setattr__(self, "default", _positive(self.default))

    def __hash__(self):
        return hash((self.depth_map, self.default))

    @property
    def table(self) -> dict[str, Fraction]:
        return dict(self.depth_map)

    def at(self, x):
        from .cantor import address_of

        x = rat(x)
        if not 0 <= x <= 1:
            raise OutOfDomain(x)
        table = self.table
        longest = max((len(k) for k in table), default=0)
        word = address_of(x, max_rank=longest)
        for n in range(len(word), -1, -1):
            if word[:n] in table:
                return table[word[:n]]
        return self.default

    def inf_on_address(self, w: str) -> Fraction:
        """Lower bound of the gauge on ``rank_segment(w)``."""
        table = self.table
        base = self.default
        for n in range(len(w), -1, -1):
            if w[:n] in table:
                base = table[w[:n]]
                break
        deeper = [v for k, v in table.items() if len(k) > len(w) and k.startswith(w)]
        return min([base] + deeper)

    def inf_on(self, seg):
        return min([self.default] + list(self.table.values()))

    def describe(self):
        body = ";".join(f"{k or '-'}={fmt_rat(v)}" for k, v in self.depth_map)
        return f"rank:{body}|default={fmt_rat(self.default)}"


def gauge_at(g: Gauge, x: RatLike) -> Fraction:
    return g.at(rat(x))


def is_fine(ti: TaggedInterval, g: Gauge) -> bool:
    d = g.at(ti.tag)
    return ti.tag - d < ti.seg.left and ti.seg.right < ti.tag + d


def cousin_division(seg: Segment, g: Gauge, max_depth: int = 64) -> Division:
    """Delta-fine division of ``seg`` by repeated bisection.

    A piece is accepted with its midpoint as tag when that is fine, otherwise
    with a fine endpoint; failing both it is halved.
    """
    out: list[TaggedInterval] = []
    stack = [(seg, 0)]
    while stack:
        s, depth = stack.pop()
        for tag in (s.midpoint, s.left, s.right):
            ti = TaggedInterval(s, tag)
            if is_fine(ti, g):
                out.append(ti)
                break
        else:
            if depth >= max_depth:
                raise DepthExceeded(f"no fine tag for {s} within depth {max_depth}")
            m = s.midpoint
            stack.append((Segment(m, s.right), depth + 1))
            stack.append((Segment(s.left, m), depth + 1))
    return Division(tuple(out))


def parse_gauge(spec: str, rows: Iterable[tuple[str, str]] | None = None) -> Gauge:
    """Build a gauge from ``const:RAT`` or from ``pwc``/``rank`` file rows.

    ``rows`` are ``(breakpoint, value)`` for ``pwc`` and ``(prefix, value)`` for
    ``rank``; a row keyed ``default`` sets the fallback value.
    """
    kind, _, arg = spec.partition(":")
    if kind == "const":
        return ConstantGauge(rat(arg))
    if rows is None:
        raise ValueError(f"gauge kind {kind!r} needs file rows")
    rows = [(k.strip(), v.strip()) for k, v in rows]
    default = next((rat(v) for k, v in rows if k == "default"), None)
    body = [(k, v) for k, v in rows if k != "default"]
    if kind == "pwc":
        body.sort(key=lambda kv: rat(kv[0]))
        return PiecewiseConstantGauge(
            tuple(rat(k) for k, _ in body),
            tuple(rat(v) for _, v in body),
            default if default is not None else min(rat(v) for _, v in body),
        )
    if kind == "rank":
        table = {("" if k in ("-", '""') else k): rat(v) for k, v in body}
        return CantorRankGauge(table, default if default is not None else Fraction(1))
    raise ValueError(f"unknown gauge kind {kind!r}")
