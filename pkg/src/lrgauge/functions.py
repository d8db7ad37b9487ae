"""The Cantor counterexample function and polynomial test functions.

Both kinds of function share one duck-typed surface used by the analysis
modules:

``domain``
    ``Segment`` on which the function lives.
``value(x)``
    ``Enclosure`` of F(x) (exact whenever ``x`` resolves).
``derivative(x)``
    exact derivative (``f``) where it exists.
``integrate_abs_pow(seg, c, slope, y0, r, max_width)``
    enclosure of the integral over ``seg`` of ``|F(y) - c - slope*(y - y0)|**r``.
``abs_sublevel(seg, c, theta, width)``
    inner/outer ``IntervalUnion`` of ``{y in seg : |F(y) - c| <= theta}``.
``sup_abs``
    an exact upper bound of ``|F|``.

The counterexample is zero on the Cantor set and, on every removed middle
third of rank m, a smooth bump: a zero margin, a cubic smoothstep ramp, a
plateau, and the mirrored ramp.  The plateau height is ``1/m`` (main variant)
or ``1`` (thin-plateau variant).
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import count
from math import comb
from typing import Callable, NamedTuple

from . import poly as P
from .cantor import contiguous_interval, in_cantor
from .numerics import DEFAULT_WIDTH, Enclosure, IntervalUnion, RatLike, rat
from .partitions import DepthExceeded, OutOfDomain, Segment

SMOOTHSTEP = P.poly(0, 0, 3, -2)
SMOOTHSTEP_DOWN = P.compose_affine(SMOOTHSTEP, 1, -1)


class WidthUnachievable(RuntimeError):
    pass


class Piece(NamedTuple):
    """Polynomial piece on ``[lo, hi]`` written in the local variable ``u = (y - lo)/(hi - lo)``."""

    lo: Fraction
    hi: Fraction
    loc: tuple

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    def to_u(self, y) -> Fraction:
        return (y - self.lo) / self.length

    def value(self, y) -> Fraction:
        return P.evaluate(self.loc, self.to_u(y))

    def slope(self, y) -> Fraction:
        return P.evaluate(P.derivative(self.loc), self.to_u(y)) / self.length

    def minus_linear(self, lin: tuple) -> tuple:
        return P.sub(self.loc, P.compose_affine(lin, self.lo, self.length))

    def integrate_abs_pow(self, lin: tuple, a, b, r: int, width) -> Enclosure:
        """Integral over ``[a, b]`` (inside the piece) of ``|F - lin|**r``."""
        q = self.minus_linear(lin)
        L = self.length
        return L * _local_abs_pow(q, self.to_u(a), self.to_u(b), r, width / L)

    def abs_sublevel(self, c, theta: Enclosure, a, b, width):
        # {|F - c| <= t} = {F - c - t <= 0} n {c - t - F <= 0}, solved in u
        L = self.length
        ua, ub, w = self.to_u(a), self.to_u(b), width / L

        def sets(t):
            up = P.sublevel_set(P.sub(self.loc, P.poly(c + t)), ua, ub, w)
            dn = P.sublevel_set(P.sub(P.poly(c - t), self.loc), ua, ub, w)
            return up, dn

        (ui, _), (di, _) = sets(theta.lo)
        (_, uo), (_, do) = sets(theta.hi)

        def back(s):
            return IntervalUnion(tuple((self.lo + L * x, self.lo + L * y) for x, y in s))

        return back(ui.intersect(di)), back(uo.intersect(do))


@lru_cache(maxsize=1 << 14)
def _local_abs_pow(q: tuple, a: Fraction, b: Fraction, r: int, width: Fraction) -> Enclosure:
    # translated copies of one bump repeat the same local integral
    return P.integrate_abs_pow(q, a, b, r, width)


@lru_cache(maxsize=None)
def smoothstep_moment(j: int) -> Fraction:
    """Integral over [0, 1] of ``s(t)**j`` for the smoothstep ``s``."""
    return P.integrate(P.power(SMOOTHSTEP, j), 0, 1)


def remark_e_ratio(n: int) -> Fraction:
    return Fraction(1, 4**n)


@dataclass(frozen=True)
class BumpShape:
    """Layout of the bump inside one removed interval, as fractions of its length."""

    height: Fraction
    plateau: Fraction
    ramp: Fraction

    @property
    def margin(self) -> Fraction:
        return (1 - self.plateau - 2 * self.ramp) / 2


@dataclass(frozen=True)
class CounterexampleF:
    """F = 0 on the Cantor set and a smooth bump on every removed interval.

    ``variant="main"``: height ``1/m`` on rank-m gaps, plateau of half the gap
    length, ramps filling the rest.  ``variant="remark-e"``: height 1, plateau
    fraction ``ratio_schedule(m)`` and ramps of half the plateau length on each
    side, with zero margins.

    ``cutoff_depth`` bounds how deep point evaluation descends; integration
    may refine up to 64 ranks beyond it.
    """

    variant: str = "main"
    cutoff_depth: int = 64
    ratio_schedule: Callable[[int], Fraction] = field(default=remark_e_ratio)
    bridge: str = "smoothstep"

    def __post_init__(self):
        if self.variant not in ("main", "remark-e"):
            raise ValueError(f"unknown variant {self.variant!r}")
        if self.bridge != "smoothstep":
            raise ValueError("only the cubic smoothstep bridge is implemented")
        if self.cutoff_depth < 1:
            raise ValueError("cutoff_depth must be positive")

    # -- geometry -------------------------------------------------------

    @property
    def domain(self) -> Segment:
        return Segment(0, 1)

    @property
    def sup_abs(self) -> Fraction:
        return Fraction(1)

    def shape(self, m: int) -> BumpShape:
        if self.variant == "main":
            return BumpShape(Fraction(1, m), Fraction(1, 2), Fraction(1, 4))
        rho = rat(self.ratio_schedule(m))
        if not 0 < rho <= Fraction(1, 2):
            raise ValueError(f"plateau ratio {rho} at rank {m} outside (0, 1/2]")
        return BumpShape(Fraction(1), rho, rho / 2)

    def sup_below(self, rank: int) -> Fraction:
        """Upper bound for F on any segment of the given rank."""
        return Fraction(1, rank + 1) if self.variant == "main" else Fraction(1)

    def gap_pieces(self, left: Fraction, m: int) -> tuple[Piece, ...]:
        """Pieces of F on the closure of the rank-m gap starting at ``left``."""
        return _gap_pieces(self.shape(m), left, Fraction(1, 3**m))

    def plateau(self, address: str) -> Segment:
        """The flat top inside the gap removed from ``rank_segment(address)``."""
        u = contiguous_interval(address)
        pc = next(p for p in self.gap_pieces(u.left, len(address) + 1)
                  if P.degree(p.loc) == 0)
        return Segment(pc.lo, pc.hi)

    def gap_integral(self, m: int, j: int) -> Fraction:
        """Integral of ``F**j`` over one rank-m gap."""
        sh = self.shape(m)
        return sh.height**j * Fraction(1, 3**m) * (sh.plateau + 2 * sh.ramp * smoothstep_moment(j))

    # -- point evaluation -----------------------------------------------

    def _locate(self, x: Fraction):
        """Return ("cantor",), ("gap", left, m) or ("deep", rank)."""
        if in_cantor(x):
            return ("cantor",)
        left = Fraction(0)
        length = Fraction(1)
        for n in range(self.cutoff_depth):
            third = length / 3
            if left + third < x < left + 2 * third:
                return ("gap", left + third, n + 1)
            if x > left + third:
                left += 2 * third
            length = third
        return ("deep", self.cutoff_depth)

    def _piece_at(self, x: Fraction) -> Piece | None:
        where = self._locate(x)
        if where[0] == "cantor":
            return None
        if where[0] == "deep":
            raise DepthExceeded(f"{x} does not resolve within depth {self.cutoff_depth}")
        return next(p for p in self.gap_pieces(where[1], where[2]) if p.lo <= x <= p.hi)

    def value(self, x: RatLike) -> Enclosure:
        x = rat(x)
        if not 0 <= x <= 1:
            raise OutOfDomain(x)
        try:
            pc = self._piece_at(x)
        except DepthExceeded:
            return Enclosure(0, self.sup_below(self.cutoff_depth))
        return Enclosure.exact(0 if pc is None else pc.value(x))

    def derivative(self, x: RatLike) -> Fraction:
        x = rat(x)
        if not 0 <= x <= 1:
            raise OutOfDomain(x)
        pc = self._piece_at(x)
        return Fraction(0) if pc is None else pc.slope(x)

    # -- integration ----------------------------------------------------

    def _fixed_sign_tail(self, rank: int, start: int, c: Fraction, r: int, tol: Fraction) -> Enclosure:
        """Contribution of the gaps of rank >= ``start`` inside one rank segment.

        Valid only when ``F - c`` keeps one sign on all of those gaps, so that
        the power expands binomially into integrals of ``F**j``.
        """
        if c <= 0:  # (F - c)^r
            coefs = [comb(r, j) * (-c) ** (r - j) for j in range(r + 1)]
        else:  # (c - F)^r
            coefs = [comb(r, j) * c ** (r - j) * (-1) ** j for j in range(r + 1)]
        per = _pow2_floor(tol / ((r + 1) * max(1, max(abs(k) for k in coefs))))
        total = Enclosure.exact(0)
        for j, coef in enumerate(coefs):
            if not coef:
                continue
            if j == 0:
                # measure of all gaps of rank >= start inside the segment
                total = total + coef * Fraction(2 ** (start - rank - 1), 3 ** (start - 1))
            else:
                total = total + coef * _series(self, rank, start, j, per)
        return total

    def node_integral(self, rank: int, c: RatLike, r: int, tol: RatLike) -> Enclosure:
        """Enclosure of the integral of ``|F - c|**r`` over any full rank segment."""
        c, tol = rat(c), rat(tol)
        total = Enclosure.exact(0)
        m = rank + 1
        while True:
            if c <= 0 or c >= self.sup_below(m - 1):
                total = total + self._fixed_sign_tail(rank, m, c, r, tol / 2)
                break
            total = total + 2 ** (m - rank - 1) * _gap_abs_pow(self, m, c, r)
            bound = max(abs(c), abs(self.sup_below(m) - c))
            tail = Fraction(2 ** (m - rank), 3**m) * bound**r
            if tail <= tol / 2:
                total = total + Enclosure(0, tail)
                break
            m += 1
        return Enclosure(max(total.lo, 0), max(total.hi, 0))

    def _node_enclosure(self, rank: int, node: Segment, lin: tuple, r: int, tol: Fraction) -> Enclosure:
        # |F - L| with L linear: freeze L at the midpoint and widen by the
        # Lipschitz bound of t -> |t|^r over the spread of L across the node
        c_mid = P.evaluate(lin, node.midpoint)
        base = self.node_integral(rank, c_mid, r, tol)
        eps = abs(P.evaluate(lin, node.right) - c_mid)
        if not eps:
            return base
        bound = max(abs(c_mid), abs(self.sup_below(rank) - c_mid))
        widen = node.length * r * eps * (bound + eps) ** (r - 1)
        return Enclosure(max(base.lo - widen, 0), base.hi + widen)

    def _tail(self, rank: int, part: Segment, lin: tuple, r: int) -> Enclosure:
        l0, l1 = P.evaluate(lin, part.left), P.evaluate(lin, part.right)
        lmin, lmax = min(l0, l1), max(l0, l1)
        lo_d, hi_d = -lmax, self.sup_below(rank) - lmin
        lower = Fraction(0) if lo_d <= 0 <= hi_d else min(abs(lo_d), abs(hi_d))
        upper = max(abs(lo_d), abs(hi_d))
        return Enclosure(part.length * lower**r, part.length * upper**r)

    def integrate_abs_pow(
        self,
        seg: Segment,
        c: RatLike,
        slope: RatLike = 0,
        y0: RatLike = 0,
        r: int = 1,
        max_width: RatLike = DEFAULT_WIDTH,
        max_nodes: int = 200_000,
    ) -> Enclosure:
        """Enclose the integral over ``seg`` of ``|F(y) - c - slope*(y - y0)|**r``.

        Gap pieces are integrated exactly; Cantor segments wholly inside
        ``seg`` use the rank series, partially covered ones a crude bound.
        The widest unresolved segment is split until the total width is at
        most ``max_width``.
        """
        if seg.left < 0 or seg.right > 1:
            raise OutOfDomain(seg)
        c, slope, y0, max_width = rat(c), rat(slope), rat(y0), rat(max_width)
        lin = P.poly(c - slope * y0, slope)
        root_w = max_width / 1024
        where = self._locate(seg.midpoint)
        if where[0] == "gap" and where[1] <= seg.left and seg.right <= where[1] + Fraction(1, 3 ** where[2]):
            # inside the closure of one gap: no Cantor points to refine
            total = Enclosure.exact(0)
            for pc in self.gap_pieces(where[1], where[2]):
                lo, hi = max(pc.lo, seg.left), min(pc.hi, seg.right)
                if lo < hi:
                    total = total + pc.integrate_abs_pow(lin, lo, hi, r, root_w)
            return total
        node_budget = max_width / 4
        total = Enclosure.exact(0)
        heap: list = []
        pending = [Fraction(0), Fraction(0)]
        tick = count()

        def consider(rank: int, left: Fraction):
            length = Fraction(1, 3**rank)
            node = Segment(left, left + length)
            part = node.intersect(seg)
            if part is None:
                return
            if part == node:
                enc = self._node_enclosure(rank, node, lin, r, node_budget * length / seg.length)
            else:
                enc = self._tail(rank, part, lin, r)
            pending[0] += enc.lo
            pending[1] += enc.hi
            heapq.heappush(heap, (-enc.width, next(tick), rank, left, enc))

        def expand(rank: int, left: Fraction):
            nonlocal total
            third = Fraction(1, 3 ** (rank + 1))
            for pc in self.gap_pieces(left + third, rank + 1):
                lo, hi = max(pc.lo, seg.left), min(pc.hi, seg.right)
                if lo < hi:
                    total = total + pc.integrate_abs_pow(lin, lo, hi, r, root_w)
            consider(rank + 1, left)
            consider(rank + 1, left + 2 * third)

        consider(0, Fraction(0))
        expanded = 0
        while heap and total.width + pending[1] - pending[0] > max_width:
            *_, rank, left, enc = heapq.heappop(heap)
            if rank >= self.cutoff_depth + 64 or expanded >= max_nodes:
                raise WidthUnachievable(
                    f"width {float(total.width + pending[1] - pending[0]):.3g} "
                    f"after {expanded} refinements"
                )
            pending[0] -= enc.lo
            pending[1] -= enc.hi
            expand(rank, left)
            expanded += 1
        return total + Enclosure(pending[0], pending[1])

    def _gap_sublevel_measure(self, m: int, c: Fraction, theta: Enclosure, width: Fraction) -> Enclosure:
        inner, outer = _unit_gap_sublevel(self.shape(m), c, theta, _pow2_floor(width * 3**m))
        return Fraction(1, 3**m) * Enclosure(inner, outer)

    def _node_sublevel_measure(self, rank: int, c: Fraction, theta: Enclosure, tol: Fraction) -> Enclosure:
        """Measure of ``{|F - c| <= theta}`` inside any full rank segment."""
        total = Enclosure.exact(0)
        m = rank + 1
        while True:
            top = self.sup_below(m - 1)
            worst = max(abs(c), abs(top - c))
            nearest = Fraction(0) if 0 <= c <= top else min(abs(c), abs(top - c))
            rest = Fraction(2 ** (m - rank - 1), 3 ** (m - 1))  # all gaps of rank >= m
            if worst <= theta.lo:
                return total + rest
            if nearest > theta.hi:
                return total
            if rest <= tol:
                return total + Enclosure(0, rest)
            total = total + 2 ** (m - rank - 1) * self._gap_sublevel_measure(m, c, theta, tol / 4)
            m += 1

    def abs_sublevel_measure(
        self, seg: Segment, c: RatLike, theta: Enclosure, width: RatLike = Fraction(1, 10**6),
        max_nodes: int = 100_000,
    ) -> Enclosure:
        """Enclosure of the measure of ``{y in seg : |F(y) - c| <= theta}``.

        Unlike ``abs_sublevel`` this never lists the set: full Cantor
        segments are summed rank by rank, using that all gaps of one rank
        carry translates of the same bump.
        """
        c, width = rat(c), rat(width)
        root_w = width / 1024
        total = Enclosure.exact(0)
        pending = [Fraction(0), Fraction(0)]
        heap: list = []
        tick = count()

        def consider(rank: int, left: Fraction):
            node = Segment(left, left + Fraction(1, 3**rank))
            part = node.intersect(seg)
            if part is None:
                return
            if part == node:
                enc = self._node_sublevel_measure(rank, c, theta, width * node.length / (4 * seg.length))
            else:
                enc = Enclosure(0, part.length)
            pending[0] += enc.lo
            pending[1] += enc.hi
            heapq.heappush(heap, (-enc.width, next(tick), rank, left, enc))

        def expand(rank: int, left: Fraction):
            nonlocal total
            third = Fraction(1, 3 ** (rank + 1))
            for pc in self.gap_pieces(left + third, rank + 1):
                lo, hi = max(pc.lo, seg.left), min(pc.hi, seg.right)
                if lo < hi:
                    i, o = pc.abs_sublevel(c, theta, lo, hi, root_w)
                    total = total + Enclosure(i.measure, o.measure)
            consider(rank + 1, left)
            consider(rank + 1, left + 2 * third)

        consider(0, Fraction(0))
        expanded = 0
        while heap and total.width + pending[1] - pending[0] > width:
            *_, rank, left, enc = heapq.heappop(heap)
            if expanded >= max_nodes or rank >= self.cutoff_depth + 64:
                raise WidthUnachievable("sublevel measure did not resolve")
            pending[0] -= enc.lo
            pending[1] -= enc.hi
            expand(rank, left)
            expanded += 1
        return total + Enclosure(pending[0], pending[1])

    def abs_sublevel(
        self, seg: Segment, c: RatLike, theta: Enclosure, width: RatLike = DEFAULT_WIDTH,
        max_nodes: int = 20_000,
    ) -> tuple[IntervalUnion, IntervalUnion]:
        """Inner/outer approximations of ``{y in seg : |F(y) - c| <= theta}``.

        The inner set is certified with ``theta.lo`` and the outer set with
        ``theta.hi``.  Cantor segments are split, widest first, until the
        undecided measure is at most ``width`` or ``max_nodes`` splits were
        made; whatever is still undecided goes into the outer set only.
        """
        c, width = rat(c), rat(width)
        root_w = width / 1024
        inner: list[tuple] = []
        outer: list[tuple] = []
        gap = [Fraction(0)]  # outer measure minus inner measure
        heap: list = []
        tick = count()

        def consider(rank: int, left: Fraction):
            node = Segment(left, left + Fraction(1, 3**rank))
            part = node.intersect(seg)
            if part is None:
                return
            top = self.sup_below(rank)
            worst = max(abs(c), abs(top - c))
            nearest = Fraction(0) if 0 <= c <= top else min(abs(c), abs(top - c))
            if worst <= theta.lo:
                inner.append((part.left, part.right))
                outer.append((part.left, part.right))
            elif nearest > theta.hi:
                return
            else:
                gap[0] += part.length
                heapq.heappush(heap, (-part.length, next(tick), rank, left, part))

        def expand(rank: int, left: Fraction):
            third = Fraction(1, 3 ** (rank + 1))
            for pc in self.gap_pieces(left + third, rank + 1):
                lo, hi = max(pc.lo, seg.left), min(pc.hi, seg.right)
                if lo < hi:
                    i, o = pc.abs_sublevel(c, theta, lo, hi, root_w)
                    inner.extend(i.parts)
                    outer.extend(o.parts)
                    gap[0] += o.measure - i.measure
            consider(rank + 1, left)
            consider(rank + 1, left + 2 * third)

        consider(0, Fraction(0))
        expanded = 0
        while heap and gap[0] > width and expanded < max_nodes:
            *_, rank, left, part = heapq.heappop(heap)
            if rank >= self.cutoff_depth + 64:
                heapq.heappush(heap, (-part.length, next(tick), rank, left, part))
                break
            gap[0] -= part.length
            expand(rank, left)
            expanded += 1
        for *_, part in heap:
            outer.append((part.left, part.right))
        return IntervalUnion(tuple(inner)), IntervalUnion(tuple(outer))


def _pow2_floor(tol: Fraction) -> Fraction:
    # snap tolerances to powers of two so cached series can be reused
    k = 0
    while Fraction(1, 2**k) > tol:
        k += 1
    return Fraction(1, 2**k)


@lru_cache(maxsize=4096)
def _series(F: CounterexampleF, rank: int, start: int, j: int, tol: Fraction) -> Enclosure:
    """Sum over the gaps of rank >= start inside a rank segment of the integral of F**j."""
    s = Fraction(0)
    m = start
    while True:
        s += 2 ** (m - rank - 1) * F.gap_integral(m, j)
        tail = Fraction(2 ** (m - rank), 3**m) * F.sup_below(m) ** j
        if tail <= tol:
            return Enclosure(s, s + tail)
        m += 1


@lru_cache(maxsize=1 << 14)
def _unit_ramp_abs_pow(kappa: Fraction, r: int) -> Enclosure:
    """Integral over [0, 1] of |s(u) - kappa|**r for the smoothstep s."""
    q = P.sub(SMOOTHSTEP, P.poly(kappa))
    if kappa <= 0 or kappa >= 1:
        return Enclosure.exact(abs(P.integrate(P.power(q, r), 0, 1)))
    return P.integrate_abs_pow(q, 0, 1, r, Fraction(1, 2**48))


def _gap_abs_pow(F: CounterexampleF, m: int, c: Fraction, r: int) -> Enclosure:
    """Integral of |F - c|**r over one rank-m gap (all such gaps are translates)."""
    sh = F.shape(m)
    ramps = 2 * sh.ramp * sh.height**r * _unit_ramp_abs_pow(c / sh.height, r)
    flat = sh.plateau * abs(sh.height - c) ** r + 2 * sh.margin * abs(c) ** r
    return Fraction(1, 3**m) * (ramps + flat)


@lru_cache(maxsize=1 << 12)
def _unit_gap_sublevel(sh: BumpShape, c: Fraction, theta: Enclosure, width: Fraction):
    """Inner and outer measure of the sublevel set on a unit-length gap."""
    inner = outer = Fraction(0)
    for pc in _gap_pieces(sh, Fraction(0), Fraction(1)):
        i, o = pc.abs_sublevel(c, theta, pc.lo, pc.hi, width / 8)
        inner += i.measure
        outer += o.measure
    return inner, outer


@lru_cache(maxsize=1 << 16)
def _gap_pieces(sh: BumpShape, left: Fraction, length: Fraction) -> tuple[Piece, ...]:
    out = []
    a = left
    layout = [
        (sh.margin, P.ZERO),
        (sh.ramp, P.scale(SMOOTHSTEP, sh.height)),
        (sh.plateau, P.poly(sh.height)),
        (sh.ramp, P.scale(SMOOTHSTEP_DOWN, sh.height)),
        (sh.margin, P.ZERO),
    ]
    for frac, loc in layout:
        if frac:
            w = frac * length
            out.append(Piece(a, a + w, loc))
            a += w
    return tuple(out)


@dataclass(frozen=True)
class PiecewisePolynomial:
    """Continuous piecewise polynomial test function.

    Build with ``polynomial``/``abs_function`` or from absolute-coordinate
    ``(left, right, coeffs)`` triples via ``from_pieces``.
    """

    pieces: tuple[Piece, ...]
    name: str = "poly"

    def __post_init__(self):
        for a, b in zip(self.pieces, self.pieces[1:]):
            if a.hi != b.lo:
                raise ValueError("pieces must be contiguous")

    @classmethod
    def from_pieces(cls, triples, name="poly") -> PiecewisePolynomial:
        pieces = []
        for a, b, coeffs in triples:
            a, b = rat(a), rat(b)
            pieces.append(Piece(a, b, P.compose_affine(P.poly(*coeffs), a, b - a)))
        return cls(tuple(pieces), name)

    @classmethod
    def from_coeffs(cls, coeffs, left=0, right=1, name="poly") -> PiecewisePolynomial:
        return cls.from_pieces([(left, right, coeffs)], name)

    @property
    def domain(self) -> Segment:
        return Segment(self.pieces[0].lo, self.pieces[-1].hi)

    @property
    def sup_abs(self) -> Fraction:
        return max(P.eval_enclosure(p.loc, 0, 1).abs().hi for p in self.pieces)

    def _piece(self, x: Fraction) -> Piece:
        if not self.domain.contains(x):
            raise OutOfDomain(x)
        return next(p for p in self.pieces if p.lo <= x <= p.hi)

    def value(self, x: RatLike) -> Enclosure:
        x = rat(x)
        return Enclosure.exact(self._piece(x).value(x))

    def derivative(self, x: RatLike) -> Fraction:
        x = rat(x)
        return self._piece(x).slope(x)

    def integrate_abs_pow(self, seg, c, slope=0, y0=0, r=1, max_width=DEFAULT_WIDTH, **_):
        if seg.left < self.domain.left or seg.right > self.domain.right:
            raise OutOfDomain(seg)
        c, slope, y0 = rat(c), rat(slope), rat(y0)
        lin = P.poly(c - slope * y0, slope)
        total = Enclosure.exact(0)
        w = rat(max_width) / (1024 * len(self.pieces))
        for pc in self.pieces:
            lo, hi = max(pc.lo, seg.left), min(pc.hi, seg.right)
            if lo < hi:
                total = total + pc.integrate_abs_pow(lin, lo, hi, r, w)
        return total

    def abs_sublevel(self, seg, c, theta: Enclosure, width=DEFAULT_WIDTH, **_):
        inner, outer = IntervalUnion(), IntervalUnion()
        w = rat(width) / (1024 * len(self.pieces))
        for pc in self.pieces:
            lo, hi = max(pc.lo, seg.left), min(pc.hi, seg.right)
            if lo < hi:
                i, o = pc.abs_sublevel(rat(c), theta, lo, hi, w)
                inner, outer = inner.union(i), outer.union(o)
        return inner, outer


def polynomial(coeffs, left: RatLike = 0, right: RatLike = 1, name: str = "poly") -> PiecewisePolynomial:
    """``y -> sum(coeffs[k] * y**k)`` on ``[left, right]``."""
    return PiecewisePolynomial.from_pieces([(left, right, coeffs)], name)


def abs_function(half_width: RatLike = 1) -> PiecewisePolynomial:
    """``y -> |y|`` on ``[-half_width, half_width]``."""
    w = rat(half_width)
    return PiecewisePolynomial.from_pieces([(-w, 0, (0, -1)), (0, w, (0, 1))], "abs")


# -- module-level operations ---------------------------------------------


def F_eval(F, x: RatLike) -> Enclosure:
    return F.value(x)


def f_eval(F, x: RatLike) -> Fraction:
    return F.derivative(x)


def integrate_abs_pow(F, seg: Segment, c, slope=0, y0=0, r: int = 1, max_width=DEFAULT_WIDTH) -> Enclosure:
    return F.integrate_abs_pow(seg, c, slope, y0, r, max_width)


def vn_integral_exact(n: int, r: int) -> Fraction:
    """Integral of F**r over the plateau of a rank-n gap (main variant)."""
    if n < 1 or r < 1:
        raise ValueError("n and r must be positive")
    return Fraction(1, 2 * n**r * 3**n)
