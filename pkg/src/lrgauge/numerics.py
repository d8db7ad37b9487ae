"""Exact rationals, two-sided enclosures and finite interval unions.

Every real quantity in the package is either an exact ``Fraction`` or an
``Enclosure`` whose endpoints are exact ``Fraction`` values.  Strict
inequalities are decided by comparing enclosure endpoints, never floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Fraction
RatLike = Union[Fraction, int, str]

DEFAULT_WIDTH = Fraction(1, 10**12)


class NegativeRadicand(ValueError):
    pass


def rat(x: RatLike) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings.  Floats are refused."""
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass a Fraction or a 'p/q' string")
    return Fraction(x)


def fmt_rat(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class Enclosure:
    """Closed interval [lo, hi] known to contain some real quantity."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", rat(self.lo))
        object.__setattr__(self, "hi", rat(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty enclosure [{self.lo}, {self.hi}]")

    @classmethod
    def exact(cls, x: RatLike) -> Enclosure:
        return cls(x, x)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    def contains(self, x: RatLike) -> bool:
        return self.lo <= rat(x) <= self.hi

    def __add__(self, other):
        other = _enc(other)
        return Enclosure(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __sub__(self, other):
        other = _enc(other)
        return Enclosure(self.lo - other.hi, self.hi - other.lo)

    def __rsub__(self, other):
        return _enc(other) - self

    def __neg__(self):
        return Enclosure(-self.hi, -self.lo)

    def __mul__(self, other):
        other = _enc(other)
        p = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
        return Enclosure(min(p), max(p))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _enc(other)
        if other.lo <= 0 <= other.hi:
            raise ZeroDivisionError("divisor enclosure contains 0")
        return self * Enclosure(1 / other.hi, 1 / other.lo)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 1:
            raise ValueError("exponent must be a positive integer")
        if self.lo >= 0:
            return Enclosure(self.lo**k, self.hi**k)
        if self.hi <= 0:
            a, b = (-self.hi) ** k, (-self.lo) ** k
            return Enclosure(a, b) if k % 2 == 0 else Enclosure(-b, -a)
        top = max(-self.lo, self.hi) ** k
        return Enclosure(0, top) if k % 2 == 0 else Enclosure(self.lo**k, self.hi**k)

    def abs(self) -> Enclosure:
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return Enclosure(0, max(-self.lo, self.hi))

    def outward(self, scale: int) -> Enclosure:
        """Round endpoints outward to multiples of 1/scale, leaving short denominators alone."""
        lo, hi = self.lo, self.hi
        if lo.denominator > scale:
            lo = Fraction(math.floor(lo * scale), scale)
        if hi.denominator > scale:
            hi = Fraction(math.ceil(hi * scale), scale)
        return Enclosure(lo, hi)

    def hull(self, other) -> Enclosure:
        other = _enc(other)
        return Enclosure(min(self.lo, other.lo), max(self.hi, other.hi))

    def __str__(self):
        return f"{fmt_rat(self.lo)}..{fmt_rat(self.hi)}"


def _enc(x) -> Enclosure:
    return x if isinstance(x, Enclosure) else Enclosure.exact(x)


def enclosure_arith(a: Enclosure, b: Enclosure | int | None, op: str) -> Enclosure:
    """Dispatch ``add``, ``sub``, ``mul`` or ``pow_k``; for ``pow_k`` pass k as ``b``."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "pow_k":
        if a.lo < 0:
            raise ValueError("pow_k requires a nonnegative base")
        return a ** int(b)
    raise ValueError(f"unknown op {op!r}")


def iroot_floor(n: int, r: int) -> int:
    """Largest integer y with y**r <= n, for n >= 0."""
    if n < 0:
        raise NegativeRadicand(n)
    if n < 2 or r == 1:
        return n
    # Newton from above converges monotonically to the floor
    y = 1 << -(-n.bit_length() // r)
    while True:
        z = ((r - 1) * y + n // y ** (r - 1)) // r
        if z >= y:
            break
        y = z
    while y**r > n:
        y -= 1
    while (y + 1) ** r <= n:
        y += 1
    return y


def _root_down(x: Fraction, r: int, scale: int) -> Fraction:
    # floor(x^(1/r) * scale) / scale
    return Fraction(iroot_floor(x.numerator * scale**r // x.denominator, r), scale)


def _root_up(x: Fraction, r: int, scale: int) -> Fraction:
    num = x.numerator * scale**r
    q, rem = divmod(num, x.denominator)
    y = iroot_floor(q, r)
    if y**r != q or rem:
        y += 1
    return Fraction(y, scale)


def root_enclosure(x: Enclosure | RatLike, r: int, max_width: RatLike = DEFAULT_WIDTH) -> Enclosure:
    """Enclose ``x**(1/r)``; widens by at most ``max_width`` beyond the input spread."""
    x = _enc(x) if not isinstance(x, Enclosure) else x
    if x.lo < 0:
        raise NegativeRadicand(f"{x} has a negative lower end")
    if r < 1:
        raise ValueError("r must be a positive integer")
    max_width = rat(max_width)
    if max_width <= 0:
        raise ValueError("max_width must be positive")
    scale = 1 << max(1, (2 / max_width).__ceil__().bit_length())
    if r == 1:
        return x.outward(scale)
    lo = _root_down(x.lo, r, scale)
    hi = _root_up(x.hi, r, scale)
    return Enclosure(lo, hi)


@dataclass(frozen=True)
class IntervalUnion:
    """Finite union of closed segments, normalized on construction.

    Parts are stored as ``(left, right)`` pairs with ``left < right``, sorted,
    with touching or overlapping parts merged.  Degenerate parts are dropped;
    they carry no measure.
    """

    parts: tuple[tuple[Fraction, Fraction], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "parts", _normalize(self.parts))

    @classmethod
    def of(cls, pieces: Iterable) -> IntervalUnion:
        out = []
        for p in pieces:
            if hasattr(p, "left"):
                out.append((p.left, p.right))
            else:
                out.append((rat(p[0]), rat(p[1])))
        return cls(tuple(out))

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __bool__(self):
        return bool(self.parts)

    def contains(self, x: RatLike) -> bool:
        x = rat(x)
        return any(a <= x <= b for a, b in self.parts)

    def union(self, other: IntervalUnion) -> IntervalUnion:
        return IntervalUnion(self.parts + other.parts)

    def intersect(self, other: IntervalUnion) -> IntervalUnion:
        out = []
        i = j = 0
        A, B = self.parts, other.parts
        while i < len(A) and j < len(B):
            lo = max(A[i][0], B[j][0])
            hi = min(A[i][1], B[j][1])
            if lo < hi:
                out.append((lo, hi))
            if A[i][1] < B[j][1]:
                i += 1
            else:
                j += 1
        return IntervalUnion(tuple(out))

    def clip(self, a: RatLike, b: RatLike) -> IntervalUnion:
        return self.intersect(IntervalUnion(((rat(a), rat(b)),)))

    def shift(self, d: RatLike) -> IntervalUnion:
        d = rat(d)
        return IntervalUnion(tuple((a + d, b + d) for a, b in self.parts))

    def reflect(self) -> IntervalUnion:
        return IntervalUnion(tuple((-b, -a) for a, b in self.parts))

    @property
    def measure(self) -> Fraction:
        return union_measure(self)

    def __str__(self):
        return " u ".join(f"[{fmt_rat(a)},{fmt_rat(b)}]" for a, b in self.parts) or "{}"


def _normalize(parts: Sequence) -> tuple:
    cleaned = sorted((rat(a), rat(b)) for a, b in parts)
    out: list[list[Fraction]] = []
    for a, b in cleaned:
        if a > b:
            raise ValueError(f"reversed part [{a}, {b}]")
        if a == b:
            continue
        if out and a <= out[-1][1]:
            out[-1][1] = max(out[-1][1], b)
        else:
            out.append([a, b])
    return tuple((a, b) for a, b in out)


def union_measure(u: IntervalUnion) -> Fraction:
    return sum((b - a for a, b in u.parts), Fraction(0))
