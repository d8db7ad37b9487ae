"""Exact geometry of the classical ternary Cantor set.

Rank-n segments are named by words over ``{"L", "R"}``; the empty word is
``[0, 1]``.  Each letter keeps the left or right closed third of the current
segment.  Gaps (removed open middle thirds) are reported as the closed
``Segment`` of their closure.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from .numerics import RatLike, rat
from .partitions import OutOfDomain, Segment

Address = str


def check_address(a: Address) -> Address:
    if any(ch not in "LR" for ch in a):
        raise ValueError(f"address must be a word over L/R, got {a!r}")
    return a


def rank_left(a: Address) -> Fraction:
    left = Fraction(0)
    step = Fraction(1)
    for ch in check_address(a):
        step /= 3
        if ch == "R":
            left += 2 * step
    return left


def rank_segment(a: Address) -> Segment:
    left = rank_left(a)
    return Segment(left, left + Fraction(1, 3 ** len(a)))


def contiguous_interval(a: Address) -> Segment:
    """Closure of the middle third removed from ``rank_segment(a)``; rank ``len(a) + 1``."""
    left = rank_left(a)
    third = Fraction(1, 3 ** (len(a) + 1))
    return Segment(left + third, left + 2 * third)


def v_interval(a: Address) -> Segment:
    u = contiguous_interval(a)
    quarter = u.length / 4
    return Segment(u.left + quarter, u.right - quarter)


def extensions(a: Address, l: int) -> list[Address]:
    """All length-``l`` extensions of ``a``, left to right."""
    if l < 0:
        raise ValueError("l must be nonnegative")
    return [a + "".join(w) for w in product("LR", repeat=l)]


def decompose(a: Address, l: int) -> tuple[list[Address], list[Segment]]:
    """Rank-(n+l) segments inside ``rank_segment(a)`` and the gaps between them.

    The ``2**l - 1`` gaps are the closures of all removed intervals of ranks
    ``n+1 .. n+l`` inside the parent, in left-to-right order.
    """
    segs = extensions(check_address(a), l)
    gaps = []
    for left_a, right_a in zip(segs, segs[1:]):
        gaps.append(Segment(rank_segment(left_a).right, rank_left(right_a)))
    return segs, gaps


def gap_rank(a: Address, l: int, k: int) -> int:
    """Rank of the k-th gap (0-based) of ``decompose(a, l)``."""
    if not 0 <= k < 2**l - 1:
        raise IndexError(f"gap index {k} out of range for l={l}")
    # gap k sits between extensions k and k+1; its rank is fixed by the
    # longest common prefix of the two words
    i = k + 1
    trailing = (i & -i).bit_length() - 1
    return len(a) + l - trailing


def left_adjoining_segment(a: Address, l: int, k: int) -> Address:
    if not 0 <= k < 2**l - 1:
        raise IndexError(f"gap index {k} out of range for l={l}")
    return a + format(k, "b").zfill(l).replace("0", "L").replace("1", "R")


def address_of(x: RatLike, max_rank: int | None = None) -> Address:
    """Longest address whose rank segment contains ``x``.

    For points of the Cantor set the address is infinite; it is cut at
    ``max_rank`` (required in that case, else ``ValueError``).
    """
    x = rat(x)
    if not 0 <= x <= 1:
        raise OutOfDomain(x)
    word = []
    seen = set()
    y = x  # position inside the current segment, rescaled to [0, 1]
    while max_rank is None or len(word) < max_rank:
        if y <= Fraction(1, 3):
            word.append("L")
            y *= 3
        elif y >= Fraction(2, 3):
            word.append("R")
            y = 3 * y - 2
        else:
            return "".join(word)
        if max_rank is None:
            if y in seen:
                raise ValueError(f"{x} lies in the Cantor set; pass max_rank")
            seen.add(y)
    return "".join(word)


def in_cantor(x: RatLike) -> bool:
    """Exact membership via the ternary digit recurrence with cycle detection."""
    x = rat(x)
    if not 0 <= x <= 1:
        raise OutOfDomain(x)
    seen = set()
    y = x
    while y not in seen:
        seen.add(y)
        if y <= Fraction(1, 3):
            y *= 3
        elif y >= Fraction(2, 3):
            y = 3 * y - 2
        else:
            return False
    return True


def cantor_endpoints(a: Address, depth: int) -> list[Fraction]:
    """Endpoints of the rank ``len(a)+depth`` segments inside ``rank_segment(a)``, sorted."""
    pts = set()
    for w in extensions(a, depth):
        s = rank_segment(w)
        pts.add(s.left)
        pts.add(s.right)
    return sorted(pts)
