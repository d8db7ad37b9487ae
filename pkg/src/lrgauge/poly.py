"""Exact univariate polynomials over the rationals.

A polynomial is a tuple of ``Fraction`` coefficients, lowest degree first,
with trailing zeros stripped (the zero polynomial is ``()``).  Real roots are
located with Sturm sequences, so sign decisions never touch floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .numerics import Enclosure, IntervalUnion

Poly = tuple

ZERO: Poly = ()
ONE: Poly = (Fraction(1),)


def poly(*coeffs) -> Poly:
    return _trim(tuple(Fraction(c) for c in coeffs))


def _trim(p) -> Poly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def degree(p: Poly) -> int:
    return len(p) - 1


def add(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return _trim(
        (p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)
    )


def sub(p: Poly, q: Poly) -> Poly:
    return add(p, scale(q, -1))


def scale(p: Poly, c) -> Poly:
    c = Fraction(c)
    return _trim(c * a for a in p)


def mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ZERO
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _trim(out)


def power(p: Poly, k: int) -> Poly:
    out = ONE
    base = p
    while k:
        if k & 1:
            out = mul(out, base)
        k >>= 1
        if k:
            base = mul(base, base)
    return out


def evaluate(p: Poly, x) -> Fraction:
    acc = Fraction(0)
    for a in reversed(p):
        acc = acc * x + a
    return acc


def eval_enclosure(p: Poly, lo, hi) -> Enclosure:
    """Bound ``p`` on ``[lo, hi]`` by interval Horner evaluation."""
    x = Enclosure(lo, hi)
    acc = Enclosure.exact(0)
    for a in reversed(p):
        acc = acc * x + a
    return acc


def derivative(p: Poly) -> Poly:
    return _trim(i * p[i] for i in range(1, len(p)))


def antiderivative(p: Poly) -> Poly:
    return _trim([Fraction(0)] + [a / (i + 1) for i, a in enumerate(p)])


def integrate(p: Poly, a, b) -> Fraction:
    P = antiderivative(p)
    return evaluate(P, b) - evaluate(P, a)


def compose_affine(p: Poly, c0, c1) -> Poly:
    """Return ``y -> p(c0 + c1*y)``."""
    out = ZERO
    lin = poly(c0, c1)
    term = ONE
    for a in p:
        out = add(out, scale(term, a))
        term = mul(term, lin)
    return out


def divmod_poly(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p)
    quo = [Fraction(0)] * max(len(p) - len(q) + 1, 0)
    lead = q[-1]
    for i in range(len(p) - len(q), -1, -1):
        c = rem[i + len(q) - 1] / lead
        quo[i] = c
        if c:
            for j, b in enumerate(q):
                rem[i + j] -= c * b
    return _trim(quo), _trim(rem[: len(q) - 1])


def gcd(p: Poly, q: Poly) -> Poly:
    while q:
        p, q = q, divmod_poly(p, q)[1]
    if not p:
        return ZERO
    return scale(p, 1 / p[-1])


def squarefree(p: Poly) -> Poly:
    if degree(p) < 1:
        return p
    g = gcd(p, derivative(p))
    return divmod_poly(p, g)[0] if degree(g) > 0 else p


def sturm_sequence(p: Poly) -> list[Poly]:
    seq = [p, derivative(p)]
    while seq[-1]:
        r = divmod_poly(seq[-2], seq[-1])[1]
        if not r:
            break
        seq.append(scale(r, -1))
    return [s for s in seq if s]


def _variations(seq, x) -> int:
    count = 0
    prev = 0
    for s in seq:
        v = evaluate(s, x)
        if v == 0:
            continue
        sgn = 1 if v > 0 else -1
        if prev and sgn != prev:
            count += 1
        prev = sgn
    return count


def isolate_roots(p: Poly, a, b, width) -> list[tuple[Fraction, Fraction]]:
    """Distinct real roots of ``p`` in ``[a, b]`` as disjoint brackets.

    Each bracket ``(lo, hi)`` holds exactly one root and has ``hi - lo <= width``;
    a root found exactly is returned as ``(x, x)``.
    """
    a, b, width = Fraction(a), Fraction(b), Fraction(width)
    if degree(p) < 1:
        if not p:
            raise ValueError("the zero polynomial has no isolated roots")
        return []
    p = squarefree(p)
    out = []
    if evaluate(p, a) == 0:
        out.append((a, a))
    if a == b:
        return out
    seq = sturm_sequence(p)
    stack = [(a, b, _variations(seq, a), _variations(seq, b))]
    found = []
    while stack:
        lo, hi, vlo, vhi = stack.pop()
        n = vlo - vhi  # roots in (lo, hi]
        if n <= 0:
            continue
        if n == 1:
            phi = evaluate(p, hi)
            if phi == 0:
                found.append((hi, hi))
                continue
            plo = evaluate(p, lo)
            if plo != 0:
                # one simple root and a sign change: plain bisection suffices
                found.append(_bisect_sign(p, lo, hi, plo > 0, width))
                continue
        mid = (lo + hi) / 2
        vmid = _variations(seq, mid)
        stack.append((lo, mid, vlo, vmid))
        stack.append((mid, hi, vmid, vhi))
    out.extend(sorted(found))
    return out


def _bisect_sign(p: Poly, lo, hi, lo_positive: bool, width):
    while hi - lo > width:
        mid = (lo + hi) / 2
        v = evaluate(p, mid)
        if v == 0:
            return (mid, mid)
        if (v > 0) == lo_positive:
            lo = mid
        else:
            hi = mid
    return (lo, hi)


def _sign_pieces(q: Poly, a, b, width):
    """Split ``[a, b]`` at the roots of ``q``.

    Yields ``("sign", lo, hi, s)`` where ``q`` has constant sign ``s`` on the
    interior, and ``("root", lo, hi, None)`` for non-degenerate brackets.
    """
    roots = isolate_roots(q, a, b, width)
    cursor = Fraction(a)
    for lo, hi in roots:
        if lo > cursor:
            m = (cursor + lo) / 2
            yield ("sign", cursor, lo, 1 if evaluate(q, m) > 0 else -1)
        if hi > lo:
            yield ("root", lo, hi, None)
        cursor = max(cursor, hi)
    if b > cursor:
        m = (cursor + b) / 2
        yield ("sign", cursor, Fraction(b), 1 if evaluate(q, m) > 0 else -1)


def integrate_abs_pow(q: Poly, a, b, r: int, width) -> Enclosure:
    """Enclose the integral of ``|q(y)|**r`` over ``[a, b]``."""
    a, b = Fraction(a), Fraction(b)
    if a >= b or not q:
        return Enclosure.exact(0)
    if r % 2 == 0:
        return Enclosure.exact(integrate(power(q, r), a, b))
    if degree(q) == 0:
        return Enclosure.exact(abs(q[0]) ** r * (b - a))
    qr = power(q, r)
    total = Enclosure.exact(0)
    for kind, lo, hi, s in _sign_pieces(q, a, b, width):
        if kind == "sign":
            total = total + s * integrate(qr, lo, hi)
        else:
            bound = eval_enclosure(q, lo, hi).abs().hi ** r * (hi - lo)
            total = total + Enclosure(abs(integrate(qr, lo, hi)), bound)
    return total


def sublevel_set(q: Poly, a, b, width) -> tuple[IntervalUnion, IntervalUnion]:
    """Inner and outer approximations of ``{y in [a, b] : q(y) <= 0}``."""
    a, b = Fraction(a), Fraction(b)
    if not q or degree(q) == 0:
        full = IntervalUnion(((a, b),)) if (not q or q[0] <= 0) and a < b else IntervalUnion()
        return full, full
    inner, outer = [], []
    for kind, lo, hi, s in _sign_pieces(q, a, b, width):
        if kind == "sign":
            if s < 0:
                inner.append((lo, hi))
                outer.append((lo, hi))
        else:
            outer.append((lo, hi))
    return IntervalUnion(tuple(inner)), IntervalUnion(tuple(outer))


def binomial_expand(c, k: int) -> list[Fraction]:
    """Coefficients of ``(X - c)**k`` in powers of X, lowest first."""
    c = Fraction(c)
    return [comb(k, j) * (-c) ** (k - j) for j in range(k + 1)]
