"""Certified real-root isolation for univariate polynomials over Q.

Dense coefficient lists (ascending degree, Fraction entries) are small at
this scale, so the Sturm chain is computed directly over Fractions.  The
isolation API guarantees open intervals whose endpoints are not roots and
that contain exactly one root each, refinable to any requested width.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, NamedTuple, Sequence, Tuple


class RootIsolationError(Exception):
    pass


Coeffs = List[Fraction]


def normalize(coeffs: Sequence) -> Coeffs:
    out = [Fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return out


def degree(coeffs: Coeffs) -> int:
    return len(coeffs) - 1


def evaluate(coeffs: Coeffs, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def derivative(coeffs: Coeffs) -> Coeffs:
    return [c * i for i, c in enumerate(coeffs)][1:]


def _rem(a: Coeffs, b: Coeffs) -> Coeffs:
    r = a[:]
    while len(r) >= len(b) and r:
        factor = r[-1] / b[-1]
        shift = len(r) - len(b)
        for i, c in enumerate(b):
            r[i + shift] -= factor * c
        r = normalize(r)
    return r


def gcd(a: Sequence, b: Sequence) -> Coeffs:
    """Monic gcd over Q (a nonzero constant for coprime inputs)."""
    a, b = normalize(a), normalize(b)
    while b:
        a, b = b, _rem(a, b)
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def squarefree_part(coeffs: Sequence) -> Coeffs:
    f = normalize(coeffs)
    if degree(f) < 1:
        return f
    g = gcd(f, derivative(f))
    if degree(g) == 0:
        return f
    q, r = _divmod(f, g)
    if r:
        raise RootIsolationError("squarefree division left a remainder")
    return q


def _divmod(a: Coeffs, b: Coeffs) -> Tuple[Coeffs, Coeffs]:
    r = a[:]
    q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    while len(r) >= len(b) and r:
        factor = r[-1] / b[-1]
        shift = len(r) - len(b)
        q[shift] = factor
        for i, c in enumerate(b):
            r[i + shift] -= factor * c
        r = normalize(r)
    return normalize(q), r


def deflate_at(coeffs: Coeffs, root: Fraction) -> Coeffs:
    """Divide out (x - root); the division must be exact."""
    q, r = _divmod(coeffs, [-root, Fraction(1)])
    if r:
        raise RootIsolationError(f"{root} is not a root")
    return q


def sturm_chain(f: Coeffs) -> List[Coeffs]:
    chain = [normalize(f), normalize(derivative(f))]
    while chain[-1]:
        nxt = [-c for c in _rem(chain[-2], chain[-1])]
        if not nxt:
            break
        chain.append(nxt)
    return [c for c in chain if c]


def _variations(chain: List[Coeffs], x: Fraction) -> int:
    signs = []
    for poly in chain:
        v = evaluate(poly, x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


class IsolatedRoot(NamedTuple):
    lo: Fraction
    hi: Fraction


_SPLIT_FRACTIONS = [Fraction(1, 2), Fraction(3, 7), Fraction(4, 7), Fraction(5, 11),
                    Fraction(6, 11), Fraction(7, 13), Fraction(8, 17), Fraction(9, 19)]


def _split_point(f: Coeffs, lo: Fraction, hi: Fraction) -> Fraction:
    for frac in _SPLIT_FRACTIONS:
        mid = lo + (hi - lo) * frac
        if evaluate(f, mid) != 0:
            return mid
    k = 23
    while True:
        mid = lo + (hi - lo) * Fraction(11, k)
        if evaluate(f, mid) != 0:
            return mid
        k += 2


def isolate_roots(coeffs: Sequence, lo: Fraction, hi: Fraction) -> List[IsolatedRoot]:
    """Isolate the real roots inside the open interval (lo, hi).

    Preconditions: lo < hi and neither endpoint is a root.  Returns
    disjoint open intervals in increasing order, one root each, whose
    endpoints are not roots.
    """
    f = squarefree_part(coeffs)
    if degree(f) < 1:
        return []
    if evaluate(f, lo) == 0 or evaluate(f, hi) == 0:
        raise RootIsolationError("endpoint is a root; deflate first")
    chain = sturm_chain(f)

    def recurse(a: Fraction, b: Fraction) -> List[IsolatedRoot]:
        count = _variations(chain, a) - _variations(chain, b)
        if count == 0:
            return []
        if count == 1:
            return [IsolatedRoot(a, b)]
        mid = _split_point(f, a, b)
        return recurse(a, mid) + recurse(mid, b)

    return recurse(lo, hi)


def refine_root(coeffs: Sequence, root: IsolatedRoot, width: Fraction) -> IsolatedRoot:
    """Shrink an isolating interval below ``width`` by sign bisection."""
    f = squarefree_part(coeffs)
    lo, hi = root
    s_lo = evaluate(f, lo)
    if s_lo == 0 or evaluate(f, hi) == 0:
        raise RootIsolationError("isolating interval endpoint is a root")
    sign_lo = 1 if s_lo > 0 else -1
    while hi - lo >= width:
        mid = (lo + hi) / 2
        v = evaluate(f, mid)
        if v == 0:
            delta = min(width / 4, (hi - mid) / 2, (mid - lo) / 2)
            return IsolatedRoot(mid - delta, mid + delta)
        if (1 if v > 0 else -1) == sign_lo:
            lo = mid
        else:
            hi = mid
    return IsolatedRoot(lo, hi)


def count_roots_closed(coeffs: Sequence, lo: Fraction, hi: Fraction) -> int:
    """Number of distinct real roots in the closed interval [lo, hi]."""
    f = squarefree_part(coeffs)
    if degree(f) < 1:
        return 0
    extra = 0
    while evaluate(f, lo) == 0:
        f = deflate_at(f, lo)
        extra += 1
        if degree(f) < 1:
            return min(extra, 1) + (1 if lo != hi and evaluate(normalize(coeffs), hi) == 0 else 0)
    lo_root = extra > 0
    extra = 0
    while evaluate(f, hi) == 0:
        f = deflate_at(f, hi)
        extra += 1
        if degree(f) < 1:
            break
    hi_root = extra > 0
    inner = 0
    if degree(f) >= 1:
        chain = sturm_chain(f)
        inner = _variations(chain, lo) - _variations(chain, hi)
    return inner + (1 if lo_root else 0) + (1 if hi_root and hi != lo else 0)


def has_common_root_in(a: Sequence, b: Sequence, lo: Fraction, hi: Fraction) -> bool:
    g = gcd(a, b)
    if degree(g) < 1:
        return False
    return count_roots_closed(g, lo, hi) > 0
