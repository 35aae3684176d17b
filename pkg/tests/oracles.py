"""Independent brute-force oracles shared by the test suite."""

from fractions import Fraction
from itertools import combinations
import random

from braidshear.geometry import Point, Triangulation, incircle, orient


def brute_force_delaunay_triangles(points):
    """All triples whose circumcircle is strictly empty of the other points.

    O(n^4); valid for generic inputs (no cocircular 4-tuple).  Returns a
    frozenset of unordered triangle id-sets.
    """
    pts = dict(points)
    ids = sorted(pts)
    triangles = set()
    for a, b, c in combinations(ids, 3):
        if orient(pts[a], pts[b], pts[c]) == 0:
            continue
        if all(
            incircle(pts[a], pts[b], pts[c], pts[d]) < 0
            for d in ids
            if d not in (a, b, c)
        ):
            triangles.add(frozenset((a, b, c)))
    return frozenset(triangles)


def random_generic_points(rng: random.Random, n: int, span: int = 40):
    """A generic random rational point set, resampling degenerate draws."""
    while True:
        pts = []
        used = set()
        for i in range(1, n + 1):
            while True:
                p = Point(
                    Fraction(rng.randint(-span, span), rng.randint(1, 6)),
                    Fraction(rng.randint(-span, span), rng.randint(1, 6)),
                )
                if p not in used:
                    used.add(p)
                    break
            pts.append((i, p))
        if _is_generic(pts):
            return pts


def _is_generic(points):
    pts = dict(points)
    ids = sorted(pts)
    if all(orient(pts[ids[0]], pts[ids[1]], pts[k]) == 0 for k in ids[2:]):
        return False
    for quad in combinations(ids, 4):
        base = None
        for triple in combinations(quad, 3):
            if orient(pts[triple[0]], pts[triple[1]], pts[triple[2]]) != 0:
                base = triple
                break
        if base is None:
            continue
        rest = next(i for i in quad if i not in base)
        if incircle(pts[base[0]], pts[base[1]], pts[base[2]], pts[rest]) == 0:
            return False
    return True


def empty_circumcircle_holds(tri: Triangulation) -> bool:
    pts = tri.vertices
    for (a, b, c) in tri.triangles:
        for d in pts:
            if d in (a, b, c):
                continue
            if incircle(pts[a], pts[b], pts[c], pts[d]) >= 0:
                return False
    return True
