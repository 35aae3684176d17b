"""Exact planar predicates and Delaunay triangulations of rational points.

All predicates are evaluated exactly over Fractions; no floating point
enters any decision.  Triangulations are immutable values: geometric data
(vertex coordinates) wraps a purely combinatorial oriented triangle
complex that is reused by the kinetic layer.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterable, Mapping, NamedTuple, Optional, Sequence, Tuple


class GeometryError(Exception):
    """Base class for geometry failures."""


class DegenerateInputError(GeometryError):
    """Input violates genericity; ``kind`` and ``ids`` name the offenders."""

    def __init__(self, kind: str, ids: Sequence[int], message: str = ""):
        self.kind = kind
        self.ids = tuple(ids)
        super().__init__(message or f"degenerate input ({kind}): {sorted(self.ids)}")


class CollinearTripleError(GeometryError):
    """incircle was called with a collinear base triple."""


class MissingEdgeError(GeometryError):
    """The queried pair is not an edge of the complex."""


class HullEdgeError(GeometryError):
    """The edge has a single incident triangle."""


class NonConvexQuadError(GeometryError):
    """The quadrilateral around the edge is not strictly convex."""


class NonSimplicialFlipError(GeometryError):
    """Flipping would create a duplicate edge."""


class Point(NamedTuple):
    x: Fraction
    y: Fraction


def point(x, y) -> Point:
    return Point(Fraction(x), Fraction(y))


def _sign(value) -> int:
    if value > 0:
        return 1
    if value < 0:
        return -1
    return 0


def orient(p: Point, q: Point, r: Point) -> int:
    """Sign of det(q - p, r - p); +1 means (p, q, r) turns counterclockwise."""
    return _sign((q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x))


def incircle(p: Point, q: Point, r: Point, s: Point) -> int:
    """+1 iff s lies strictly inside the circle through p, q, r.

    The base triple is reoriented counterclockwise internally, so the
    answer does not depend on the order of p, q, r.
    """
    o = orient(p, q, r)
    if o == 0:
        raise CollinearTripleError(f"collinear base triple {p}, {q}, {r}")
    if o < 0:
        q, r = r, q
    ax, ay = p.x - s.x, p.y - s.y
    bx, by = q.x - s.x, q.y - s.y
    cx, cy = r.x - s.x, r.y - s.y
    det = (
        (ax * ax + ay * ay) * (bx * cy - by * cx)
        - (bx * bx + by * by) * (ax * cy - ay * cx)
        + (cx * cx + cy * cy) * (ax * by - ay * bx)
    )
    return _sign(det)


def _canonical(tri: Tuple[int, int, int]) -> Tuple[int, int, int]:
    """Rotate a cyclic triple so the smallest id comes first."""
    a, b, c = tri
    if a <= b and a <= c:
        return (a, b, c)
    if b <= a and b <= c:
        return (b, c, a)
    return (c, a, b)


class EdgeComplex:
    """Oriented triangle complex on integer vertex ids.

    Triangles are cyclic triples stored in a canonical rotation; each
    directed edge belongs to at most one triangle, which makes quad
    extraction and flips purely combinatorial.
    """

    __slots__ = ("triangles", "_dir")

    def __init__(self, triangles: Iterable[Tuple[int, int, int]]):
        canon = frozenset(_canonical(tuple(t)) for t in triangles)
        directed: Dict[Tuple[int, int], Tuple[int, int, int]] = {}
        for tri in canon:
            a, b, c = tri
            if len({a, b, c}) != 3:
                raise GeometryError(f"degenerate triangle {tri}")
            for e in ((a, b), (b, c), (c, a)):
                if e in directed:
                    raise GeometryError(f"directed edge {e} used twice")
                directed[e] = tri
        object.__setattr__(self, "triangles", canon)
        object.__setattr__(self, "_dir", directed)

    def __setattr__(self, name, value):
        raise AttributeError("EdgeComplex is immutable")

    def __eq__(self, other) -> bool:
        if not isinstance(other, EdgeComplex):
            return NotImplemented
        return self.triangles == other.triangles

    def __hash__(self) -> int:
        return hash(self.triangles)

    def same_triangles(self, other: "EdgeComplex") -> bool:
        """Equality of the underlying unoriented triangle sets."""
        return self.triangle_sets() == other.triangle_sets()

    def triangle_sets(self) -> frozenset:
        return frozenset(frozenset(t) for t in self.triangles)

    def vertices(self) -> frozenset:
        return frozenset(v for t in self.triangles for v in t)

    def edges(self) -> frozenset:
        return frozenset(tuple(sorted(e)) for e in self._dir)

    def has_edge(self, edge: Tuple[int, int]) -> bool:
        a, b = edge
        return (a, b) in self._dir or (b, a) in self._dir

    def edge_triangles(self, edge: Tuple[int, int]) -> Tuple[Tuple[int, int, int], ...]:
        a, b = edge
        out = []
        for e in ((a, b), (b, a)):
            tri = self._dir.get(e)
            if tri is not None:
                out.append(tri)
        if not out:
            raise MissingEdgeError(f"no edge {tuple(sorted(edge))}")
        return tuple(out)

    def is_interior(self, edge: Tuple[int, int]) -> bool:
        a, b = edge
        return (a, b) in self._dir and (b, a) in self._dir

    def boundary_cycle(self) -> Tuple[int, ...]:
        """Boundary vertices in traversal order (empty for a closed complex)."""
        succ = {}
        for (a, b) in self._dir:
            if (b, a) not in self._dir:
                succ[a] = b  # hull edges are traversed counterclockwise
        if not succ:
            return ()
        start = min(succ)
        cycle = [start]
        cur = succ[start]
        while cur != start:
            cycle.append(cur)
            cur = succ[cur]
            if len(cycle) > len(succ):
                raise GeometryError("boundary is not a single cycle")
        return tuple(cycle)

    def quad_around(self, edge: Tuple[int, int]) -> Tuple[int, int, int, int]:
        """Quadrilateral (u, v, w, z) around an interior edge, in the
        complex's coherent (counterclockwise) order, with the edge = (u, w)
        and u the smaller id."""
        a, b = edge
        if not self.has_edge((a, b)):
            raise MissingEdgeError(f"no edge {tuple(sorted(edge))}")
        u, w = min(a, b), max(a, b)
        right = self._dir.get((w, u))
        left = self._dir.get((u, w))
        if right is None or left is None:
            raise HullEdgeError(f"edge {(u, w)} has one incident triangle")
        v = next(x for x in right if x != u and x != w)
        z = next(x for x in left if x != u and x != w)
        return (u, v, w, z)

    def flip(
        self,
        edge: Tuple[int, int],
        quad: Optional[Tuple[int, int, int, int]] = None,
    ) -> "EdgeComplex":
        """Replace the diagonal of the quad around ``edge`` by the other one."""
        u, v, w, z = quad if quad is not None else self.quad_around(edge)
        if tuple(sorted(edge)) != (u, w):
            raise MissingEdgeError(f"quad {quad} does not match edge {edge}")
        if self.has_edge((v, z)):
            raise NonSimplicialFlipError(f"edge {(v, z)} already present")
        old = {_canonical((u, v, w)), _canonical((u, w, z))}
        if not old <= self.triangles:
            raise MissingEdgeError(f"quad {quad} not found in complex")
        new = (self.triangles - old) | {_canonical((u, v, z)), _canonical((v, w, z))}
        return EdgeComplex(new)

    def __repr__(self) -> str:
        return f"EdgeComplex({sorted(self.triangles)})"


class Triangulation:
    """Triangulation of a finite planar point set with exact coordinates.

    Every stored triangle is counterclockwise; interior edges have two
    incident triangles and hull edges one.
    """

    __slots__ = ("vertices", "complex")

    def __init__(self, vertices: Mapping[int, Point], complex_: EdgeComplex):
        vertices = dict(vertices)
        if complex_.vertices() - set(vertices):
            raise GeometryError("triangles reference unknown vertices")
        for (a, b, c) in complex_.triangles:
            if orient(vertices[a], vertices[b], vertices[c]) <= 0:
                raise GeometryError(f"triangle {(a, b, c)} is not counterclockwise")
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "complex", complex_)

    def __setattr__(self, name, value):
        raise AttributeError("Triangulation is immutable")

    @property
    def triangles(self) -> frozenset:
        return self.complex.triangles

    def edges(self) -> frozenset:
        return self.complex.edges()

    def edge_adjacency(self) -> Dict[Tuple[int, int], Tuple[Tuple[int, int, int], ...]]:
        return {e: self.complex.edge_triangles(e) for e in sorted(self.complex.edges())}

    def hull(self) -> Tuple[int, ...]:
        """Convex hull vertices in counterclockwise order."""
        cycle = self.complex.boundary_cycle()
        return cycle

    def __eq__(self, other) -> bool:
        if not isinstance(other, Triangulation):
            return NotImplemented
        return self.vertices == other.vertices and self.complex == other.complex

    def __hash__(self) -> int:
        return hash((frozenset(self.vertices.items()), self.complex))

    def __repr__(self) -> str:
        return f"Triangulation({len(self.vertices)} vertices, {len(self.triangles)} triangles)"


def _validate_generic(items: Sequence[Tuple[int, Point]]) -> None:
    if len(items) < 3:
        raise DegenerateInputError("too-few-points", [i for i, _ in items],
                                   "need at least 3 points")
    seen: Dict[Point, int] = {}
    for i, p in items:
        if i in (0,) or not isinstance(i, int) or i < 0:
            raise GeometryError(f"vertex ids must be positive integers, got {i}")
        if p in seen:
            raise DegenerateInputError("coincident-pair", [seen[p], i])
        seen[p] = i
    ids = [i for i, _ in items]
    pts = {i: p for i, p in items}
    if all(
        orient(pts[ids[0]], pts[ids[1]], pts[k]) == 0 for k in ids[2:]
    ) and len(ids) >= 3:
        # first two define the only candidate line; everything on it
        raise DegenerateInputError("collinear-set", ids)
    for quad in combinations(ids, 4):
        base = None
        for triple in combinations(quad, 3):
            if orient(pts[triple[0]], pts[triple[1]], pts[triple[2]]) != 0:
                base = triple
                break
        if base is None:
            continue  # four collinear points never share a circle
        rest = next(i for i in quad if i not in base)
        if incircle(pts[base[0]], pts[base[1]], pts[base[2]], pts[rest]) == 0:
            raise DegenerateInputError("cocircular-4", quad)


def _locate(
    pts: Mapping[int, Point], triangles: set, p: Point
) -> Tuple[Optional[Tuple[int, int, int]], Optional[Tuple[int, int]]]:
    for tri in triangles:
        a, b, c = tri
        o1 = orient(pts[a], pts[b], p)
        o2 = orient(pts[b], pts[c], p)
        o3 = orient(pts[c], pts[a], p)
        if o1 >= 0 and o2 >= 0 and o3 >= 0:
            if o1 == 0:
                return tri, (a, b)
            if o2 == 0:
                return tri, (b, c)
            if o3 == 0:
                return tri, (c, a)
            return tri, None
    return None, None


def _boundary_cycle_of(directed: Dict[Tuple[int, int], tuple]) -> Dict[int, int]:
    succ = {}
    for (a, b) in directed:
        if (b, a) not in directed:
            succ[a] = b
    return succ


def delaunay(points: Sequence[Tuple[int, Point]]) -> Triangulation:
    """Delaunay triangulation of generic points by incremental insertion
    followed by exact Lawson legalization.

    Degenerate inputs (coincident pair, fully collinear set, cocircular
    4-tuple) are rejected with the offending ids.
    """
    items = [(int(i), p) for i, p in points]
    _validate_generic(items)
    pts = {i: p for i, p in items}
    ids = [i for i, _ in items]

    # seed with the first non-collinear triple
    i0, i1 = ids[0], ids[1]
    k = next(j for j in ids[2:] if orient(pts[i0], pts[i1], pts[j]) != 0)
    first = (i0, i1, k) if orient(pts[i0], pts[i1], pts[k]) > 0 else (i0, k, i1)
    triangles = {_canonical(first)}
    pending = [j for j in ids[2:] if j != k]

    def rebuild_directed():
        directed = {}
        for tri in triangles:
            a, b, c = tri
            for e in ((a, b), (b, c), (c, a)):
                directed[e] = tri
        return directed

    for j in pending:
        p = pts[j]
        tri, on_edge = _locate(pts, triangles, p)
        if tri is not None and on_edge is None:
            a, b, c = tri
            triangles.remove(tri)
            triangles |= {
                _canonical((a, b, j)),
                _canonical((b, c, j)),
                _canonical((c, a, j)),
            }
        elif tri is not None:
            a, b = on_edge
            directed = rebuild_directed()
            for e in ((a, b), (b, a)):
                owner = directed.get(e)
                if owner is None:
                    continue
                x = next(v for v in owner if v not in e)
                triangles.discard(owner)
                triangles |= {_canonical((e[0], j, x)), _canonical((j, e[1], x))}
        else:
            directed = rebuild_directed()
            succ = _boundary_cycle_of(directed)
            added = False
            for a, b in list(succ.items()):
                if orient(pts[a], pts[b], p) < 0:
                    triangles.add(_canonical((b, a, j)))
                    added = True
            if not added:
                raise GeometryError(f"failed to locate point {j}")

    # Lawson: flip strictly illegal interior edges until none remain
    changed = True
    while changed:
        changed = False
        directed = rebuild_directed()
        seen = set()
        for (a, b), tri in list(directed.items()):
            e = (min(a, b), max(a, b))
            if e in seen:
                continue
            seen.add(e)
            other = directed.get((b, a))
            if other is None or tri not in triangles or other not in triangles:
                continue
            v = next(x for x in tri if x not in (a, b))
            z = next(x for x in other if x not in (a, b))
            if incircle(pts[a], pts[b], pts[v], pts[z]) > 0:
                triangles -= {tri, other}
                # tri traverses a->b, so (a, b, v) and (b, a, z) are CCW
                triangles |= {_canonical((a, z, v)), _canonical((z, b, v))}
                changed = True
                break

    return Triangulation(pts, EdgeComplex(triangles))


def quad_around(tri: Triangulation, edge: Tuple[int, int]) -> Tuple[int, int, int, int]:
    """Counterclockwise quadrilateral (u, v, w, z) around an interior edge,
    with the edge = (u, w) and u its smaller endpoint."""
    return tri.complex.quad_around(edge)


def flip(tri: Triangulation, edge: Tuple[int, int]) -> Triangulation:
    """Replace the diagonal ``edge`` of its strictly convex quadrilateral."""
    u, v, w, z = tri.complex.quad_around(edge)
    pts = tri.vertices
    if orient(pts[u], pts[v], pts[z]) <= 0 or orient(pts[v], pts[w], pts[z]) <= 0:
        raise NonConvexQuadError(f"quad {(u, v, w, z)} around {edge} is not strictly convex")
    return Triangulation(pts, tri.complex.flip(edge, (u, v, w, z)))
