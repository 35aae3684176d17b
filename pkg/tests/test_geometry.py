import random
from fractions import Fraction

import pytest

from braidshear.geometry import (
    CollinearTripleError,
    DegenerateInputError,
    EdgeComplex,
    HullEdgeError,
    NonConvexQuadError,
    Triangulation,
    delaunay,
    flip,
    incircle,
    orient,
    point,
    quad_around,
)
from oracles import (
    brute_force_delaunay_triangles,
    empty_circumcircle_holds,
    random_generic_points,
)


def P(x, y):
    return point(x, y)


def parabola_points(n, eps=Fraction(1, 64)):
    return [(k, point(k, eps * k * k)) for k in range(1, n + 1)]


# -- predicates ---------------------------------------------------------


def test_orient_examples():
    assert orient(P(0, 0), P(1, 0), P(0, 1)) == 1
    assert orient(P(0, 0), P(1, 1), P(2, 2)) == 0
    assert orient(P(0, 0), P(0, 1), P(1, 0)) == -1


def test_incircle_examples():
    assert incircle(P(0, 0), P(1, 0), P(0, 1), P(1, 1)) == 0
    assert incircle(P(0, 0), P(2, 0), P(0, 2), P(1, 1)) == 1
    assert incircle(P(0, 0), P(2, 0), P(0, 2), P(10, 10)) == -1


def test_incircle_reorients_base_triple():
    rng = random.Random(7)
    for _ in range(25):
        pts = random_generic_points(rng, 4, span=12)
        coords = dict(pts)
        base = [coords[1], coords[2], coords[3]]
        s = coords[4]
        import itertools

        values = {
            incircle(*perm, s) for perm in itertools.permutations(base)
        }
        assert len(values) == 1


def test_incircle_collinear_base_is_error():
    with pytest.raises(CollinearTripleError):
        incircle(P(0, 0), P(1, 1), P(2, 2), P(0, 1))


def test_parabola_never_cocircular():
    pts = parabola_points(4)
    coords = dict(pts)
    assert incircle(coords[1], coords[2], coords[3], coords[4]) != 0
    # four distinct positive abscissas on y = eps*x^2 never share a circle
    rng = random.Random(9)
    eps = Fraction(1, 64)
    for _ in range(20):
        xs = sorted({Fraction(rng.randint(1, 400), rng.randint(1, 7)) for _ in range(4)})
        if len(xs) != 4:
            continue
        ps = [P(x, eps * x * x) for x in xs]
        assert incircle(*ps) != 0


# -- delaunay construction ----------------------------------------------


def test_parabola_n4_counts():
    tri = delaunay(parabola_points(4))
    assert len(tri.triangles) == 2
    assert len(tri.edges()) == 5
    assert len(tri.hull()) == 4


def test_parabola_n4_diagonal_matches_brute_force():
    pts = parabola_points(4)
    expected = brute_force_delaunay_triangles(pts)
    tri = delaunay(pts)
    assert tri.complex.triangle_sets() == expected
    # exactly one diagonal is present
    diagonals = {(1, 3), (2, 4)} & set(tri.edges())
    assert len(diagonals) == 1


def test_random_points_match_oracle():
    rng = random.Random(42)
    for _ in range(30):
        n = rng.randint(3, 8)
        pts = random_generic_points(rng, n)
        tri = delaunay(pts)
        assert tri.complex.triangle_sets() == brute_force_delaunay_triangles(pts)
        assert empty_circumcircle_holds(tri)
        h = len(tri.hull())
        assert len(tri.edges()) == 3 * n - 3 - h
        assert len(tri.triangles) == 2 * n - 2 - h


def test_twelve_points_match_oracle():
    rng = random.Random(77)
    pts = random_generic_points(rng, 12, span=60)
    tri = delaunay(pts)
    assert tri.complex.triangle_sets() == brute_force_delaunay_triangles(pts)
    assert empty_circumcircle_holds(tri)


def test_collinear_triple_inside_input_is_fine():
    pts = [(1, P(0, 0)), (2, P(1, 0)), (3, P(2, 0)), (4, P(1, 2))]
    tri = delaunay(pts)
    assert tri.complex.triangle_sets() == {
        frozenset((1, 2, 4)),
        frozenset((2, 3, 4)),
    }


def test_degenerate_inputs_rejected():
    with pytest.raises(DegenerateInputError) as e:
        delaunay([(1, P(0, 0)), (2, P(0, 0)), (3, P(1, 1)), (4, P(2, 0))])
    assert e.value.kind == "coincident-pair"
    assert set(e.value.ids) == {1, 2}

    with pytest.raises(DegenerateInputError) as e:
        delaunay([(1, P(0, 0)), (2, P(1, 1)), (3, P(2, 2)), (4, P(3, 3))])
    assert e.value.kind == "collinear-set"

    with pytest.raises(DegenerateInputError) as e:
        delaunay([(1, P(0, 0)), (2, P(1, 0)), (3, P(1, 1)), (4, P(0, 1))])
    assert e.value.kind == "cocircular-4"
    assert set(e.value.ids) == {1, 2, 3, 4}

    with pytest.raises(DegenerateInputError):
        delaunay([(1, P(0, 0)), (2, P(1, 0))])


# -- quad_around / flip --------------------------------------------------


def square_triangulation():
    pts = {1: P(0, 0), 2: P(1, 0), 3: P(1, 1), 4: P(0, 1)}
    complex_ = EdgeComplex([(1, 2, 3), (1, 3, 4)])
    return Triangulation(pts, complex_)


def test_edge_complex_rejects_nonmanifold_input():
    import pytest as _pytest

    from braidshear.geometry import GeometryError

    with _pytest.raises(GeometryError):
        EdgeComplex([(1, 2, 3), (1, 2, 4)])  # directed edge (1,2) used twice
    with _pytest.raises(GeometryError):
        EdgeComplex([(1, 2, 2)])


def test_quad_around_square():
    tri = square_triangulation()
    assert quad_around(tri, (1, 3)) == (1, 2, 3, 4)
    assert quad_around(tri, (3, 1)) == (1, 2, 3, 4)


def test_quad_around_hull_edge_error():
    tri = square_triangulation()
    with pytest.raises(HullEdgeError):
        quad_around(tri, (1, 2))


def test_quad_contains_queried_pair():
    rng = random.Random(3)
    for _ in range(10):
        pts = random_generic_points(rng, 7)
        tri = delaunay(pts)
        for edge in tri.edges():
            if not tri.complex.is_interior(edge):
                continue
            u, v, w, z = quad_around(tri, edge)
            assert {u, w} == set(edge)
            assert u == min(edge)


def test_flip_square_and_back():
    tri = square_triangulation()
    flipped = flip(tri, (1, 3))
    assert flipped.complex.triangle_sets() == {
        frozenset((1, 2, 4)),
        frozenset((2, 3, 4)),
    }
    assert (2, 4) in flipped.edges()
    assert (1, 3) not in flipped.edges()
    assert len(flipped.edges()) == len(tri.edges())
    back = flip(flipped, (2, 4))
    assert back.complex == tri.complex


def test_flip_preserves_hull():
    rng = random.Random(11)
    pts = random_generic_points(rng, 7)
    tri = delaunay(pts)
    for edge in tri.edges():
        if not tri.complex.is_interior(edge):
            continue
        u, v, w, z = quad_around(tri, edge)
        pvz = [tri.vertices[i] for i in (u, v, z)]
        pvwz = [tri.vertices[i] for i in (v, w, z)]
        if orient(*pvz) <= 0 or orient(*pvwz) <= 0:
            continue
        assert flip(tri, edge).hull() == tri.hull()


def test_flip_nonconvex_error():
    pts = {1: P(0, 0), 2: P(4, 0), 3: P(0, 4), 4: P(1, 1)}
    complex_ = EdgeComplex([(1, 2, 4), (2, 3, 4), (1, 4, 3)])
    tri = Triangulation(pts, complex_)
    with pytest.raises(NonConvexQuadError):
        flip(tri, (1, 4))  # 4 is interior; quad (1,2,4,3) is not strictly convex
