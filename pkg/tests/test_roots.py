from fractions import Fraction

import pytest

from braidshear.roots import (
    RootIsolationError,
    count_roots_closed,
    deflate_at,
    evaluate,
    has_common_root_in,
    isolate_roots,
    refine_root,
    squarefree_part,
)


def poly_from_roots(roots, extra=None):
    """(x - r1)(x - r2)... optionally times an irreducible extra factor."""
    coeffs = [Fraction(1)]
    for r in roots:
        new = [Fraction(0)] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            new[i + 1] += c
            new[i] += -Fraction(r) * c
        coeffs = new
    if extra:
        out = [Fraction(0)] * (len(coeffs) + len(extra) - 1)
        for i, a in enumerate(coeffs):
            for j, b in enumerate(extra):
                out[i + j] += a * Fraction(b)
        coeffs = out
    return coeffs


def test_isolation_of_known_roots():
    f = poly_from_roots([Fraction(1, 3), Fraction(1, 2)], extra=[1, 0, 1])  # x^2+1
    roots = isolate_roots(f, Fraction(0), Fraction(1))
    assert len(roots) == 2
    (a1, b1), (a2, b2) = roots
    assert a1 < Fraction(1, 3) < b1
    assert a2 < Fraction(1, 2) < b2
    assert b1 <= a2


def test_isolation_handles_multiple_roots():
    f = poly_from_roots([Fraction(1, 2), Fraction(1, 2), Fraction(2, 3)])
    roots = isolate_roots(f, Fraction(0), Fraction(1))
    assert len(roots) == 2


def test_isolation_rejects_root_endpoint():
    f = poly_from_roots([0, Fraction(1, 2)])
    with pytest.raises(RootIsolationError):
        isolate_roots(f, Fraction(0), Fraction(1))
    g = deflate_at(f, Fraction(0))
    assert len(isolate_roots(g, Fraction(0), Fraction(1))) == 1


def test_refinement_narrows_and_keeps_root():
    target = Fraction(2)
    f = [-2, 0, 1]  # x^2 - 2, root sqrt(2)
    (root,) = isolate_roots(f, Fraction(1), Fraction(2))
    width = Fraction(1, 2 ** 20)
    refined = refine_root(f, root, width)
    assert refined.hi - refined.lo < width
    assert evaluate(f, refined.lo) * evaluate(f, refined.hi) < 0


def test_refinement_of_exact_rational_root():
    f = poly_from_roots([Fraction(1, 2)])
    (root,) = isolate_roots(f, Fraction(0), Fraction(1))
    refined = refine_root(f, root, Fraction(1, 1024))
    assert refined.lo < Fraction(1, 2) < refined.hi
    assert refined.hi - refined.lo < Fraction(1, 1024)


def test_count_roots_closed_with_endpoint_roots():
    f = poly_from_roots([0, Fraction(1, 2), 1])
    assert count_roots_closed(f, Fraction(0), Fraction(1)) == 3
    assert count_roots_closed(f, Fraction(1, 4), Fraction(3, 4)) == 1
    assert count_roots_closed(f, Fraction(0), Fraction(1, 4)) == 1
    assert count_roots_closed([1, 0, 1], Fraction(-5), Fraction(5)) == 0


def test_common_root_detection():
    shared = Fraction(3, 7)
    f = poly_from_roots([shared, Fraction(1, 5)])
    g = poly_from_roots([shared, Fraction(4, 5)])
    assert has_common_root_in(f, g, Fraction(0), Fraction(1))
    h = poly_from_roots([Fraction(2, 7)])
    assert not has_common_root_in(f, h, Fraction(0), Fraction(1))


def test_squarefree_part():
    f = poly_from_roots([Fraction(1, 2), Fraction(1, 2)])
    sf = squarefree_part(f)
    assert len(sf) == 2  # degree 1
    assert evaluate(sf, Fraction(1, 2)) == 0
