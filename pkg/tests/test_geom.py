from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from minlink.geom import (Point, Segment, along, convex_intersection, direction,
                          direction_of, orient, polygon_area2, pt, seg,
                          segments_intersect)


def test_orient_examples():
    assert orient(pt(0, 0), pt(1, 0), pt(0, 1)) == 1
    assert orient(pt(0, 0), pt(1, 1), pt(2, 2)) == 0
    assert orient(pt(0, 0), pt(1, 0), pt(2, -1)) == -1


def test_orient_rational():
    assert orient(pt("1/3", 0), pt("2/3", 0), pt("1/2", "1/7")) == 1


def test_segments_intersect_point():
    got = segments_intersect(seg(0, 0, 2, 2), seg(0, 2, 2, 0))
    assert got == pt(1, 1)


def test_segments_intersect_overlap():
    got = segments_intersect(seg(0, 0, 2, 0), seg(1, 0, 3, 0))
    assert isinstance(got, Segment)
    assert {got.a, got.b} == {pt(1, 0), pt(2, 0)}


def test_segments_intersect_empty():
    assert segments_intersect(seg(0, 0, 1, 0), seg(0, 1, 1, 1)) is None


def test_segments_touch_endpoint():
    assert segments_intersect(seg(0, 0, 1, 0), seg(1, 0, 2, 5)) == pt(1, 0)


def test_along_examples():
    d = direction(1, 0)
    assert along(d, pt(0, 0), pt(5, 3)) == 1
    assert along(d, pt(0, 2), pt(9, 2)) == 0
    assert along(direction(1, 1), pt(0, 0), pt(2, 1)) == -1


def test_direction_canonical():
    assert direction(2, -4) == direction(-1, 2)
    assert direction(-3, 0) == direction(1, 0)
    with pytest.raises(ValueError):
        direction(0, 0)


def test_direction_of():
    assert direction_of(pt(0, 0), pt("1/2", "1/2")) == direction(1, 1)


coords = st.integers(min_value=-50, max_value=50)
points = st.builds(pt, coords, coords)


@given(points, points, points)
def test_orient_antisymmetric(p, q, r):
    assert orient(p, q, r) == -orient(p, r, q)


@given(points, points, points, coords, coords)
def test_orient_translation_invariant(p, q, r, dx, dy):
    d = pt(dx, dy)
    assert orient(p, q, r) == orient(p + d, q + d, r + d)


@given(points, points, points, points)
def test_intersect_symmetric(a, b, c, d):
    s1, s2 = Segment(a, b), Segment(c, d)
    r1, r2 = segments_intersect(s1, s2), segments_intersect(s2, s1)
    if isinstance(r1, Segment):
        assert isinstance(r2, Segment)
        assert {r1.a, r1.b} == {r2.a, r2.b}
    else:
        assert r1 == r2


@given(points, points, points, points)
def test_intersect_point_on_both(a, b, c, d):
    from minlink.geom import on_segment
    r = segments_intersect(Segment(a, b), Segment(c, d))
    if isinstance(r, Point):
        assert on_segment(r, Segment(a, b)) and on_segment(r, Segment(c, d))


@given(points, points)
def test_along_antisymmetric(p, q):
    d = direction(1, 2)
    assert along(d, p, q) == -along(d, q, p)


def test_convex_intersection_squares():
    a = [pt(0, 0), pt(4, 0), pt(4, 4), pt(0, 4)]
    b = [pt(2, 2), pt(6, 2), pt(6, 6), pt(2, 6)]
    inter = convex_intersection(a, b)
    assert polygon_area2(inter) == 2 * 4  # 2x2 square


def test_convex_intersection_disjoint():
    a = [pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)]
    b = [pt(5, 5), pt(6, 5), pt(6, 6), pt(5, 6)]
    assert convex_intersection(a, b) == [] or polygon_area2(convex_intersection(a, b)) == 0
