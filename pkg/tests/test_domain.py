import json

import pytest

from minlink.domain import (AXES, DomainInstance, PolygonalDomain,
                            has_blocking_violations, instance_from_dict,
                            instance_to_dict, is_c_oriented, load_instance,
                            orientation_set, save_instance, validate)
from minlink.geom import Point, pt
from fractions import Fraction

from conftest import hole_square, square


def test_validate_ok(square_with_hole):
    assert validate(square_with_hole) == []


def test_validate_hole_outside():
    d = PolygonalDomain(square(), [hole_square(20, 20, 22, 22)])
    kinds = {v.kind for v in validate(d)}
    assert "hole not inside outer" in kinds


def test_validate_crossing_ring():
    d = PolygonalDomain([pt(0, 0), pt(4, 4), pt(4, 0), pt(0, 4)])
    kinds = {v.kind for v in validate(d)}
    assert "ring not simple" in kinds


def test_validate_touching_hole():
    d = PolygonalDomain(square(), [hole_square(0, 4, 2, 6)])
    kinds = {v.kind for v in validate(d)}
    assert "rings touch" in kinds


def test_validate_orientation():
    d = PolygonalDomain(list(reversed(square())))
    kinds = {v.kind for v in validate(d)}
    assert "orientation" in kinds


def test_degenerate_support_warning():
    # two hole edges share the supporting line y=4 with the second hole
    d = PolygonalDomain(square(20),
                        [hole_square(2, 4, 4, 6), hole_square(8, 4, 10, 7)])
    vs = validate(d)
    assert any(v.kind == "degenerate-support" for v in vs)
    assert not has_blocking_violations(vs)


def test_is_c_oriented(square_with_hole, axes):
    assert is_c_oriented(square_with_hole, axes)
    assert not is_c_oriented(square_with_hole, orientation_set([(1, 0), (1, 1)]))
    tri = PolygonalDomain([pt(0, 0), pt(4, 0), pt(2, 4)])
    # edge directions: (1,0), (1,2) via (4,0)->(2,4), (-1,2) wait (2,4)->(0,0) = (-2,-4) -> (1,2)
    assert is_c_oriented(tri, orientation_set([(1, 0), (1, 2), (-1, 2)]))


def test_point_membership(square_with_hole):
    d = square_with_hole
    assert d.point_in_free_space(pt(1, 1))
    assert d.point_in_free_space(pt(4, 4))      # hole corner: boundary
    assert not d.point_in_free_space(pt(5, 5))  # hole interior
    assert not d.point_in_free_space(pt(-1, 5))
    assert d.point_strictly_inside(pt(1, 1))
    assert not d.point_strictly_inside(pt(0, 0))


def test_segment_free(square_with_hole):
    d = square_with_hole
    assert d.segment_in_free_space(pt(1, 1), pt(9, 1))
    assert not d.segment_in_free_space(pt(5, 1), pt(5, 9))
    # grazing the hole corner is allowed (closed free space)
    assert d.segment_in_free_space(pt(2, 6), pt(6, 2))
    assert not d.segment_in_free_space(pt(2, 2), pt(6, 6))  # hole diagonal


def test_max_free_segment(square_with_hole):
    d = square_with_hole
    from minlink.geom import direction
    s = d.max_free_segment(pt(5, 1), direction(1, 0))
    assert {s.a, s.b} == {pt(0, 1), pt(10, 1)}
    s = d.max_free_segment(pt(5, 1), direction(0, 1))
    assert {s.a, s.b} == {pt(5, 0), pt(5, 4)}


def test_roundtrip(square_with_hole, tmp_path):
    inst = DomainInstance(square_with_hole, pt(5, 1), pt(5, 9), AXES)
    p = tmp_path / "dom.json"
    save_instance(inst, str(p))
    back = load_instance(str(p))
    assert back.domain.outer == square_with_hole.outer
    assert back.domain.holes == square_with_hole.holes
    assert back.s == inst.s and back.t == inst.t
    assert back.orientations.dirs == AXES.dirs


def test_roundtrip_rationals(tmp_path):
    outer = [pt(0, 0), pt(Fraction(10, 3), 0), pt(Fraction(10, 3), Fraction(7, 2)), pt(0, Fraction(7, 2))]
    inst = DomainInstance(PolygonalDomain(outer), pt(Fraction(1, 7), Fraction(1, 9)))
    doc = instance_to_dict(inst)
    back = instance_from_dict(json.loads(json.dumps(doc)))
    assert back.domain.outer == tuple(outer)
    assert back.s == inst.s
