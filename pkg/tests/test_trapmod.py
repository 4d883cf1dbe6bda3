from fractions import Fraction

import pytest

from minlink.domain import OutsideFreeSpaceError, PolygonalDomain
from minlink.geom import direction, polygon_area2, pt
from minlink.trapmod import build_trapezoidation

from conftest import hole_square, square


def test_empty_square_one_cell(empty_square):
    t = build_trapezoidation(empty_square, direction(1, 0))
    assert len(t.cells) == 1
    c = t.cells[0]
    assert (c.t_lo, c.t_hi) == (0, 10)
    assert (c.u_ll, c.u_lr) == (0, 10)


def test_square_with_hole_four_cells(square_with_hole):
    th = build_trapezoidation(square_with_hole, direction(1, 0))
    assert len(th.cells) == 4
    tv = build_trapezoidation(square_with_hole, direction(0, 1))
    assert len(tv.cells) == 4


def test_rect_cells_are_rectangles(square_with_hole):
    for d in (direction(1, 0), direction(0, 1)):
        t = build_trapezoidation(square_with_hole, d)
        for cell in t.cells:
            assert cell.u_ll == cell.u_ul and cell.u_lr == cell.u_ur


def test_area_partition(square_with_hole):
    free = 100 - 4
    for d in (direction(1, 0), direction(0, 1), direction(1, 1), direction(1, 2)):
        t = build_trapezoidation(square_with_hole, d)
        assert t.free_area2() == 2 * free


def test_area_partition_triangle_hole():
    d = PolygonalDomain(square(20), [[pt(4, 4), pt(6, 10), pt(9, 4)]])
    free2 = 2 * 400 - abs(polygon_area2([pt(4, 4), pt(6, 10), pt(9, 4)]))
    for c in (direction(1, 0), direction(0, 1), direction(1, 1), direction(2, 3)):
        t = build_trapezoidation(d, c)
        assert t.free_area2() == free2


def test_locate(square_with_hole):
    th = build_trapezoidation(square_with_hole, direction(1, 0))
    bottom = th.locate(pt(5, 2))
    cell = th.cells[bottom]
    assert cell.t_lo == 0 and cell.t_hi == 4
    with pytest.raises(OutsideFreeSpaceError):
        th.locate(pt(5, 5))
    # boundary tie: smaller id wins
    a = th.locate(pt(5, 4))
    assert a == min(cid for cid in range(len(th.cells))
                    if th.cells[cid].contains_frame(Fraction(4), Fraction(5)))


def test_locate_single_cell(empty_square):
    t = build_trapezoidation(empty_square, direction(1, 0))
    assert t.locate(pt(5, 5)) == 0


def test_neighbors(square_with_hole):
    th = build_trapezoidation(square_with_hole, direction(1, 0))
    bottom = th.cells[th.locate(pt(5, 2))]
    left = th.cells[th.locate(pt(2, 5))]
    right = th.cells[th.locate(pt(8, 5))]
    top = th.cells[th.locate(pt(5, 8))]
    assert sorted(bottom.up) == sorted([left.id, right.id])
    assert sorted(top.dn) == sorted([left.id, right.id])


def test_support_lists_sorted(square_with_hole):
    th = build_trapezoidation(square_with_hole, direction(1, 0))
    for e, ids in th.support.items():
        ts = [th.cells[i].t_lo for i in ids]
        assert ts == sorted(ts)
        # disjoint side spans along the edge
        for a, b in zip(ids, ids[1:]):
            assert th.cells[a].t_hi <= th.cells[b].t_lo


def test_pot_of(square_with_hole):
    th = build_trapezoidation(square_with_hole, direction(1, 0))
    # standing on the bottom edge of the domain -> bottom slab
    bottom = th.locate(pt(5, 2))
    assert th.pot_of(Fraction(0), Fraction(3), Fraction(7)) == bottom
    # lower base on the hole's top edge -> the slab above the hole
    top = th.locate(pt(5, 8))
    assert th.pot_of(Fraction(6), Fraction(4), Fraction(6)) == top


def test_point_sampling_tiling(square_with_hole):
    # every strictly-interior sample lies in >= 1 cell; interior samples of
    # distinct cells never coincide (cells tile with disjoint interiors)
    import random
    rng = random.Random(5)
    t = build_trapezoidation(square_with_hole, direction(1, 1))
    for _ in range(100):
        q = pt(Fraction(rng.randrange(1, 1000), 100), Fraction(rng.randrange(1, 1000), 100))
        if not square_with_hole.point_in_free_space(q):
            continue
        hits = [c.id for c in t.cells
                if c.contains_frame(*t.frame(q))]
        assert len(hits) >= 1
        if square_with_hole.point_strictly_inside(q):
            strict = [cid for cid in hits
                      if _strict_inside(t, cid, q)]
            assert len(strict) <= 1


def _strict_inside(t, cid, q):
    cell = t.cells[cid]
    tt, uu = t.frame(q)
    if not (cell.t_lo < tt < cell.t_hi):
        return False
    return cell.u_left_at(tt) < uu < cell.u_right_at(tt)
