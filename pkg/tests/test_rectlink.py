from fractions import Fraction

import pytest

from minlink.domain import DomainError, PolygonalDomain
from minlink.geom import direction_of, pt
from minlink.oracle import brute_graph_labels
from minlink.rectlink import build_rect_linkmap, extract_rect_path, query_rect
from minlink.domain import AXES

from conftest import hole_square, square


def test_empty_square_labels(empty_square):
    m = build_rect_linkmap(empty_square, pt(1, 1))
    for cm in m.maps:
        labels = [c.label for c in cm.cells.values()]
        assert labels == [1]
    assert query_rect(m, pt(1, 5)) == 1
    assert m.violations == []


def test_hole_blocked_three_links(square_with_hole):
    m = build_rect_linkmap(square_with_hole, pt(5, 1))
    assert query_rect(m, pt(5, 9)) == 3
    assert query_rect(m, pt(5, 1)) == 1
    assert query_rect(m, pt(9, 1)) == 1   # on the horizontal seed
    assert m.violations == []


def test_corner_two_links(square_with_hole):
    m = build_rect_linkmap(square_with_hole, pt(1, 1))
    assert query_rect(m, pt(9, 9)) == 2


def test_oracle_equality_examples(square_with_hole):
    for s in (pt(5, 1), pt(1, 1), pt(7, 3)):
        m = build_rect_linkmap(square_with_hole, s)
        assert m.label_pieces() == brute_graph_labels(square_with_hole, AXES, s)


def test_degenerate_rejected():
    d = PolygonalDomain(square(20),
                        [hole_square(2, 4, 4, 6), hole_square(8, 4, 10, 7)])
    with pytest.raises(DomainError):
        build_rect_linkmap(d, pt(1, 1))


def test_extract_aligned(square_with_hole):
    m = build_rect_linkmap(square_with_hole, pt(5, 1))
    path = extract_rect_path(m, pt(9, 1))
    assert path == [pt(5, 1), pt(9, 1)]


def test_extract_three_link_staircase(square_with_hole):
    m = build_rect_linkmap(square_with_hole, pt(5, 1))
    path = extract_rect_path(m, pt(5, 9))
    assert len(path) - 1 == 3
    assert path[0] == pt(5, 1) and path[-1] == pt(5, 9)
    for a, b in zip(path, path[1:]):
        assert square_with_hole.segment_in_free_space(a, b)
        assert a.x == b.x or a.y == b.y
    for (a, b, c) in zip(path, path[1:], path[2:]):
        d1 = direction_of(a, b)
        d2 = direction_of(b, c)
        assert d1 != d2  # consecutive links perpendicular


def test_extract_source_degenerate(square_with_hole):
    m = build_rect_linkmap(square_with_hole, pt(5, 1))
    path = extract_rect_path(m, pt(5, 1))
    assert len(path) == 2 and path[0] == path[1] == pt(5, 1)


def test_host_cell_off_seed_two_links(square_with_hole):
    # label-1 cells answer 1, but an off-seed point needs two links
    m = build_rect_linkmap(square_with_hole, pt(5, 1))
    q = pt(8, 3)
    assert query_rect(m, q) == 1
    path = extract_rect_path(m, q)
    assert len(path) - 1 == 2
    for a, b in zip(path, path[1:]):
        assert square_with_hole.segment_in_free_space(a, b)


def test_queue_window_instrumentation(square_with_hole):
    m = build_rect_linkmap(square_with_hole, pt(5, 1))
    for (ori, key), steps in m.queued_steps.items():
        finals = [l for l in m.maps[ori].final_labels_of(key) if l is not None]
        for k in steps:
            for lab in finals:
                assert k - 4 <= lab <= k + 2
        assert len(steps) <= 7
