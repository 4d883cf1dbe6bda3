"""Rectilinear link-distance maps in rectilinear domains.

The rectilinear case is the two-orientation instantiation of the general
builder: both decompositions are rectangles, no flush lighting can occur,
and every BFS step reduces to one planted upward sweep per orientation
pair.  This module adds the rectilinear preconditions (axis-parallel
edges, no two edges on a common supporting line) and the rectilinear
instrumentation assertions.
"""
from __future__ import annotations

from typing import List, Optional

from .corilink import CoriLinkMap, LinkMapBuilder
from .domain import (AXES, DomainError, PolygonalDomain, is_c_oriented,
                     validate)
from .geom import Point

RectLinkMap = CoriLinkMap


def build_rect_linkmap(d: PolygonalDomain, s: Point) -> RectLinkMap:
    vs = validate(d)
    degenerate = [v for v in vs if v.kind == "degenerate-support"]
    blocking = [v for v in vs if v.kind != "degenerate-support"]
    if blocking:
        raise DomainError("invalid domain: " + "; ".join(map(str, blocking)))
    if degenerate:
        raise DomainError(
            "degenerate domain (two edges on one line): "
            + "; ".join(map(str, degenerate)))
    if not is_c_oriented(d, AXES):
        raise DomainError("domain is not rectilinear")
    m = LinkMapBuilder(d, AXES, s, rect_mode=True).build()
    return m


def query_rect(m: RectLinkMap, q: Point) -> Optional[int]:
    return m.query(q)


def extract_rect_path(m: RectLinkMap, q: Point) -> List[Point]:
    return m.extract_path(q)
