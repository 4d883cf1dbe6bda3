"""Polygonal-domain data model, validation, and file I/O.

A domain is an outer boundary (counterclockwise) plus disjoint holes
(clockwise), all with exact rational vertices.  The free space is the
closed region inside the outer ring and outside every hole interior;
paths are allowed to touch boundaries (closed free space) throughout the
package.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from .geom import (Coord, Direction, Point, Segment, coord, direction,
                   direction_of, direction_angle_key, on_segment, orient,
                   polygon_area2, pt, segments_intersect)


class DomainError(ValueError):
    pass


class OutsideFreeSpaceError(DomainError):
    """Raised when a query point is not in the closed free space."""


@dataclass(frozen=True)
class Edge:
    """One directed boundary edge; ring -1 is the outer boundary."""
    index: int
    ring: int
    a: Point
    b: Point

    @property
    def segment(self) -> Segment:
        return Segment(self.a, self.b)


class PolygonalDomain:
    """Outer ring + holes; immutable after construction."""

    def __init__(self, outer: Sequence[Point], holes: Sequence[Sequence[Point]] = ()):
        self.outer: Tuple[Point, ...] = tuple(outer)
        self.holes: Tuple[Tuple[Point, ...], ...] = tuple(tuple(h) for h in holes)
        self.h = len(self.holes)
        self.n = len(self.outer) + sum(len(h) for h in self.holes)
        edges: List[Edge] = []
        for ring_idx, ring in enumerate([self.outer, *self.holes]):
            ring_id = ring_idx - 1
            m = len(ring)
            for i in range(m):
                edges.append(Edge(len(edges), ring_id, ring[i], ring[(i + 1) % m]))
        self.edges: Tuple[Edge, ...] = tuple(edges)

    def rings(self) -> List[Tuple[Point, ...]]:
        return [self.outer, *self.holes]

    def vertices(self) -> List[Point]:
        out: List[Point] = list(self.outer)
        for h in self.holes:
            out.extend(h)
        return out

    def __repr__(self) -> str:
        return f"PolygonalDomain(n={self.n}, h={self.h})"

    # -- point/segment membership -----------------------------------------

    def point_on_boundary(self, p: Point) -> bool:
        return any(on_segment(p, e.segment) for e in self.edges)

    def point_in_free_space(self, p: Point) -> bool:
        """Closed free-space membership (boundary counts as inside)."""
        if self.point_on_boundary(p):
            return True
        if not _point_in_ring(self.outer, p):
            return False
        return not any(_point_in_ring(h, p) for h in self.holes)

    def point_strictly_inside(self, p: Point) -> bool:
        return self.point_in_free_space(p) and not self.point_on_boundary(p)

    def segment_in_free_space(self, a: Point, b: Point) -> bool:
        """True iff the closed segment ab avoids every obstacle interior."""
        if a == b:
            return self.point_in_free_space(a)
        params: List[Fraction] = [Fraction(0), Fraction(1)]
        ab = Segment(a, b)
        for e in self.edges:
            hit = segments_intersect(ab, e.segment)
            if hit is None:
                continue
            if isinstance(hit, Point):
                params.append(_param_on(a, b, hit))
            else:
                params.append(_param_on(a, b, hit.a))
                params.append(_param_on(a, b, hit.b))
        params = sorted(set(params))
        for t0, t1 in zip(params, params[1:]):
            tm = (t0 + t1) / 2
            mid = Point(a.x + (b.x - a.x) * tm, a.y + (b.y - a.y) * tm)
            if not self.point_in_free_space(mid):
                return False
        return True

    def max_free_segment(self, p: Point, d: Direction) -> Segment:
        """Maximal free segment of orientation d through p (p must be free)."""
        if not self.point_in_free_space(p):
            raise OutsideFreeSpaceError(f"{p} not in free space")
        fwd = self._free_reach(p, Fraction(d.dx), Fraction(d.dy))
        bwd = self._free_reach(p, Fraction(-d.dx), Fraction(-d.dy))
        return Segment(bwd, fwd)

    def _free_reach(self, p: Point, vx: Fraction, vy: Fraction) -> Point:
        """Farthest point reachable from p along (vx, vy) in free space."""
        params: List[Fraction] = [Fraction(0)]
        far = Fraction(0)
        # Collect every candidate stopping parameter along the ray.
        for e in self.edges:
            ts = _ray_edge_params(p, vx, vy, e)
            params.extend(ts)
            for t in ts:
                far = max(far, t)
        bound = far + 1
        params.append(bound)
        params = sorted(set(t for t in params if t >= 0))
        reach = Fraction(0)
        for t0, t1 in zip(params, params[1:]):
            tm = (t0 + t1) / 2
            mid = Point(p.x + vx * tm, p.y + vy * tm)
            if self.point_in_free_space(mid):
                reach = t1
            else:
                break
        if reach == bound:
            raise DomainError("unbounded ray; point outside outer ring?")
        return Point(p.x + vx * reach, p.y + vy * reach)


def _param_on(a: Point, b: Point, p: Point) -> Fraction:
    if b.x != a.x:
        return (p.x - a.x) / (b.x - a.x)
    return (p.y - a.y) / (b.y - a.y)


def _ray_edge_params(p: Point, vx: Fraction, vy: Fraction, e: Edge) -> List[Fraction]:
    """Parameters t >= 0 where p + t*v meets edge e (0, 1, or 2 values)."""
    ex, ey = e.b.x - e.a.x, e.b.y - e.a.y
    den = vx * ey - vy * ex
    wx, wy = e.a.x - p.x, e.a.y - p.y
    if den == 0:
        # Parallel: collinear overlap contributes both endpoint parameters.
        if wx * vy - wy * vx == 0:
            out = []
            for q in (e.a, e.b):
                if vx != 0:
                    t = (q.x - p.x) / vx
                else:
                    t = (q.y - p.y) / vy
                if t >= 0:
                    out.append(t)
            return out
        return []
    t = (wx * ey - wy * ex) / den
    s = (wx * vy - wy * vx) / den
    if t >= 0 and 0 <= s <= 1:
        return [t]
    return []


def _point_in_ring(ring: Sequence[Point], p: Point) -> bool:
    """Strict interior test by exact crossing parity (p not on boundary)."""
    inside = False
    n = len(ring)
    for i in range(n):
        a, b = ring[i], ring[(i + 1) % n]
        if (a.y > p.y) != (b.y > p.y):
            # x coordinate of the crossing of edge ab with the horizontal
            # line through p, compared exactly.
            xc = a.x + (b.x - a.x) * (p.y - a.y) / (b.y - a.y)
            if xc > p.x:
                inside = not inside
    return inside


@dataclass(frozen=True)
class OrientationSet:
    dirs: Tuple[Direction, ...]

    def __post_init__(self):
        if len(self.dirs) < 2:
            raise DomainError("orientation set needs at least 2 directions")
        if len(set(self.dirs)) != len(self.dirs):
            raise DomainError("duplicate orientations")
        ordered = sorted(self.dirs, key=direction_angle_key)
        if tuple(ordered) != self.dirs:
            raise DomainError("orientations must be sorted by angle")

    @property
    def C(self) -> int:
        return len(self.dirs)

    def __iter__(self):
        return iter(self.dirs)

    def __len__(self):
        return len(self.dirs)

    def __contains__(self, d: Direction) -> bool:
        return d in self.dirs


def orientation_set(vecs: Iterable[Tuple[int, int]]) -> OrientationSet:
    dirs = sorted({direction(dx, dy) for dx, dy in vecs}, key=direction_angle_key)
    return OrientationSet(tuple(dirs))


AXES = orientation_set([(1, 0), (0, 1)])


@dataclass
class DomainInstance:
    domain: PolygonalDomain
    s: Point
    t: Optional[Point] = None
    orientations: Optional[OrientationSet] = None


# ---------------------------------------------------------------------------
# Validation

@dataclass
class Violation:
    kind: str
    detail: str
    ring: Optional[int] = None
    vertex: Optional[int] = None

    def __str__(self) -> str:
        where = ""
        if self.ring is not None:
            where = f" [ring {self.ring}" + (
                f", vertex {self.vertex}]" if self.vertex is not None else "]")
        return f"{self.kind}: {self.detail}{where}"


def _ring_violations(ring: Sequence[Point], ring_id: int) -> List[Violation]:
    out: List[Violation] = []
    n = len(ring)
    if n < 3:
        out.append(Violation("ring too small", f"{n} vertices", ring_id))
        return out
    for i in range(n):
        a, b = ring[i], ring[(i + 1) % n]
        if a == b:
            out.append(Violation("zero-length edge", f"at {a}", ring_id, i))
    for i in range(n):
        a, b, c = ring[i - 1], ring[i], ring[(i + 1) % n]
        if a != b and b != c and orient(a, b, c) == 0:
            out.append(Violation("collinear adjacent edges", f"at {b}", ring_id, i))
    for i in range(n):
        s1 = Segment(ring[i], ring[(i + 1) % n])
        for j in range(i + 1, n):
            adjacent = j == i + 1 or (i == 0 and j == n - 1)
            s2 = Segment(ring[j], ring[(j + 1) % n])
            hit = segments_intersect(s1, s2)
            if hit is None:
                continue
            if adjacent:
                shared = s1.b if j == i + 1 else s1.a
                if isinstance(hit, Point) and hit == shared:
                    continue
                out.append(Violation("ring not simple",
                                     f"adjacent edges overlap near {shared}",
                                     ring_id, i))
            else:
                out.append(Violation("ring not simple",
                                     f"edges {i} and {j} intersect", ring_id, i))
    return out


def validate(d: PolygonalDomain) -> List[Violation]:
    """All invariant violations; an empty list means the domain is valid.

    Degeneracy 'two edges supported by the same line' is reported as a
    warning-kind violation ('degenerate-support') that generated instances
    may carry; only the rectilinear map builder rejects it.
    """
    out: List[Violation] = []
    rings = d.rings()
    for idx, ring in enumerate(rings):
        out.extend(_ring_violations(ring, idx - 1))
    if out:
        return out

    if polygon_area2(d.outer) <= 0:
        out.append(Violation("orientation", "outer ring must be counterclockwise", -1))
    for hi, hole in enumerate(d.holes):
        if polygon_area2(hole) >= 0:
            out.append(Violation("orientation", "hole ring must be clockwise", hi))

    # Holes strictly inside the outer ring, pairwise disjoint, not touching.
    for hi, hole in enumerate(d.holes):
        for vi, v in enumerate(hole):
            if not _point_in_ring(d.outer, v):
                out.append(Violation("hole not inside outer", f"vertex {v}", hi, vi))
                break
    ring_edges: List[List[Segment]] = []
    for ring in rings:
        n = len(ring)
        ring_edges.append([Segment(ring[i], ring[(i + 1) % n]) for i in range(n)])
    for i in range(len(rings)):
        for j in range(i + 1, len(rings)):
            touched = False
            for si in ring_edges[i]:
                if touched:
                    break
                for sj in ring_edges[j]:
                    if segments_intersect(si, sj) is not None:
                        out.append(Violation(
                            "rings touch",
                            f"ring {i - 1} and ring {j - 1} intersect"))
                        touched = True
                        break
    if out:
        return out
    # Hole-in-hole nesting (no edge contact, so one vertex test suffices).
    for i, hole_a in enumerate(d.holes):
        for j, hole_b in enumerate(d.holes):
            if i != j and _point_in_ring(hole_a, hole_b[0]):
                out.append(Violation("nested holes", f"hole {j} inside hole {i}", j))

    # Free space connectivity follows from the invariants above (disjoint
    # holes strictly inside a simple outer ring cannot disconnect it).

    # Non-degeneracy warning: two edges supported by the same line.
    seen = {}
    for e in d.edges:
        key = _line_key(e.a, e.b)
        if key in seen:
            out.append(Violation("degenerate-support",
                                 f"edges {seen[key]} and {e.index} share a line"))
        else:
            seen[key] = e.index
    return out


def has_blocking_violations(violations: Sequence[Violation]) -> bool:
    return any(v.kind != "degenerate-support" for v in violations)


def _line_key(a: Point, b: Point):
    # Canonical (A, B, C) for the line Ax + By = C with integer-reduced
    # rational coefficients.
    A = b.y - a.y
    B = a.x - b.x
    C = A * a.x + B * a.y
    from math import gcd
    den = A.denominator * B.denominator * C.denominator
    ai, bi, ci = int(A * den), int(B * den), int(C * den)
    g = gcd(gcd(abs(ai), abs(bi)), abs(ci))
    if g:
        ai, bi, ci = ai // g, bi // g, ci // g
    if ai < 0 or (ai == 0 and bi < 0):
        ai, bi, ci = -ai, -bi, -ci
    return (ai, bi, ci)


def is_c_oriented(d: PolygonalDomain, orientations: OrientationSet) -> bool:
    """True iff every edge direction (undirected) belongs to the set."""
    allowed = set(orientations.dirs)
    return all(direction_of(e.a, e.b) in allowed for e in d.edges)


# ---------------------------------------------------------------------------
# File I/O.  A single JSON document: points are [x, y] (integers) or
# [x_num, x_den, y_num, y_den]; rationals round-trip bit-exactly.

def _encode_point(p: Point) -> List[int]:
    if p.x.denominator == 1 and p.y.denominator == 1:
        return [int(p.x), int(p.y)]
    return [p.x.numerator, p.x.denominator, p.y.numerator, p.y.denominator]


def _decode_point(v: Sequence[int]) -> Point:
    if len(v) == 2:
        return pt(v[0], v[1])
    if len(v) == 4:
        return Point(Fraction(v[0], v[1]), Fraction(v[2], v[3]))
    raise DomainError(f"bad point encoding: {v!r}")


def instance_to_dict(inst: DomainInstance) -> dict:
    doc = {
        "outer": [_encode_point(p) for p in inst.domain.outer],
        "holes": [[_encode_point(p) for p in h] for h in inst.domain.holes],
        "s": _encode_point(inst.s),
    }
    if inst.t is not None:
        doc["t"] = _encode_point(inst.t)
    if inst.orientations is not None:
        doc["orientations"] = [[d.dx, d.dy] for d in inst.orientations.dirs]
    return doc


def instance_from_dict(doc: dict) -> DomainInstance:
    domain = PolygonalDomain(
        [_decode_point(p) for p in doc["outer"]],
        [[_decode_point(p) for p in h] for h in doc.get("holes", [])],
    )
    s = _decode_point(doc["s"]) if "s" in doc else None
    t = _decode_point(doc["t"]) if "t" in doc else None
    orient_set = None
    if "orientations" in doc:
        orient_set = orientation_set([(v[0], v[1]) for v in doc["orientations"]])
    if s is None:
        raise DomainError("instance document lacks 's'")
    return DomainInstance(domain, s, t, orient_set)


def save_instance(inst: DomainInstance, path: str) -> None:
    with open(path, "w") as f:
        json.dump(instance_to_dict(inst), f)
        f.write("\n")


def load_instance(path: str) -> DomainInstance:
    with open(path) as f:
        return instance_from_dict(json.load(f))


def save_path(points: Sequence[Point], path: str) -> None:
    with open(path, "w") as f:
        json.dump({"path": [_encode_point(p) for p in points]}, f)
        f.write("\n")


def load_path(path: str) -> List[Point]:
    with open(path) as f:
        doc = json.load(f)
    return [_decode_point(p) for p in doc["path"]]


def load_orientations(path: str) -> OrientationSet:
    with open(path) as f:
        doc = json.load(f)
    vecs = doc["orientations"] if isinstance(doc, dict) else doc
    return orientation_set([(v[0], v[1]) for v in vecs])
