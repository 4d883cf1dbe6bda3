"""Exact rational planar primitives.

Every predicate in this package is computed over arbitrary-precision
rationals (`fractions.Fraction`); floating point is confined to SVG output
and to the documented angular-gap check in `robust`.  Coordinates are
immutable, so all values here can be shared freely between threads.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import List, Optional, Sequence, Tuple, Union

Coord = Fraction
CoordLike = Union[int, str, float, Fraction]


def coord(value: CoordLike) -> Fraction:
    """Coerce a number to an exact rational coordinate."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        # Floats are accepted for convenience in tests/CLI; they convert
        # exactly (every float is a dyadic rational).
        return Fraction(value)
    return Fraction(value)


@dataclass(frozen=True, slots=True)
class Point:
    x: Fraction
    y: Fraction

    def __sub__(self, other: "Point") -> "Point":
        return Point(self.x - other.x, self.y - other.y)

    def __add__(self, other: "Point") -> "Point":
        return Point(self.x + other.x, self.y + other.y)

    def scaled(self, k: Fraction) -> "Point":
        return Point(self.x * k, self.y * k)

    def __repr__(self) -> str:  # compact, exact
        return f"({self.x}, {self.y})"


def pt(x: CoordLike, y: CoordLike) -> Point:
    return Point(coord(x), coord(y))


@dataclass(frozen=True, slots=True)
class Direction:
    """An undirected orientation, canonicalized to one representative.

    Invariants: (dx, dy) != (0, 0); gcd(|dx|, |dy|) == 1; dy > 0, or
    dy == 0 and dx > 0 (upper half-plane convention).
    """

    dx: int
    dy: int

    def __post_init__(self) -> None:
        if self.dx == 0 and self.dy == 0:
            raise ValueError("zero direction")
        if gcd(abs(self.dx), abs(self.dy)) != 1:
            raise ValueError(f"direction ({self.dx},{self.dy}) not reduced")
        if not (self.dy > 0 or (self.dy == 0 and self.dx > 0)):
            raise ValueError(f"direction ({self.dx},{self.dy}) not canonical")

    def __repr__(self) -> str:
        return f"dir({self.dx},{self.dy})"


def direction(dx: int, dy: int) -> Direction:
    """Canonicalize an integer vector to its undirected orientation."""
    if dx == 0 and dy == 0:
        raise ValueError("zero direction")
    g = gcd(abs(dx), abs(dy))
    dx, dy = dx // g, dy // g
    if dy < 0 or (dy == 0 and dx < 0):
        dx, dy = -dx, -dy
    return Direction(dx, dy)


def direction_of(a: Point, b: Point) -> Direction:
    """Orientation of the segment ab (requires a != b).

    Works for rational endpoints: the delta is scaled to an integer vector.
    """
    dx, dy = b.x - a.x, b.y - a.y
    if dx == 0 and dy == 0:
        raise ValueError("degenerate segment has no direction")
    den = dx.denominator * dy.denominator
    return direction(int(dx * den), int(dy * den))


@dataclass(frozen=True, slots=True)
class Segment:
    a: Point
    b: Point

    def reversed(self) -> "Segment":
        return Segment(self.b, self.a)

    def is_degenerate(self) -> bool:
        return self.a == self.b

    def __repr__(self) -> str:
        return f"[{self.a}-{self.b}]"


def seg(ax: CoordLike, ay: CoordLike, bx: CoordLike, by: CoordLike) -> Segment:
    return Segment(pt(ax, ay), pt(bx, by))


def _sign(v: Fraction) -> int:
    if v > 0:
        return 1
    if v < 0:
        return -1
    return 0


def cross_value(p: Point, q: Point, r: Point) -> Fraction:
    """Raw cross product (q - p) x (r - p)."""
    return (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)


def orient(p: Point, q: Point, r: Point) -> int:
    """Sign of the cross product (q - p) x (r - p): +1 left turn, -1 right."""
    return _sign(cross_value(p, q, r))


def along(d: Direction, p: Point, q: Point) -> int:
    """Compare p, q along the axis perpendicular to d.

    Returns the sign of cross(d, q - p): +1 when q is on d's left
    ("higher" when d plays the role of horizontal), 0 at equal heights.
    """
    return _sign(d.dx * (q.y - p.y) - d.dy * (q.x - p.x))


def height_along(d: Direction, p: Point) -> Fraction:
    """Sweep height of p when segments of orientation d are the level sets."""
    return d.dx * p.y - d.dy * p.x


def pos_along(d: Direction, p: Point) -> Fraction:
    """Position of p along d (the coordinate that varies on a d-segment)."""
    return d.dx * p.x + d.dy * p.y


def point_from_frame(d: Direction, t: Fraction, u: Fraction) -> Point:
    """Inverse of (height_along, pos_along) for direction d."""
    n = Fraction(d.dx * d.dx + d.dy * d.dy)
    x = (d.dx * u - d.dy * t) / n
    y = (d.dy * u + d.dx * t) / n
    return Point(x, y)


def on_segment(p: Point, s: Segment) -> bool:
    """Closed membership test: p lies on segment s."""
    if orient(s.a, s.b, p) != 0:
        return False
    return (min(s.a.x, s.b.x) <= p.x <= max(s.a.x, s.b.x)
            and min(s.a.y, s.b.y) <= p.y <= max(s.a.y, s.b.y))


def segments_intersect(s1: Segment, s2: Segment) -> Union[None, Point, Segment]:
    """Exact intersection of two closed segments.

    Returns None (disjoint), a Point (unique intersection), or a Segment
    (collinear overlap of positive length).
    """
    p, q = s1.a, s1.b
    r, s = s2.a, s2.b
    d1 = cross_value(p, q, r)
    d2 = cross_value(p, q, s)
    d3 = cross_value(r, s, p)
    d4 = cross_value(r, s, q)

    if d1 == 0 and d2 == 0:
        # Collinear configuration (covers degenerate segments too).
        if orient(p, q, r) == 0 and orient(p, q, s) == 0 and p != q:
            lo1, hi1 = sorted([p, q], key=lambda z: (z.x, z.y))
            lo2, hi2 = sorted([r, s], key=lambda z: (z.x, z.y))
            lo = max(lo1, lo2, key=lambda z: (z.x, z.y))
            hi = min(hi1, hi2, key=lambda z: (z.x, z.y))
            if (lo.x, lo.y) > (hi.x, hi.y):
                return None
            if lo == hi:
                return lo
            return Segment(lo, hi)
        # s2 degenerate or not on the line
        if r == s:
            return r if on_segment(r, s1) else None
        if p == q:
            return p if on_segment(p, s2) else None
        return None

    if d1 * d2 < 0 and d3 * d4 < 0:
        # Proper crossing at a unique interior point.
        den = d1 - d2  # nonzero: equals cross of the two direction vectors
        t = d1 / den
        return Point(r.x + (s.x - r.x) * t, r.y + (s.y - r.y) * t)

    # Touching cases: an endpoint of one segment lies on the other.
    if d1 == 0 and on_segment(r, s1):
        return r
    if d2 == 0 and on_segment(s, s1):
        return s
    if d3 == 0 and on_segment(p, s2):
        return p
    if d4 == 0 and on_segment(q, s2):
        return q
    return None


def line_intersection(a1: Point, a2: Point, b1: Point, b2: Point) -> Optional[Point]:
    """Intersection point of lines a1a2 and b1b2; None when parallel."""
    d1x, d1y = a2.x - a1.x, a2.y - a1.y
    d2x, d2y = b2.x - b1.x, b2.y - b1.y
    den = d1x * d2y - d1y * d2x
    if den == 0:
        return None
    t = ((b1.x - a1.x) * d2y - (b1.y - a1.y) * d2x) / den
    return Point(a1.x + d1x * t, a1.y + d1y * t)


# ---------------------------------------------------------------------------
# Convex polygon helpers (cells of the trapezoidations are convex).

def polygon_area2(pts: Sequence[Point]) -> Fraction:
    """Twice the signed area; positive for counterclockwise rings."""
    total = Fraction(0)
    n = len(pts)
    for i in range(n):
        a, b = pts[i], pts[(i + 1) % n]
        total += a.x * b.y - b.x * a.y
    return total


def clip_halfplane(pts: Sequence[Point], a: Point, b: Point) -> List[Point]:
    """Clip a convex polygon to the closed left side of the line a->b."""
    out: List[Point] = []
    n = len(pts)
    if n == 0:
        return out
    for i in range(n):
        cur, nxt = pts[i], pts[(i + 1) % n]
        c_in = orient(a, b, cur) >= 0
        n_in = orient(a, b, nxt) >= 0
        if c_in:
            out.append(cur)
        if c_in != n_in:
            ip = line_intersection(a, b, cur, nxt)
            assert ip is not None
            out.append(ip)
    # drop exact duplicates introduced by grazing clips
    dedup: List[Point] = []
    for p in out:
        if not dedup or dedup[-1] != p:
            dedup.append(p)
    if len(dedup) > 1 and dedup[0] == dedup[-1]:
        dedup.pop()
    return dedup


def convex_intersection(a: Sequence[Point], b: Sequence[Point]) -> List[Point]:
    """Intersection of two convex CCW polygons (possibly degenerate)."""
    out = list(a)
    n = len(b)
    for i in range(n):
        if not out:
            break
        out = clip_halfplane(out, b[i], b[(i + 1) % n])
    return out


def point_in_convex(pts: Sequence[Point], p: Point) -> bool:
    """Closed containment in a convex CCW polygon."""
    n = len(pts)
    if n == 0:
        return False
    if n == 1:
        return pts[0] == p
    if n == 2:
        return on_segment(p, Segment(pts[0], pts[1]))
    for i in range(n):
        if orient(pts[i], pts[(i + 1) % n], p) < 0:
            return False
    return True


def angle_key(dx: Fraction, dy: Fraction):
    """Sort key for full [0, 360) angular order without trigonometry.

    Returns a tuple usable with functools.cmp_to_key-free sorting: vectors
    are bucketed by half-plane and compared by cross product within it.
    """
    if dy > 0 or (dy == 0 and dx > 0):
        half = 0
    else:
        half = 1

    class _K:
        __slots__ = ("h", "x", "y")

        def __init__(self, h, x, y):
            self.h, self.x, self.y = h, x, y

        def __lt__(self, other):
            if self.h != other.h:
                return self.h < other.h
            return self.x * other.y - self.y * other.x > 0

        def __eq__(self, other):
            return (self.h == other.h
                    and self.x * other.y - self.y * other.x == 0)

    return _K(half, dx, dy)


def direction_angle_key(d: Direction):
    """Sort key for undirected orientations over [0, 180)."""
    return angle_key(Fraction(d.dx), Fraction(d.dy))
