"""Brute-force references.

Everything here is written for auditability, not speed: the map labels are
recomputed by testing every pair of opposite-orientation cells each step,
small link distances are decided straight from their definitions, and the
unrestricted minimum-link distance comes from a breadth-first search over
an explicit line arrangement.  These are the ground truth the fast
builders are tested against.
"""
from __future__ import annotations

import itertools
from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .domain import DomainError, OrientationSet, PolygonalDomain
from .geom import (Direction, Point, Segment, angle_key, convex_intersection,
                   height_along, on_segment, point_from_frame, polygon_area2,
                   pos_along, orient, segments_intersect)
from .trapmod import Trapezoid, build_trapezoidation


# ---------------------------------------------------------------------------
# Cell-graph BFS reference

@dataclass
class _Piece:
    parent: int
    el: int
    er: int
    t0: Fraction
    t1: Fraction
    base: Trapezoid
    rank: Optional[int] = None
    label: Optional[int] = None
    _poly: Optional[List[Point]] = None
    _bbox: Optional[Tuple[Fraction, Fraction, Fraction, Fraction]] = None


def _piece_poly(trap, piece: _Piece) -> List[Point]:
    if piece._poly is None:
        b = piece.base
        pts = [trap.unframe(piece.t0, b.u_left_at(piece.t0)),
               trap.unframe(piece.t0, b.u_right_at(piece.t0)),
               trap.unframe(piece.t1, b.u_right_at(piece.t1)),
               trap.unframe(piece.t1, b.u_left_at(piece.t1))]
        out: List[Point] = []
        for p in pts:
            if not out or out[-1] != p:
                out.append(p)
        if len(out) > 1 and out[0] == out[-1]:
            out.pop()
        piece._poly = out
    return piece._poly


def _piece_bbox(trap, piece: _Piece):
    if piece._bbox is None:
        poly = _piece_poly(trap, piece)
        xs = [p.x for p in poly]
        ys = [p.y for p in poly]
        piece._bbox = (min(xs), min(ys), max(xs), max(ys))
    return piece._bbox


def _merge_intervals(ivs: List[Tuple[Fraction, Fraction]],
                     lo: Fraction, hi: Fraction) -> List[Tuple[Fraction, Fraction]]:
    clipped = []
    for a, b in sorted(ivs):
        a, b = max(a, lo), min(b, hi)
        if a > b:
            continue
        if clipped and a <= clipped[-1][1]:
            clipped[-1] = (clipped[-1][0], max(clipped[-1][1], b))
        else:
            clipped.append((a, b))
    return clipped


def brute_graph_labels(d: PolygonalDomain, orientations: OrientationSet,
                       s: Point, guard_n: int = 120,
                       max_steps: Optional[int] = None):
    """Reference labels: all-pairs lighting, step by step.

    Returns per-orientation sorted lists of (parent cell id, t_lo, t_hi,
    label) matching CoriLinkMap.label_pieces().
    """
    if d.n > guard_n:
        raise DomainError(f"instance too large for the brute reference ({d.n})")
    traps = [build_trapezoidation(d, c) for c in orientations]
    pieces: List[List[_Piece]] = []
    for trap in traps:
        pieces.append([_Piece(t.id, t.el, t.er, t.t_lo, t.t_hi, t)
                       for t in trap.cells])

    seeds = [d.max_free_segment(s, c) for c in orientations]

    def seed_heights(trap, piece: _Piece, seed: Segment):
        poly = _piece_poly(trap, piece)
        if len(poly) < 3:
            return None
        lo, hi = Fraction(0), Fraction(1)
        a, b = seed.a, seed.b
        n = len(poly)
        for i in range(n):
            p1, p2 = poly[i], poly[(i + 1) % n]
            fa = (p2.x - p1.x) * (a.y - p1.y) - (p2.y - p1.y) * (a.x - p1.x)
            fb = (p2.x - p1.x) * (b.y - p1.y) - (p2.y - p1.y) * (b.x - p1.x)
            dv = fb - fa
            if dv == 0:
                if fa < 0:
                    return None
                continue
            tc = -fa / dv
            if dv > 0:
                lo = max(lo, tc)
            else:
                hi = min(hi, tc)
            if lo >= hi:
                return None
        pa = Point(a.x + (b.x - a.x) * lo, a.y + (b.y - a.y) * lo)
        pb = Point(a.x + (b.x - a.x) * hi, a.y + (b.y - a.y) * hi)
        h1 = height_along(trap.c, pa)
        h2 = height_along(trap.c, pb)
        if h1 > h2:
            h1, h2 = h2, h1
        return (h1, h2) if h1 < h2 else None

    def split_and_mark(i: int, marks: Dict[int, List[Tuple[Fraction, Fraction]]],
                       rank: int):
        new_list: List[_Piece] = []
        for idx, piece in enumerate(pieces[i]):
            ivs = marks.get(idx)
            if not ivs or piece.rank is not None:
                new_list.append(piece)
                continue
            merged = _merge_intervals(ivs, piece.t0, piece.t1)
            if not merged:
                new_list.append(piece)
                continue
            bounds = sorted({piece.t0, piece.t1}
                            | {a for a, b in merged} | {b for a, b in merged})
            for t0, t1 in zip(bounds, bounds[1:]):
                sub = _Piece(piece.parent, piece.el, piece.er, t0, t1, piece.base)
                if any(a <= t0 and t1 <= b for a, b in merged):
                    sub.rank = rank
                    sub.label = rank
                new_list.append(sub)
        pieces[i] = new_list

    # ranks 2 from the seed segments
    for i, trap in enumerate(traps):
        marks: Dict[int, List[Tuple[Fraction, Fraction]]] = {}
        for j in range(len(traps)):
            if i == j:
                continue
            for idx, piece in enumerate(pieces[i]):
                got = seed_heights(trap, piece, seeds[j])
                if got:
                    marks.setdefault(idx, []).append(got)
        split_and_mark(i, marks, 2)

    # hosts get display label 1
    for i, trap in enumerate(traps):
        t_s, u_s = trap.frame(s)
        best = None
        for piece in pieces[i]:
            if piece.t0 <= t_s <= piece.t1 and piece.base.contains_frame(t_s, u_s):
                key = (piece.parent, piece.t0)
                if best is None or key < (best.parent, best.t0):
                    best = piece
        if best is None:
            raise DomainError("source not inside any cell")
        best.label = 1
        if best.rank is None:
            best.rank = 2

    limit = max_steps or (4 * d.n + 16)
    k = 2
    while True:
        k += 1
        if k > limit:
            break
        lit_any = False
        all_marks: List[Dict[int, List[Tuple[Fraction, Fraction]]]] = []
        for i, trap in enumerate(traps):
            marks: Dict[int, List[Tuple[Fraction, Fraction]]] = {}
            for j, src_trap in enumerate(traps):
                if i == j:
                    continue
                srcs = [p for p in pieces[j] if p.rank == k - 1]
                for idx, piece in enumerate(pieces[i]):
                    if piece.rank is not None:
                        continue
                    bb1 = _piece_bbox(trap, piece)
                    for sp in srcs:
                        bb2 = _piece_bbox(src_trap, sp)
                        if bb1[2] < bb2[0] or bb2[2] < bb1[0] \
                           or bb1[3] < bb2[1] or bb2[3] < bb1[1]:
                            continue
                        inter = convex_intersection(_piece_poly(trap, piece),
                                                    _piece_poly(src_trap, sp))
                        if len(inter) < 3 or polygon_area2(inter) == 0:
                            continue
                        hs = [height_along(trap.c, p) for p in inter]
                        marks.setdefault(idx, []).append((min(hs), max(hs)))
            all_marks.append(marks)
        for i in range(len(traps)):
            if all_marks[i]:
                lit_any = True
                split_and_mark(i, all_marks[i], k)
        if not lit_any:
            break

    out = []
    for plist in pieces:
        out.append(sorted((p.parent, p.t0, p.t1, p.label) for p in plist))
    return out


# ---------------------------------------------------------------------------
# Small link-distance deciders

def linkdist_le1(d: PolygonalDomain, s: Point, t: Point) -> bool:
    """One link: the segment st stays in the closed free space."""
    return d.segment_in_free_space(s, t)


def visibility_polygon(d: PolygonalDomain, o: Point) -> List[Point]:
    """The region visible from o (closed free space; grazing allowed)."""
    if not d.point_in_free_space(o):
        raise DomainError(f"{o} outside free space")
    visible = [v for v in d.vertices()
               if v != o and d.segment_in_free_space(o, v)]
    dirs: List[Tuple[Fraction, Fraction]] = []
    seen_keys: List = []
    for v in visible:
        dx, dy = v.x - o.x, v.y - o.y
        k = angle_key(dx, dy)
        if not any(k == e for e in seen_keys):
            seen_keys.append(k)
            dirs.append((dx, dy))
    # synthetic axis directions keep every angular gap below 90 degrees
    for dx, dy in ((1, 0), (0, 1), (-1, 0), (0, -1)):
        k = angle_key(Fraction(dx), Fraction(dy))
        if not any(k == e for e in seen_keys):
            seen_keys.append(k)
            dirs.append((Fraction(dx), Fraction(dy)))
    order = sorted(range(len(dirs)), key=lambda i: seen_keys[i])
    dirs = [dirs[i] for i in order]

    poly: List[Point] = []
    n = len(dirs)
    for i in range(n):
        d1 = dirs[i]
        d2 = dirs[(i + 1) % n]
        mid = (d1[0] + d2[0], d1[1] + d2[1])
        if mid == (0, 0):
            continue
        reach = d._free_reach(o, Fraction(mid[0]), Fraction(mid[1]))
        if reach == o:
            _append_pt(poly, o)
            continue
        edge = _blocking_edge(d, o, reach)
        if edge is None:
            _append_pt(poly, reach)
            continue
        a1 = _ray_line_hit(o, d1, edge)
        a2 = _ray_line_hit(o, d2, edge)
        if a1 is not None:
            _append_pt(poly, a1)
        if a2 is not None:
            _append_pt(poly, a2)
    if len(poly) > 1 and poly[0] == poly[-1]:
        poly.pop()
    return poly


def _append_pt(poly: List[Point], p: Point) -> None:
    if not poly or poly[-1] != p:
        poly.append(p)


def _blocking_edge(d: PolygonalDomain, o: Point, reach: Point):
    best = None
    for e in d.edges:
        if on_segment(reach, e.segment):
            # prefer an edge transversal to the sight ray
            if orient(o, reach, e.a) != 0 or orient(o, reach, e.b) != 0:
                return e
            best = e
    return best


def _ray_line_hit(o: Point, dvec, e) -> Optional[Point]:
    ex, ey = e.b.x - e.a.x, e.b.y - e.a.y
    den = dvec[0] * ey - dvec[1] * ex
    if den == 0:
        return None
    wx, wy = e.a.x - o.x, e.a.y - o.y
    t = (wx * ey - wy * ex) / den
    if t < 0:
        return None
    return Point(o.x + dvec[0] * t, o.y + dvec[1] * t)


def _point_in_poly_closed(poly: Sequence[Point], p: Point) -> bool:
    n = len(poly)
    for i in range(n):
        if on_segment(p, Segment(poly[i], poly[(i + 1) % n])):
            return True
    inside = False
    for i in range(n):
        a, b = poly[i], poly[(i + 1) % n]
        if (a.y > p.y) != (b.y > p.y):
            xc = a.x + (b.x - a.x) * (p.y - a.y) / (b.y - a.y)
            if xc > p.x:
                inside = not inside
    return inside


def polygons_intersect(pa: Sequence[Point], pb: Sequence[Point]) -> bool:
    na, nb = len(pa), len(pb)
    for i in range(na):
        sa = Segment(pa[i], pa[(i + 1) % na])
        if sa.a == sa.b:
            continue
        for j in range(nb):
            sb = Segment(pb[j], pb[(j + 1) % nb])
            if sb.a == sb.b:
                continue
            if segments_intersect(sa, sb) is not None:
                return True
    return _point_in_poly_closed(pb, pa[0]) or _point_in_poly_closed(pa, pb[0])


def linkdist_le2(d: PolygonalDomain, s: Point, t: Point) -> bool:
    """Two links: the visibility polygons of s and t intersect."""
    if linkdist_le1(d, s, t):
        return True
    vs = visibility_polygon(d, s)
    vt = visibility_polygon(d, t)
    return polygons_intersect(vs, vt)


def _extended_segment(d: PolygonalDomain, u: Point, v: Point) -> Segment:
    a = d._free_reach(u, v.x - u.x, v.y - u.y)
    b = d._free_reach(u, u.x - v.x, u.y - v.y)
    return Segment(b, a)


def _segment_meets_polygon(seg: Segment, poly: Sequence[Point]) -> bool:
    n = len(poly)
    for i in range(n):
        e = Segment(poly[i], poly[(i + 1) % n])
        if e.a == e.b:
            continue
        if segments_intersect(seg, e) is not None:
            return True
    return _point_in_poly_closed(poly, seg.a)


def linkdist_le3(d: PolygonalDomain, s: Point, t: Point) -> bool:
    """Three links: some extended mutual-visibility segment touches both
    visibility polygons (or the distance is already <= 2)."""
    if linkdist_le2(d, s, t):
        return True
    vs = visibility_polygon(d, s)
    vt = visibility_polygon(d, t)
    verts = d.vertices()
    for u, v in itertools.combinations(verts, 2):
        if u == v or not d.segment_in_free_space(u, v):
            continue
        ext = _extended_segment(d, u, v)
        if _segment_meets_polygon(ext, vs) and _segment_meets_polygon(ext, vt):
            return True
    return False


# ---------------------------------------------------------------------------
# Unrestricted minimum link distance on tiny instances

def brute_minlink(d: PolygonalDomain, s: Point, t: Point, cap: int = 8,
                  guard_n: int = 110) -> Optional[int]:
    """Exact unrestricted link distance, or None when it exceeds cap.

    Search space: turning points restricted to the arrangement of
    supporting lines of extended mutual-visibility segments (every optimal
    path can be deformed so each link rests on two boundary vertices).
    """
    if d.n > guard_n:
        raise DomainError(f"instance too large for brute_minlink ({d.n})")
    if linkdist_le1(d, s, t):
        return 1

    nodes_of_line: Dict[int, List[Tuple[Fraction, int]]] = {}
    node_ids: Dict[Point, int] = {}
    lines: List[Tuple[Point, Point]] = []
    line_keys: Set = set()

    pts = list(d.vertices()) + [s, t]
    for a, b in itertools.combinations(pts, 2):
        if a == b or not d.segment_in_free_space(a, b):
            continue
        key = _line_key_points(a, b)
        if key in line_keys:
            continue
        line_keys.add(key)
        lines.append((a, b))

    # free intervals along each line (closed free space, grazing allowed)
    free_ivs: List[List[Tuple[Fraction, Fraction]]] = []
    for (a, b) in lines:
        free_ivs.append(_free_intervals_on_line(d, a, b))

    def node_id(p: Point) -> int:
        if p not in node_ids:
            node_ids[p] = len(node_ids)
        return node_ids[p]

    def param(a: Point, b: Point, p: Point) -> Fraction:
        if b.x != a.x:
            return (p.x - a.x) / (b.x - a.x)
        return (p.y - a.y) / (b.y - a.y)

    def on_free(li: int, lam: Fraction) -> bool:
        for lo, hi in free_ivs[li]:
            if lo <= lam <= hi:
                return True
        return False

    # arrangement vertices: pairwise line crossings inside free space
    for i in range(len(lines)):
        for j in range(i + 1, len(lines)):
            p = _lines_cross(lines[i], lines[j])
            if p is None:
                continue
            li_ok = on_free(i, param(*lines[i], p))
            lj_ok = on_free(j, param(*lines[j], p))
            if li_ok and lj_ok:
                nid = node_id(p)
                nodes_of_line.setdefault(i, []).append((param(*lines[i], p), nid))
                nodes_of_line.setdefault(j, []).append((param(*lines[j], p), nid))
    for endpoint in (s, t):
        for i, (a, b) in enumerate(lines):
            if orient(a, b, endpoint) == 0:
                lam = param(a, b, endpoint)
                if on_free(i, lam):
                    nodes_of_line.setdefault(i, []).append((lam, node_id(endpoint)))

    if s not in node_ids or t not in node_ids:
        return None
    sid, tid = node_ids[s], node_ids[t]

    # group nodes by (line, free interval)
    groups: Dict[Tuple[int, int], List[int]] = {}
    member: Dict[int, List[Tuple[int, int]]] = {}
    for li, entries in nodes_of_line.items():
        ivs = free_ivs[li]
        for lam, nid in set(entries):
            gi = None
            for idx, (lo, hi) in enumerate(ivs):
                if lo <= lam <= hi:
                    gi = idx
                    break
            if gi is None:
                continue
            groups.setdefault((li, gi), []).append(nid)
            member.setdefault(nid, []).append((li, gi))

    dist: Dict[int, int] = {sid: 0}
    expanded: Set[Tuple[int, int]] = set()
    frontier = [sid]
    for depth in range(1, cap + 1):
        nxt: List[int] = []
        for u in frontier:
            for g in member.get(u, []):
                if g in expanded:
                    continue
                expanded.add(g)
                for w in groups[g]:
                    if w not in dist:
                        dist[w] = depth
                        nxt.append(w)
        if tid in dist:
            return dist[tid]
        if not nxt:
            return None
        frontier = nxt
    return None


def _line_key_points(a: Point, b: Point):
    from math import gcd
    A = b.y - a.y
    B = a.x - b.x
    C = A * a.x + B * a.y
    den = A.denominator * B.denominator * C.denominator
    ai, bi, ci = int(A * den), int(B * den), int(C * den)
    g = gcd(gcd(abs(ai), abs(bi)), abs(ci))
    if g:
        ai, bi, ci = ai // g, bi // g, ci // g
    if ai < 0 or (ai == 0 and bi < 0):
        ai, bi, ci = -ai, -bi, -ci
    return (ai, bi, ci)


def _lines_cross(l1: Tuple[Point, Point], l2: Tuple[Point, Point]) -> Optional[Point]:
    from .geom import line_intersection
    return line_intersection(l1[0], l1[1], l2[0], l2[1])


def _free_intervals_on_line(d: PolygonalDomain, a: Point, b: Point
                            ) -> List[Tuple[Fraction, Fraction]]:
    """Maximal free parameter intervals along the infinite line ab."""
    vx, vy = b.x - a.x, b.y - a.y
    params: List[Fraction] = [Fraction(0), Fraction(1)]
    for e in d.edges:
        ex, ey = e.b.x - e.a.x, e.b.y - e.a.y
        den = vx * ey - vy * ex
        wx, wy = e.a.x - a.x, e.a.y - a.y
        if den == 0:
            if wx * vy - wy * vx == 0:
                for q in (e.a, e.b):
                    if vx != 0:
                        params.append((q.x - a.x) / vx)
                    else:
                        params.append((q.y - a.y) / vy)
            continue
        tt = (wx * ey - wy * ex) / den
        ss = (wx * vy - wy * vx) / den
        if 0 <= ss <= 1:
            params.append(tt)
    params = sorted(set(params))
    lo_guard = params[0] - 1
    hi_guard = params[-1] + 1
    params = [lo_guard, *params, hi_guard]
    out: List[Tuple[Fraction, Fraction]] = []
    run_start: Optional[Fraction] = None
    for t0, t1 in zip(params, params[1:]):
        tm = (t0 + t1) / 2
        mid = Point(a.x + vx * tm, a.y + vy * tm)
        if d.point_in_free_space(mid):
            if run_start is None:
                run_start = t0
        else:
            if run_start is not None:
                out.append((run_start, t0))
                run_start = None
    if run_start is not None:
        out.append((run_start, params[-1]))
    return out
