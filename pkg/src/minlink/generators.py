"""Instance generators: random domains and the hardness gadgets.

All generators emit integer coordinates, are deterministic in their seed,
and produce instances that pass validation.  The geombase gadget punches
gaps into three horizontal obstacle bars; the zigzag gadget chains copies
of it through a serpentine corridor.
"""
from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .domain import (DomainError, DomainInstance, OrientationSet,
                     PolygonalDomain, orientation_set, validate)
from .geom import Direction, Point, Segment, direction_angle_key, pt

AXES_VECS = [(1, 0), (0, 1)]


class GenerationError(DomainError):
    pass


# ---------------------------------------------------------------------------
# geombase: three bars with gaps; link distance 3 iff a gap triple is collinear

def gen_geombase(points_on_3_lines: Sequence[Tuple[int, Fraction]],
                 gap_halfwidth: Fraction = Fraction(1, 2),
                 thickness: Optional[Fraction] = None,
                 spacing: Fraction = Fraction(4)) -> DomainInstance:
    """Three horizontal obstacle bars with a gap punched at each given x.

    points_on_3_lines: (line index 1..3, gap center x) pairs.  Every line
    needs at least one gap (a solid bar would disconnect the free space);
    gaps on one line must be pairwise disjoint.
    """
    if not points_on_3_lines:
        raise GenerationError("empty point set")
    gaps: Dict[int, List[Fraction]] = {1: [], 2: [], 3: []}
    for line, x in points_on_3_lines:
        if line not in (1, 2, 3):
            raise GenerationError(f"line index {line} out of range")
        gaps[line].append(Fraction(x))
    for line in (1, 2, 3):
        if not gaps[line]:
            raise GenerationError(f"line {line} has no gaps")
        gaps[line].sort()
        for a, b in zip(gaps[line], gaps[line][1:]):
            if b - a <= 2 * gap_halfwidth:
                raise GenerationError(f"overlapping gaps on line {line}")
    w = Fraction(gap_halfwidth)
    if w <= 0:
        raise GenerationError("gap halfwidth must be positive")
    tau = Fraction(thickness) if thickness is not None else spacing / 4
    if not 0 < tau < spacing:
        raise GenerationError("bar thickness out of range")

    all_x = [x for xs in gaps.values() for x in xs]
    X0 = min(all_x) - 3 - 2 * w
    X1 = max(all_x) + 3 + 2 * w
    Y = {1: spacing, 2: 2 * spacing, 3: 3 * spacing}
    top = 4 * spacing

    # Outer ring, counterclockwise, with the outermost bar segments as teeth.
    right_wall: List[Point] = []
    for line in (1, 2, 3):
        y0, y1 = Y[line], Y[line] + tau
        xr = gaps[line][-1] + w
        right_wall += [pt(X1, y0), pt(xr, y0), pt(xr, y1), pt(X1, y1)]
    left_wall: List[Point] = []
    for line in (3, 2, 1):
        y0, y1 = Y[line], Y[line] + tau
        xl = gaps[line][0] - w
        left_wall += [pt(X0, y1), pt(xl, y1), pt(xl, y0), pt(X0, y0)]
    outer = [pt(X0, 0), pt(X1, 0), *right_wall, pt(X1, top), pt(X0, top), *left_wall]

    holes: List[List[Point]] = []
    for line in (1, 2, 3):
        y0, y1 = Y[line], Y[line] + tau
        xs = gaps[line]
        for a, b in zip(xs, xs[1:]):
            xl, xr = a + w, b - w
            holes.append([pt(xl, y0), pt(xl, y1), pt(xr, y1), pt(xr, y0)])

    mid = (X0 + X1) / 2
    inst = DomainInstance(PolygonalDomain(outer, holes),
                          pt(mid, spacing / 2), pt(mid, top - spacing / 2))
    inst.meta = {"gaps": gaps, "halfwidth": w, "thickness": tau, "Y": Y}
    return inst


def gap_channels(inst: DomainInstance) -> Dict[int, List[Tuple[Point, Point]]]:
    """Closed gap channels (lower-left, upper-right corners) per line."""
    meta = inst.meta
    w, tau, Y = meta["halfwidth"], meta["thickness"], meta["Y"]
    out: Dict[int, List[Tuple[Point, Point]]] = {}
    for line, xs in meta["gaps"].items():
        out[line] = [(pt(x - w, Y[line]), pt(x + w, Y[line] + tau)) for x in xs]
    return out


def _line_traverses_boxes(a: Point, b: Point,
                          boxes: Sequence[Tuple[Point, Point]]) -> bool:
    """Non-horizontal line ab passes through every closed channel box,
    entering at its bottom edge and leaving at its top edge."""
    if a.y == b.y:
        return False
    for (lo, hi) in boxes:
        for y in (lo.y, hi.y):
            x = a.x + (b.x - a.x) * (y - a.y) / (b.y - a.y)
            if not (lo.x <= x <= hi.x):
                return False
    return True


def has_collinear_gap_triple(inst: DomainInstance) -> bool:
    """Direct transversal check over every gap triple, one gap per line.

    A triple counts when one straight line crosses all three bars inside
    their gap channels (endpoint grazing allowed: closed channels).
    """
    ch = gap_channels(inst)
    for b1, b2, b3 in itertools.product(ch[1], ch[2], ch[3]):
        boxes = [b1, b2, b3]
        # vertical transversal: common x-overlap of the three channels
        if max(lo.x for lo, _ in boxes) <= min(hi.x for _, hi in boxes):
            return True
        corners = [pt(x, y)
                   for (lo, hi) in boxes
                   for x in (lo.x, hi.x) for y in (lo.y, hi.y)]
        for ca, cb in itertools.combinations(corners, 2):
            if ca.y == cb.y:
                continue
            if _line_traverses_boxes(ca, cb, boxes):
                return True
    return False


# ---------------------------------------------------------------------------
# zigzag: k serial gadget copies in a serpentine corridor

def gen_zigzag(k: int, feasible: bool = True, seed: int = 0,
               scale: int = 8) -> DomainInstance:
    """k-channel serpentine corridor, one gadget copy per channel.

    A feasible gadget admits one straight link through its three bars
    (aligned gap slits); an infeasible one needs two links per channel.
    """
    if k < 1:
        raise GenerationError("k must be >= 1")
    rng = random.Random(seed)
    S = scale
    W = 40 * S                 # channel length
    H = 8 * S                  # channel height
    T = 2 * S                  # wall thickness between channels
    O = 4 * S                  # opening width at alternating ends
    A = 2 * S                  # alcove depth for s and t

    def ch_bottom(i: int) -> int:
        return A + i * (H + T)

    total_h = A + k * H + (k - 1) * T + A
    # serpentine outer ring (counterclockwise), alcoves at entry and exit
    right: List[Point] = []
    left: List[Point] = []
    for j in range(k - 1):
        y0 = ch_bottom(j) + H
        y1 = y0 + T
        if j % 2 == 1:
            # opening at the left end: the wall attaches to the right wall
            right += [pt(W, y0), pt(O, y0), pt(O, y1), pt(W, y1)]
    for j in range(k - 2, -1, -1):
        y0 = ch_bottom(j) + H
        y1 = y0 + T
        if j % 2 == 0:
            # opening at the right end: the wall attaches to the left wall
            left += [pt(0, y1), pt(W - O, y1), pt(W - O, y0), pt(0, y0)]

    sx0, sx1 = S, 2 * S                      # s alcove mouth (bottom left)
    ty_side = (k - 1) % 2                    # exit end of the last channel
    if ty_side == 0:
        tx0, tx1 = W - 2 * S, W - S
    else:
        tx0, tx1 = S, 2 * S
    outer = (
        [pt(0, A), pt(sx0, A), pt(sx0, 0), pt(sx1, 0), pt(sx1, A)]
        + [pt(W, A)] + right
        + [pt(W, total_h - A), pt(tx1, total_h - A), pt(tx1, total_h),
           pt(tx0, total_h), pt(tx0, total_h - A), pt(0, total_h - A)]
        + left
    )

    holes: List[List[Point]] = []
    for i in range(k):
        yb = ch_bottom(i)
        yt = yb + H
        delta = S // 4 if S >= 4 else 1      # clearance above/below bars
        bar_w = S                            # bar thickness (in x)
        slit = S // 2 if S >= 2 else 1       # gap slit height
        xs = [10 * S, 20 * S, 30 * S]
        if feasible:
            slit_y = [yb + 4 * S, yb + 4 * S, yb + 4 * S]
        else:
            slit_y = [yb + 3 * S, yb + 5 * S, yb + 3 * S]
        for idx, (x, sy) in enumerate(zip(xs, slit_y)):
            top_clear = delta if idx % 2 == 0 else 3 * delta
            bot_clear = 3 * delta if idx % 2 == 0 else delta
            b0, b1 = yb + bot_clear, yt - top_clear
            # bar split by its slit into two rectangles (clockwise rings)
            holes.append([pt(x, b0), pt(x, sy), pt(x + bar_w, sy), pt(x + bar_w, b0)])
            holes.append([pt(x, sy + slit), pt(x, b1), pt(x + bar_w, b1),
                          pt(x + bar_w, sy + slit)])

    s = pt((sx0 + sx1) // 2, A // 2)
    t = pt((tx0 + tx1) // 2, total_h - A // 2)
    inst = DomainInstance(PolygonalDomain(outer, holes), s, t)
    inst.meta = {"k": k, "feasible": feasible}
    return inst


# ---------------------------------------------------------------------------
# random domains

def gen_random(kind: str, n_target: int, h_target: int,
               orientations: Optional[OrientationSet] = None,
               seed: int = 0, hole_span: int = 24) -> DomainInstance:
    rng = random.Random((kind, n_target, h_target, seed).__repr__())
    if kind == "rectilinear":
        return _gen_rectilinear(rng, n_target, h_target, hole_span)
    if kind == "c_oriented":
        if orientations is None:
            raise GenerationError("c_oriented generation needs an orientation set")
        return _gen_c_oriented(rng, n_target, h_target, orientations)
    if kind == "general":
        return _gen_general(rng, n_target, h_target)
    raise GenerationError(f"unknown kind {kind!r}")


def _sample_free_point(rng, d: PolygonalDomain, lo_x, hi_x, lo_y, hi_y,
                       tries: int = 4000) -> Point:
    for _ in range(tries):
        p = pt(rng.randrange(lo_x, hi_x), rng.randrange(lo_y, hi_y))
        if d.point_strictly_inside(p):
            return p
    raise GenerationError("could not sample a free point")


def _gen_rectilinear(rng, n_target: int, h: int, hole_span: int) -> DomainInstance:
    import math
    gw = max(1, math.isqrt(2 * h) + 1)
    gh = (h + gw - 1) // gw + 1
    S = hole_span + 8
    W, Hh = gw * S, gh * S
    used_x = {0, W}
    used_y = {0, Hh}

    def fresh(pool_lo, pool_hi, used, count):
        out = []
        for _ in range(500):
            v = rng.randrange(pool_lo, pool_hi)
            if v not in used:
                used.add(v)
                out.append(v)
                if len(out) == count:
                    return sorted(out)
        raise GenerationError("coordinate pool exhausted")

    # distribute the vertex budget: even count >= 4 per hole (staircases)
    sizes = [4] * h
    extra = max(0, n_target - 4 - 4 * h)
    cap_steps = max(2, hole_span // 3)
    i = 0
    while extra >= 2 and any(s < 2 * cap_steps for s in sizes):
        if sizes[i % h] < 2 * cap_steps:
            sizes[i % h] += 2
            extra -= 2
        i += 1

    cells = rng.sample([(i, j) for i in range(gw) for j in range(gh)], h)
    holes = []
    for size, (ci, cj) in zip(sizes, cells):
        x_lo, x_hi = ci * S + 2, ci * S + 2 + hole_span
        y_lo, y_hi = cj * S + 2, cj * S + 2 + hole_span
        m = (size - 2) // 2          # staircase steps; m=1 is a rectangle
        xs = fresh(x_lo, x_hi, used_x, m + 1)
        ys = fresh(y_lo, y_hi, used_y, m + 1)
        ring = [pt(xs[0], ys[0]), pt(xs[m], ys[0])]
        for j in range(1, m + 1):
            ring.append(pt(xs[m - j + 1], ys[j]))
            ring.append(pt(xs[m - j], ys[j]))
        ring.reverse()  # clockwise hole
        holes.append(ring)
    d = PolygonalDomain([pt(0, 0), pt(W, 0), pt(W, Hh), pt(0, Hh)], holes)
    vs = validate(d)
    if any(v.kind != "degenerate-support" for v in vs) or vs:
        raise GenerationError("rectilinear generation produced an invalid domain")
    s = _sample_free_point(rng, d, 1, W, 1, Hh)
    t = _sample_free_point(rng, d, 1, W, 1, Hh)
    inst = DomainInstance(d, s, t, orientation_set(AXES_VECS))
    return inst


def _zonogon(rng, dirs: Sequence[Direction], lengths: Sequence[int],
             anchor: Point, clockwise: bool = False) -> List[Point]:
    vecs = []
    for d, length in zip(dirs, lengths):
        vecs.append((d.dx * length, d.dy * length))
    vecs = vecs + [(-vx, -vy) for (vx, vy) in vecs]
    ring = [anchor]
    for vx, vy in vecs[:-1]:
        last = ring[-1]
        ring.append(pt(last.x + vx, last.y + vy))
    if clockwise:
        ring.reverse()
    return ring


def _gen_c_oriented(rng, n_target: int, h: int,
                    orientations: OrientationSet) -> DomainInstance:
    dirs = list(orientations.dirs)
    C = len(dirs)
    # per-hole direction subsets sized to approach the vertex budget
    budget = max(0, n_target - 2 * C)
    subset_sizes = []
    for _ in range(h):
        want = max(2, min(C, budget // (2 * max(1, h))))
        subset_sizes.append(want)
    import math
    cell = 30
    gw = max(1, math.isqrt(2 * h) + 1)
    gh = (h + gw - 1) // gw + 1
    R = max(gw, gh) * cell
    for attempt in range(60):
        outer = _zonogon(rng, dirs, [2 * R // max(1, 1)] * C, pt(0, -2 * R * C // 2))
        # recenter: use bounding box to place the grid of holes inside
        xs = [p.x for p in outer]
        ys = [p.y for p in outer]
        cx, cy = (min(xs) + max(xs)) / 2, (min(ys) + max(ys)) / 2
        cells = rng.sample([(i, j) for i in range(gw) for j in range(gh)], h)
        holes = []
        for size, (ci, cj) in zip(subset_sizes, cells):
            sub = sorted(rng.sample(dirs, size), key=direction_angle_key)
            lens = [rng.randrange(1, max(2, cell // (2 * size))) for _ in sub]
            ax = int(cx) - (gw * cell) // 2 + ci * cell + cell // 3
            ay = int(cy) - (gh * cell) // 2 + cj * cell + cell // 3
            ax += rng.randrange(0, cell // 4)
            ay += rng.randrange(0, cell // 4)
            holes.append(_zonogon(rng, sub, lens, pt(ax, ay), clockwise=True))
        d = PolygonalDomain(outer, holes)
        vs = validate(d)
        if any(v.kind != "degenerate-support" for v in vs):
            continue
        xs0 = int(min(xs)) + 1
        xs1 = int(max(xs)) - 1
        ys0 = int(min(ys)) + 1
        ys1 = int(max(ys)) - 1
        try:
            s = _sample_free_point(rng, d, xs0, xs1, ys0, ys1)
            t = _sample_free_point(rng, d, xs0, xs1, ys0, ys1)
        except GenerationError:
            continue
        return DomainInstance(d, s, t, orientations)
    raise GenerationError("c-oriented generation failed after bounded retries")


def _gen_general(rng, n_target: int, h: int) -> DomainInstance:
    import math
    gw = max(1, math.isqrt(2 * h) + 1)
    gh = (h + gw - 1) // gw + 1
    S = 40
    W, Hh = gw * S, gh * S
    per_hole = max(3, min(9, (n_target - 4) // max(1, h)))

    def star_hole(cx: int, cy: int) -> Optional[List[Point]]:
        from .domain import _ring_violations
        for _ in range(200):
            m = max(3, per_hole + rng.randrange(-1, 2))
            angles = sorted(rng.uniform(0, 2 * math.pi) for _ in range(m))
            if min(b - a for a, b in zip(angles, angles[1:])) < 0.15:
                continue
            ring = []
            for ang in angles:
                r = rng.randrange(S // 5, S // 2 - 4)
                ring.append(pt(cx + round(r * math.cos(ang)),
                               cy + round(r * math.sin(ang))))
            if len({(p.x, p.y) for p in ring}) != len(ring):
                continue
            ring_cw = list(reversed(ring))
            if _ring_violations(ring_cw, 0):
                continue
            from .geom import polygon_area2
            if polygon_area2(ring_cw) >= 0:
                continue
            return ring_cw
        return None

    for attempt in range(60):
        cells = rng.sample([(i, j) for i in range(gw) for j in range(gh)], h)
        holes = []
        ok = True
        for (ci, cj) in cells:
            ring = star_hole(ci * S + S // 2, cj * S + S // 2)
            if ring is None:
                ok = False
                break
            holes.append(ring)
        if not ok:
            continue
        d = PolygonalDomain([pt(0, 0), pt(W, 0), pt(W, Hh), pt(0, Hh)], holes)
        vs = validate(d)
        if any(v.kind != "degenerate-support" for v in vs):
            continue
        try:
            s = _sample_free_point(rng, d, 1, W, 1, Hh)
            t = _sample_free_point(rng, d, 1, W, 1, Hh)
        except GenerationError:
            continue
        return DomainInstance(d, s, t)
    raise GenerationError("general generation failed after bounded retries")
