"""Exact link-distance maps for orientation-restricted paths.

The map for orientation set C keeps one refined trapezoidation per
orientation.  Cells are labeled by breadth-first search over the implicit
intersection graph: step k light comes from step k-1 cells of the other
orientations, discovered either through a shared supporting edge
(flush lighting, read off the per-edge support lists) or by clipping each
source cell to a parallelogram and running one upward sweep per ordered
orientation pair (straddle lighting).  Partially lit cells split at the
end of each step's flush phase; a straddle-lit cell is always fully lit.

Label convention: the cells containing the maximal free segments through
the source point carry label 1, everything else the BFS step at which it
was first lit.  Points that are not reachable with C-oriented paths stay
dark (label None).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .domain import (DomainError, OrientationSet, OutsideFreeSpaceError,
                     PolygonalDomain, has_blocking_violations, validate)
from .geom import (Direction, Point, Segment, convex_intersection,
                   height_along, on_segment, point_from_frame, polygon_area2,
                   pos_along)
from .sweep import (EVENT_PAR_LOWER, EVENT_PAR_UPPER, EVENT_TRAP, EventQueue,
                    SweepStatus)
from .trapmod import Trapezoidation, build_trapezoidation


@dataclass
class LightRecord:
    """How a cell (or part of it) was lit: enough to walk a path back."""
    kind: str                      # "seed" | "flush" | "straddle"
    t_lo: Fraction                 # covered height interval in the cell's frame
    t_hi: Fraction
    src_ori: int
    src_key: int = -1              # source cell key (flush/straddle)
    edge: int = -1                 # shared support edge (flush)
    w_lo: Fraction = Fraction(0)   # sheared status interval (straddle)
    w_hi: Fraction = Fraction(0)
    slope: Fraction = Fraction(0)

    def covers(self, t: Fraction) -> bool:
        return self.t_lo <= t <= self.t_hi


@dataclass
class MapCell:
    key: int
    parent: int                    # originating cell of the base decomposition
    el: int
    er: int
    t_lo: Fraction
    t_hi: Fraction
    u_ll: Fraction
    u_lr: Fraction
    u_ul: Fraction
    u_ur: Fraction
    label: Optional[int] = None
    rank: Optional[int] = None
    host: bool = False
    frozen: bool = False           # excluded from further lighting
    up: Set[int] = field(default_factory=set)
    dn: Set[int] = field(default_factory=set)
    records: List[LightRecord] = field(default_factory=list)
    zigzag: Optional[object] = None

    def u_left_at(self, t: Fraction) -> Fraction:
        if self.t_hi == self.t_lo:
            return self.u_ll
        return self.u_ll + (self.u_ul - self.u_ll) * (t - self.t_lo) / (self.t_hi - self.t_lo)

    def u_right_at(self, t: Fraction) -> Fraction:
        if self.t_hi == self.t_lo:
            return self.u_lr
        return self.u_lr + (self.u_ur - self.u_lr) * (t - self.t_lo) / (self.t_hi - self.t_lo)

    def contains_frame(self, t: Fraction, u: Fraction) -> bool:
        if not (self.t_lo <= t <= self.t_hi):
            return False
        return self.u_left_at(t) <= u <= self.u_right_at(t)


class CMap:
    """Refined decomposition plus labels for a single orientation."""

    def __init__(self, ori_index: int, c: Direction, trap: Trapezoidation):
        self.ori_index = ori_index
        self.c = c
        self.trap = trap
        self.cells: Dict[int, MapCell] = {}
        self.children: Dict[int, List[int]] = {}
        self.support: Dict[int, List[int]] = {}
        self.split_pieces: Dict[int, List[int]] = {}
        self.seed: Optional[Segment] = None
        self.seed_height: Optional[Fraction] = None
        self._next_key = len(trap.cells)
        for t in trap.cells:
            cell = MapCell(t.id, t.id, t.el, t.er, t.t_lo, t.t_hi,
                           t.u_ll, t.u_lr, t.u_ul, t.u_ur,
                           up=set(t.up), dn=set(t.dn))
            self.cells[t.id] = cell
            self.children[t.id] = [t.id]
        for e, ids in trap.support.items():
            self.support[e] = list(ids)

    # -- geometry ------------------------------------------------------------

    def frame(self, p: Point) -> Tuple[Fraction, Fraction]:
        return height_along(self.c, p), pos_along(self.c, p)

    def unframe(self, t: Fraction, u: Fraction) -> Point:
        return point_from_frame(self.c, t, u)

    def polygon(self, cell: MapCell) -> List[Point]:
        pts = [self.unframe(cell.t_lo, cell.u_ll),
               self.unframe(cell.t_lo, cell.u_lr),
               self.unframe(cell.t_hi, cell.u_ur),
               self.unframe(cell.t_hi, cell.u_ul)]
        out: List[Point] = []
        for p in pts:
            if not out or out[-1] != p:
                out.append(p)
        if len(out) > 1 and out[0] == out[-1]:
            out.pop()
        return out

    def side_span(self, cell: MapCell, e: int) -> Tuple[Fraction, Fraction]:
        """Span of the cell's side along edge e, in e-position coordinates."""
        edge = self.trap.domain.edges[e]
        dvec = edge.b - edge.a
        if cell.el == e:
            pts = [self.unframe(cell.t_lo, cell.u_ll), self.unframe(cell.t_hi, cell.u_ul)]
        else:
            pts = [self.unframe(cell.t_lo, cell.u_lr), self.unframe(cell.t_hi, cell.u_ur)]
        vals = [dvec.x * p.x + dvec.y * p.y for p in pts]
        return min(vals), max(vals)

    # -- structure maintenance -------------------------------------------------

    def locate_keys(self, q: Point) -> List[int]:
        d0 = self.trap.locate(q)
        t, u = self.frame(q)
        out = [k for k in self.children[d0]
               if self.cells[k].contains_frame(t, u)]
        # a boundary point can also lie in cells of a neighboring parent
        if not out:
            raise OutsideFreeSpaceError(f"{q} not in any refined cell")
        return out

    def locate_key(self, q: Point) -> int:
        return min(self.locate_keys(q))

    def split(self, key: int, cuts: Sequence[Fraction]) -> List[int]:
        """Split a cell at interior heights; returns piece keys bottom-up."""
        cell = self.cells.pop(key)
        cuts = sorted({c for c in cuts if cell.t_lo < c < cell.t_hi})
        if not cuts:
            self.cells[key] = cell
            return [key]
        bounds = [cell.t_lo, *cuts, cell.t_hi]
        pieces: List[MapCell] = []
        for t0, t1 in zip(bounds, bounds[1:]):
            k = self._next_key
            self._next_key += 1
            pieces.append(MapCell(
                k, cell.parent, cell.el, cell.er, t0, t1,
                cell.u_left_at(t0), cell.u_right_at(t0),
                cell.u_left_at(t1), cell.u_right_at(t1)))
        for a, b in zip(pieces, pieces[1:]):
            a.up.add(b.key)
            b.dn.add(a.key)
        bottom, top = pieces[0], pieces[-1]
        bottom.dn |= cell.dn
        top.up |= cell.up
        for nk in cell.dn:
            nb = self.cells[nk]
            nb.up.discard(key)
            nb.up.add(bottom.key)
        for nk in cell.up:
            nb = self.cells[nk]
            nb.dn.discard(key)
            nb.dn.add(top.key)
        for p in pieces:
            self.cells[p.key] = p
        piece_keys = [p.key for p in pieces]
        kids = self.children[cell.parent]
        i = kids.index(key)
        kids[i:i + 1] = piece_keys
        for e in {cell.el, cell.er}:
            lst = self.support[e]
            j = lst.index(key)
            lst[j:j + 1] = piece_keys
        self.split_pieces[key] = piece_keys
        return piece_keys

    def live_pot(self, d0: int, t0: Fraction, u_a: Fraction, u_b: Fraction) -> int:
        """Refined cell of parent d0 holding the parallelogram bottom."""
        kids = self.children[d0]
        for k in kids:
            if self.cells[k].t_lo == t0 and self.cells[k].t_hi > t0:
                return k
        for k in kids:
            cell = self.cells[k]
            if cell.t_lo <= t0 < cell.t_hi or (cell.t_lo <= t0 <= cell.t_hi == cell.t_lo):
                return k
        for k in kids:
            cell = self.cells[k]
            if cell.t_lo <= t0 <= cell.t_hi:
                return k
        raise DomainError("parallelogram bottom lost its pot")

    def final_labels_of(self, key: int) -> List[Optional[int]]:
        if key in self.cells:
            return [self.cells[key].label]
        out: List[Optional[int]] = []
        for k in self.split_pieces.get(key, []):
            out.extend(self.final_labels_of(k))
        return out


class CoriLinkMap:
    """One CMap per orientation; immutable once built."""

    def __init__(self, domain: PolygonalDomain, orientations: OrientationSet,
                 s: Point, maps: List[CMap], steps: int,
                 queued_steps: Dict[Tuple[int, int], Set[int]],
                 violations: List[str]):
        self.domain = domain
        self.orientations = orientations
        self.s = s
        self.maps = maps
        self.steps = steps
        self.queued_steps = queued_steps
        self.violations = violations

    def query(self, q: Point) -> Optional[int]:
        """Smallest containing-cell label over the orientations (None = dark)."""
        if not self.domain.point_in_free_space(q):
            raise OutsideFreeSpaceError(f"{q} outside free space")
        best: Optional[int] = None
        for m in self.maps:
            for k in m.locate_keys(q):
                cell = m.cells[k]
                lab = _effective_label(m, cell, q)
                if lab is not None and (best is None or lab < best):
                    best = lab
        return best

    def extract_path(self, q: Point) -> List[Point]:
        return _extract(self, q)

    def dump(self) -> dict:
        from .domain import _encode_point
        return {
            "kind": "linkmap",
            "orientations": [[m.c.dx, m.c.dy] for m in self.maps],
            "s": _encode_point(self.s),
            "maps": [
                {
                    "orientation": [m.c.dx, m.c.dy],
                    "cells": [
                        {
                            "key": cell.key,
                            "parent": cell.parent,
                            "label": cell.label,
                            "polygon": [_encode_point(p) for p in m.polygon(cell)],
                        }
                        for cell in m.cells.values()
                    ],
                }
                for m in self.maps
            ],
        }

    def label_pieces(self) -> List[List[Tuple[int, Fraction, Fraction, Optional[int]]]]:
        """Canonical (parent, t_lo, t_hi, label) tuples per orientation."""
        out = []
        for m in self.maps:
            rows = sorted((cell.parent, cell.t_lo, cell.t_hi, cell.label)
                          for cell in m.cells.values())
            out.append(rows)
        return out


def _effective_label(m: CMap, cell: MapCell, q: Point) -> Optional[int]:
    if cell.zigzag is not None:
        return cell.zigzag.query_label(q)
    return cell.label


# ---------------------------------------------------------------------------
# Builder

class LinkMapBuilder:
    def __init__(self, domain: PolygonalDomain, orientations: OrientationSet,
                 s: Point, rect_mode: bool = False,
                 problematic_plan=None, max_steps: Optional[int] = None):
        self.domain = domain
        self.orientations = orientations
        self.s = s
        self.rect_mode = rect_mode
        self.problematic_plan = problematic_plan
        self.max_steps = max_steps
        self.maps: List[CMap] = []
        self.queued_steps: Dict[Tuple[int, int], Set[int]] = {}
        self.violations: List[str] = []
        self.step = 0
        self.remainders: List[Tuple[int, int]] = []  # created during last step

    def build(self) -> CoriLinkMap:
        if not self.domain.point_strictly_inside(self.s):
            raise OutsideFreeSpaceError(f"source {self.s} not strictly inside")
        for i, c in enumerate(self.orientations):
            trap = build_trapezoidation(self.domain, c)
            self.maps.append(CMap(i, c, trap))
        if self.problematic_plan is not None:
            self.problematic_plan.prepare(self)
        self._seed_stage()
        k = 2
        limit = self.max_steps or (4 * self.domain.n + 16)
        while True:
            k += 1
            if k > limit:
                self.violations.append(f"BFS did not settle within {limit} steps")
                break
            newly = self._step(k)
            if self.problematic_plan is not None:
                self.problematic_plan.after_step(self, k)
                newly += self.problematic_plan.pending_activity(k)
            if not newly:
                break
        self.step = k
        return CoriLinkMap(self.domain, self.orientations, self.s, self.maps,
                           k, self.queued_steps, self.violations)

    # -- seeds ---------------------------------------------------------------

    def _seed_stage(self) -> None:
        seeds: List[Segment] = []
        for i, m in enumerate(self.maps):
            seg = self.domain.max_free_segment(self.s, m.c)
            m.seed = seg
            m.seed_height = height_along(m.c, self.s)
            seeds.append(seg)
        pending: Dict[Tuple[int, int], List[LightRecord]] = {}
        for i, m in enumerate(self.maps):
            for j, src in enumerate(self.maps):
                if i == j:
                    continue
                for key, (h1, h2) in self._seed_hits(m, seeds[j]):
                    rec = LightRecord("seed", h1, h2, j)
                    pending.setdefault((i, key), []).append(rec)
        self._apply_records(pending, rank=2, label=2)
        for m in self.maps:
            host = m.locate_key(self.s)
            cell = m.cells[host]
            cell.host = True
            cell.label = 1
            if cell.rank is None:
                # the cross seeds always cross the source cell
                self.violations.append("seed host cell missed by seed stage")
                cell.rank = 2

    def _seed_hits(self, m: CMap, seed: Segment):
        """(cell key, covered height interval) pairs for a seed segment."""
        out = []
        for key, cell in m.cells.items():
            got = _segment_heights_in_cell(m, cell, seed)
            if got is not None:
                out.append((key, got))
        return out

    # -- one BFS step ----------------------------------------------------------

    def _step(self, k: int) -> int:
        prev: List[List[int]] = []
        for m in self.maps:
            prev.append([key for key, cell in m.cells.items()
                         if cell.rank == k - 1])
        old_remainders = self.remainders
        self.remainders = []

        # Flush phase: pairs sharing a supporting edge.
        pending: Dict[Tuple[int, int], List[LightRecord]] = {}
        for j, srcmap in enumerate(self.maps):
            for skey in prev[j]:
                scell = srcmap.cells[skey]
                spoly = srcmap.polygon(scell)
                for e in {scell.el, scell.er}:
                    s_lo, s_hi = srcmap.side_span(scell, e)
                    for i, m in enumerate(self.maps):
                        if i == j or e not in m.support:
                            continue
                        for tkey in m.support[e]:
                            tcell = m.cells[tkey]
                            if tcell.rank is not None or tcell.frozen:
                                continue
                            t_lo, t_hi = m.side_span(tcell, e)
                            if max(s_lo, t_lo) >= min(s_hi, t_hi):
                                continue
                            got = _intersection_heights(m, tcell, spoly)
                            if got is None:
                                continue
                            pending.setdefault((i, tkey), []).append(
                                LightRecord("flush", got[0], got[1], j,
                                            src_key=skey, edge=e))
        self._apply_records(pending, rank=k, label=k)

        # Straddle phase: one sheared up-sweep per ordered orientation pair.
        for i, m in enumerate(self.maps):
            for j, srcmap in enumerate(self.maps):
                if i != j and prev[j]:
                    self._sweep(k, m, srcmap, prev[j])

        # A dark remainder left by step k-1 must be fully lit now.
        for (ori, key) in old_remainders:
            m = self.maps[ori]
            cell = m.cells.get(key)
            if cell is None:
                self.violations.append(
                    f"step-{k - 1} dark remainder split again at step {k}")
            elif cell.rank is None and not cell.frozen:
                self.violations.append(
                    f"step-{k - 1} dark remainder still dark after step {k}")

        return sum(1 for m in self.maps for cell in m.cells.values()
                   if cell.rank == k)

    # -- record application / splitting -----------------------------------------

    def _apply_records(self, pending: Dict[Tuple[int, int], List[LightRecord]],
                       rank: int, label: int) -> None:
        for (ori, key), recs in sorted(pending.items()):
            m = self.maps[ori]
            cell = m.cells[key]
            if cell.rank is not None or cell.frozen:
                continue
            ivs = sorted((r.t_lo, r.t_hi) for r in recs)
            merged: List[List[Fraction]] = []
            for lo, hi in ivs:
                lo = max(lo, cell.t_lo)
                hi = min(hi, cell.t_hi)
                if lo > hi:
                    continue
                if merged and lo <= merged[-1][1]:
                    merged[-1][1] = max(merged[-1][1], hi)
                else:
                    merged.append([lo, hi])
            if not merged:
                continue
            if len(merged) == 1 and merged[0][0] <= cell.t_lo and merged[0][1] >= cell.t_hi:
                cell.rank = rank
                cell.label = label
                cell.records = sorted(recs, key=_record_order)
                continue
            cuts: List[Fraction] = []
            for lo, hi in merged:
                if lo > cell.t_lo:
                    cuts.append(lo)
                if hi < cell.t_hi:
                    cuts.append(hi)
            pieces = m.split(key, cuts)
            for pk in pieces:
                piece = m.cells[pk]
                lit = any(lo <= piece.t_lo and piece.t_hi <= hi for lo, hi in merged)
                if lit:
                    piece.rank = rank
                    piece.label = label
                    piece.records = sorted(
                        (r for r in recs
                         if max(r.t_lo, piece.t_lo) < min(r.t_hi, piece.t_hi)
                         or (r.t_lo <= piece.t_lo and piece.t_hi <= r.t_hi)),
                        key=_record_order)
                else:
                    self.remainders.append((ori, pk))

    # -- the sweep ---------------------------------------------------------------

    def _sweep(self, k: int, m: CMap, srcmap: CMap, sources: List[int]) -> None:
        c, cstar = m.c, srcmap.c
        crossv = c.dx * cstar.dy - c.dy * cstar.dx
        dotv = c.dx * cstar.dx + c.dy * cstar.dy
        slope = Fraction(dotv, crossv)
        status = SweepStatus(slope)
        queue = EventQueue()
        queued: Set[int] = set()
        pots: Set[int] = set()
        band_hi_of: Dict[int, Fraction] = {}

        def c_frame(p: Point) -> Tuple[Fraction, Fraction]:
            return height_along(c, p), pos_along(c, p)

        for skey in sources:
            scell = srcmap.cells[skey]
            base1 = (srcmap.unframe(scell.t_lo, scell.u_ll),
                     srcmap.unframe(scell.t_lo, scell.u_lr))
            base2 = (srcmap.unframe(scell.t_hi, scell.u_ul),
                     srcmap.unframe(scell.t_hi, scell.u_ur))
            l1, l2 = sorted(c_frame(p)[0] for p in base1)
            u1, u2 = sorted(c_frame(p)[0] for p in base2)
            band_lo, band_hi = max(l1, u1), min(l2, u2)
            if band_lo >= band_hi:
                continue
            t1, uu1 = c_frame(base1[0])
            t2, uu2 = c_frame(base2[0])
            w1 = uu1 - slope * t1
            w2 = uu2 - slope * t2
            w_lo, w_hi = (w1, w2) if w1 < w2 else (w2, w1)
            if w_lo == w_hi:
                continue
            band_hi_of[skey] = band_hi
            queue.push(band_lo, EVENT_PAR_LOWER, skey, (w_lo, w_hi))
            queue.push(band_hi, EVENT_PAR_UPPER, skey, None)
            u_a = w_lo + slope * band_lo
            u_b = w_hi + slope * band_lo
            pot_d0 = m.trap.pot_of(band_lo, u_a, u_b)
            pot_key = m.live_pot(pot_d0, band_lo, u_a, u_b)
            pots.add(pot_key)
            if pot_key not in queued:
                queued.add(pot_key)
                self._note_queued(m.ori_index, pot_key, k)
                queue.push(m.cells[pot_key].t_lo, EVENT_TRAP, pot_key, None)

        processed: Set[int] = set()
        while queue:
            t, cls, ident, payload = queue.pop()
            if cls == EVENT_PAR_LOWER:
                status.shift_frame(t)
                w_lo, w_hi = payload
                status.insert(w_lo + slope * t, w_hi + slope * t, ident)
            elif cls == EVENT_PAR_UPPER:
                status.remove_source(ident)
            else:
                if ident in processed:
                    continue
                processed.add(ident)
                cell = m.cells[ident]
                status.shift_frame(t)
                ivs = status.overlap(cell.u_ll, cell.u_lr)
                if ivs:
                    if cell.rank is None and not cell.frozen:
                        iv = ivs[0]
                        o_lo = max(iv.lo, cell.u_ll)
                        o_hi = min(iv.hi, cell.u_lr)
                        cell.rank = k
                        cell.label = k
                        cell.records = [LightRecord(
                            "straddle", cell.t_lo, cell.t_hi, srcmap.ori_index,
                            src_key=iv.source,
                            w_lo=o_lo - slope * t, w_hi=o_hi - slope * t,
                            slope=slope)]
                        if band_hi_of.get(iv.source, cell.t_hi) < cell.t_hi:
                            self.violations.append(
                                f"straddle-lit cell not fully covered at step {k}")
                    self._push_up_neighbors(m, cell, queue, queued, k)
                elif ident in pots:
                    if self.rect_mode:
                        self.violations.append(
                            "rectilinear pot without status overlap")
                    self._push_up_neighbors(m, cell, queue, queued, k)

    def _push_up_neighbors(self, m: CMap, cell: MapCell, queue: EventQueue,
                           queued: Set[int], k: int) -> None:
        for nk in cell.up:
            if nk not in queued:
                queued.add(nk)
                self._note_queued(m.ori_index, nk, k)
                queue.push(m.cells[nk].t_lo, EVENT_TRAP, nk, None)

    def _note_queued(self, ori: int, key: int, k: int) -> None:
        self.queued_steps.setdefault((ori, key), set()).add(k)


def _record_order(r: LightRecord):
    return (r.t_lo, r.t_hi, r.kind, r.src_ori, r.src_key)


def _segment_heights_in_cell(m: CMap, cell: MapCell, seg: Segment
                             ) -> Optional[Tuple[Fraction, Fraction]]:
    """Height interval of seg inside the (convex) cell; None if degenerate."""
    poly = m.polygon(cell)
    if len(poly) < 3:
        return None
    # clip the segment parameter range by each half-plane
    lo, hi = Fraction(0), Fraction(1)
    a, b = seg.a, seg.b
    n = len(poly)
    for i in range(n):
        p1, p2 = poly[i], poly[(i + 1) % n]
        # inside: orient(p1, p2, x) >= 0
        fa = (p2.x - p1.x) * (a.y - p1.y) - (p2.y - p1.y) * (a.x - p1.x)
        fb = (p2.x - p1.x) * (b.y - p1.y) - (p2.y - p1.y) * (b.x - p1.x)
        dv = fb - fa
        if dv == 0:
            if fa < 0:
                return None
            continue
        tcross = -fa / dv
        if dv > 0:
            lo = max(lo, tcross)
        else:
            hi = min(hi, tcross)
        if lo >= hi:
            return None
    pa = Point(a.x + (b.x - a.x) * lo, a.y + (b.y - a.y) * lo)
    pb = Point(a.x + (b.x - a.x) * hi, a.y + (b.y - a.y) * hi)
    h1, h2 = height_along(m.c, pa), height_along(m.c, pb)
    if h1 > h2:
        h1, h2 = h2, h1
    if h1 == h2:
        return None
    return h1, h2


def _intersection_heights(m: CMap, cell: MapCell, other_poly: Sequence[Point]
                          ) -> Optional[Tuple[Fraction, Fraction]]:
    """Height range of the positive-area intersection with another convex poly."""
    poly = m.polygon(cell)
    if len(poly) < 3 or len(other_poly) < 3:
        return None
    inter = convex_intersection(poly, other_poly)
    if len(inter) < 3 or polygon_area2(inter) == 0:
        return None
    hs = [height_along(m.c, p) for p in inter]
    return min(hs), max(hs)


# ---------------------------------------------------------------------------
# Path extraction

def _chord_in_convex(poly: Sequence[Point], p: Point, d: Direction
                     ) -> Tuple[Point, Point]:
    """The maximal segment through p with orientation d inside the polygon."""
    lo, hi = None, None
    dv = Point(Fraction(d.dx), Fraction(d.dy))
    n = len(poly)
    lo_t, hi_t = Fraction(-10**18), Fraction(10**18)
    for i in range(n):
        p1, p2 = poly[i], poly[(i + 1) % n]
        ex, ey = p2.x - p1.x, p2.y - p1.y
        fa = ex * (p.y - p1.y) - ey * (p.x - p1.x)
        fd = ex * dv.y - ey * dv.x
        if fd == 0:
            if fa < 0:
                return p, p
            continue
        tcross = -fa / fd
        if fd > 0:
            lo_t = max(lo_t, tcross)
        else:
            hi_t = min(hi_t, tcross)
    if lo_t > hi_t:
        return p, p
    return (Point(p.x + dv.x * lo_t, p.y + dv.y * lo_t),
            Point(p.x + dv.x * hi_t, p.y + dv.y * hi_t))


def _extract(lm: CoriLinkMap, q: Point) -> List[Point]:
    if not lm.domain.point_in_free_space(q):
        raise OutsideFreeSpaceError(f"{q} outside free space")
    best = None
    for m in lm.maps:
        for k in m.locate_keys(q):
            cell = m.cells[k]
            lab = _effective_label(m, cell, q)
            if lab is None:
                continue
            cand = (lab, m.ori_index, k)
            if best is None or cand < best:
                best = cand
    if best is None:
        raise DomainError("query point is dark (unreachable)")
    _, ori, key = best
    pts = [q]
    cur = q
    m = lm.maps[ori]
    cell = m.cells[key]
    guard = 0
    while True:
        guard += 1
        if guard > 10000:
            raise DomainError("path extraction did not terminate")
        if cell.zigzag is not None:
            seq, m, cell = cell.zigzag.backtrack(cur)
            pts.extend(seq[1:])
            cur = pts[-1]
            continue
        if cell.host and on_segment(cur, m.seed):
            pts.append(lm.s)
            break
        t_cur = height_along(m.c, cur)
        rec = None
        for r in cell.records:
            if r.covers(t_cur):
                rec = r
                break
        if rec is None:
            raise DomainError("no lighting record covers the backtrack point")
        if rec.kind == "seed":
            src = lm.maps[rec.src_ori]
            p = _point_on_segment_at_height(src.seed, m.c, t_cur)
            _append(pts, p)
            _append(pts, lm.s)
            break
        src = lm.maps[rec.src_ori]
        scell = src.cells[rec.src_key]
        spoly = src.polygon(scell)
        if rec.kind == "straddle":
            w_mid = (rec.w_lo + rec.w_hi) / 2
            p = m.unframe(t_cur, w_mid + rec.slope * t_cur)
        else:
            p = _flush_turn_point(m, cell, spoly, rec, t_cur)
        _append(pts, p)
        cur = p
        m, cell = src, scell
    pts.reverse()
    out = [pts[0]]
    for p in pts[1:]:
        if p != out[-1]:
            out.append(p)
    if len(out) == 1:
        out.append(out[0])  # degenerate 1-link path (q == s)
    return out


def _append(pts: List[Point], p: Point) -> None:
    if pts[-1] != p:
        pts.append(p)


def _point_on_segment_at_height(seg: Segment, c: Direction, t: Fraction) -> Point:
    ha = height_along(c, seg.a)
    hb = height_along(c, seg.b)
    if ha == hb:
        raise DomainError("seed parallel to target orientation")
    lam = (t - ha) / (hb - ha)
    return Point(seg.a.x + (seg.b.x - seg.a.x) * lam,
                 seg.a.y + (seg.b.y - seg.a.y) * lam)


def _flush_turn_point(m: CMap, cell: MapCell, spoly: Sequence[Point],
                      rec: LightRecord, t_cur: Fraction) -> Point:
    inter = convex_intersection(m.polygon(cell), spoly)
    # section of the intersection at height t_cur
    pts_on = _convex_section_at_height(m, inter, t_cur)
    if pts_on is None:
        raise DomainError("flush record does not cover the backtrack height")
    pa, pb = pts_on
    edge = m.trap.domain.edges[rec.edge]
    from .geom import orient as _orient
    if _orient(edge.a, edge.b, pa) == 0:
        return pa
    if _orient(edge.a, edge.b, pb) == 0:
        return pb
    return Point((pa.x + pb.x) / 2, (pa.y + pb.y) / 2)


def _convex_section_at_height(m: CMap, poly: Sequence[Point], t: Fraction
                              ) -> Optional[Tuple[Point, Point]]:
    if len(poly) < 3:
        return None
    us = []
    n = len(poly)
    for i in range(n):
        p1, p2 = poly[i], poly[(i + 1) % n]
        h1, h2 = height_along(m.c, p1), height_along(m.c, p2)
        if h1 == h2:
            if h1 == t:
                us.extend([pos_along(m.c, p1), pos_along(m.c, p2)])
            continue
        lo, hi = (h1, h2) if h1 < h2 else (h2, h1)
        if lo <= t <= hi:
            lam = (t - h1) / (h2 - h1)
            x = p1.x + (p2.x - p1.x) * lam
            y = p1.y + (p2.y - p1.y) * lam
            us.append(pos_along(m.c, Point(x, y)))
    if not us:
        return None
    return m.unframe(t, min(us)), m.unframe(t, max(us))


# ---------------------------------------------------------------------------
# Public API

def build_cori_linkmap(d: PolygonalDomain, orientations: OrientationSet,
                       s: Point, require_c_oriented: bool = True) -> CoriLinkMap:
    from .domain import is_c_oriented
    vs = validate(d)
    if has_blocking_violations(vs):
        raise DomainError("invalid domain: " + "; ".join(map(str, vs)))
    if require_c_oriented and not is_c_oriented(d, orientations):
        raise DomainError("domain is not oriented to the given set")
    return LinkMapBuilder(d, orientations, s).build()


def query_cori(m: CoriLinkMap, q: Point) -> Optional[int]:
    return m.query(q)


def extract_cori_path(m: CoriLinkMap, q: Point) -> List[Point]:
    return m.extract_path(q)
