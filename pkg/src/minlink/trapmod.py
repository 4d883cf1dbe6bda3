"""Per-orientation trapezoidal decompositions.

For an orientation c, the free space is decomposed by the maximal free
c-oriented segments through every vertex of the domain.  Each cell is a
trapezoid with two c-oriented bases (possibly degenerate) and two sides
lying on domain edges.  Cells are built by a single event sweep in the
(height, position) frame of c, entirely over exact rationals.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .domain import DomainError, OutsideFreeSpaceError, PolygonalDomain
from .geom import (Direction, Point, Segment, height_along, pos_along,
                   point_from_frame)


@dataclass
class Trapezoid:
    """One cell: bases at heights t_lo/t_hi, sides on edges el/er."""
    id: int
    el: int            # domain edge carrying the left (smaller-u) side
    er: int            # domain edge carrying the right side
    t_lo: Fraction
    t_hi: Fraction
    u_ll: Fraction     # lower base [u_ll, u_lr] at height t_lo
    u_lr: Fraction
    u_ul: Fraction     # upper base [u_ul, u_ur] at height t_hi
    u_ur: Fraction
    up: List[int] = field(default_factory=list)
    dn: List[int] = field(default_factory=list)
    upper_rests: List[Tuple[Fraction, Fraction]] = field(default_factory=list)
    lower_rests: List[Tuple[Fraction, Fraction]] = field(default_factory=list)

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


class Trapezoidation:
    """Immutable decomposition for one orientation; safe to query concurrently."""

    def __init__(self, domain: PolygonalDomain, c: Direction):
        self.domain = domain
        self.c = c
        self.cells: List[Trapezoid] = []
        # Support lists: for each non-c edge, the cells whose side lies on
        # it, ordered by height along the sweep.
        self.support: Dict[int, List[int]] = {}
        # For each c-parallel edge, the cells whose lower base rests on it.
        self.cells_above_edge: Dict[int, List[Tuple[Fraction, Fraction, int]]] = {}
        self._edge_t: Dict[int, Tuple[Fraction, Fraction]] = {}
        self._edge_u0: Dict[int, Fraction] = {}
        self._edge_slope: Dict[int, Fraction] = {}
        self._parallel_at: Dict[Fraction, List[Tuple[Fraction, Fraction, int]]] = {}
        self._build()
        self._index()

    # -- frame helpers ------------------------------------------------------

    def frame(self, p: Point) -> Tuple[Fraction, Fraction]:
        return height_along(self.c, p), pos_along(self.c, p)

    def unframe(self, t: Fraction, u: Fraction) -> Point:
        return point_from_frame(self.c, t, u)

    def edge_u_at(self, e: int, t: Fraction) -> Fraction:
        ta, _ = self._edge_t[e]
        return self._edge_u0[e] + self._edge_slope[e] * (t - ta)

    def cell_polygon(self, cell: Trapezoid) -> List[Point]:
        pts = [
            self.unframe(cell.t_lo, cell.u_ll),
            self.unframe(cell.t_lo, cell.u_lr),
            self.unframe(cell.t_hi, cell.u_ur),
            self.unframe(cell.t_hi, cell.u_ul),
        ]
        out: List[Point] = []
        for p in pts:
            if not out or out[-1] != p:
                out.append(p)
        if len(out) > 1 and out[0] == out[-1]:
            out.pop()
        return out

    # -- construction --------------------------------------------------------

    def _build(self) -> None:
        d, c = self.domain, self.c
        start_map: Dict[Fraction, List[int]] = {}
        end_map: Dict[Fraction, List[int]] = {}
        vert_map: Dict[Fraction, List[Fraction]] = {}

        for ring in d.rings():
            for p in ring:
                t, u = self.frame(p)
                vert_map.setdefault(t, []).append(u)

        for e in d.edges:
            ta, ua = self.frame(e.a)
            tb, ub = self.frame(e.b)
            if ta == tb:
                self._parallel_at.setdefault(ta, []).append(
                    (min(ua, ub), max(ua, ub), e.index))
                continue
            lo, hi = (ta, tb) if ta < tb else (tb, ta)
            self._edge_t[e.index] = (ta, tb)
            self._edge_u0[e.index] = ua
            self._edge_slope[e.index] = (ub - ua) / (tb - ta)
            start_map.setdefault(lo, []).append(e.index)
            end_map.setdefault(hi, []).append(e.index)

        heights = sorted(vert_map)
        act: List[int] = []
        open_cells: Dict[Tuple[int, int], Trapezoid] = {}

        for h in heights:
            ending = set(end_map.get(h, []))
            starting = start_map.get(h, [])
            par_here = self._parallel_at.get(h, [])
            coverers = sorted(
                [(u, u) for u in vert_map.get(h, [])]
                + [(u1, u2) for (u1, u2, _e) in par_here])

            n_act = len(act)

            def u_of(i: int) -> Fraction:
                return self.edge_u_at(act[i], h)

            def lower_bound_u(target: Fraction) -> int:
                lo, hi = 0, n_act
                while lo < hi:
                    mid = (lo + hi) // 2
                    if u_of(mid) < target:
                        lo = mid + 1
                    else:
                        hi = mid
                return lo

            # Edge-index candidates touched by this event; the affected
            # span of the active list is their piece-aligned hull.
            cand: List[int] = []
            for e in ending:
                ue = self.edge_u_at(e, h)
                p = lower_bound_u(ue)
                j = p
                while j < n_act and act[j] != e:
                    j += 1
                if j >= n_act:
                    j = p - 1
                    while j >= 0 and act[j] != e:
                        j -= 1
                if j < 0:
                    raise DomainError("ending edge missing from sweep status")
                cand.append(j)
            if n_act:
                for e in starting:
                    p = lower_bound_u(self.edge_u_at(e, h))
                    cand.append(max(0, p - 1))
                    cand.append(min(n_act - 1, p))
            for (clo, chi) in coverers:
                p = lower_bound_u(clo)
                i = max(0, ((p - 1) // 2) * 2)
                while i < n_act:
                    if u_of(i) > chi:
                        break
                    if u_of(i + 1) >= clo:
                        cand.append(i)
                        cand.append(i + 1)
                    i += 2

            if not cand and not starting:
                continue
            if cand:
                A = (min(cand) // 2) * 2
                B = ((max(cand) // 2) + 1) * 2
            else:
                A = B = n_act

            closed: Dict[Tuple[int, int], Tuple[Trapezoid, Fraction, Fraction]] = {}
            for i in range(A, B, 2):
                pair = (act[i], act[i + 1])
                cell = open_cells.pop(pair)
                closed[pair] = (cell, u_of(i), u_of(i + 1))

            segment_new = sorted(
                [e for e in act[A:B] if e not in ending] + list(starting),
                key=lambda e: (self.edge_u_at(e, h), self._edge_slope[e]))
            act[A:B] = segment_new
            if len(act) % 2:
                raise DomainError("trapezoidation parity broken; invalid domain?")

            fresh: List[Tuple[Trapezoid, Fraction, Fraction]] = []
            for i in range(A, A + len(segment_new), 2):
                pair = (act[i], act[i + 1])
                uL = self.edge_u_at(pair[0], h)
                uR = self.edge_u_at(pair[1], h)
                hit = _covered(coverers, uL, uR)
                if pair in closed and not hit:
                    cell, _, _ = closed.pop(pair)
                    open_cells[pair] = cell  # continues through h
                    continue
                cell = Trapezoid(len(self.cells), pair[0], pair[1],
                                 h, h, uL, uR, uL, uR)
                self.cells.append(cell)
                open_cells[pair] = cell
                fresh.append((cell, uL, uR))

            for pair, (cell, uL, uR) in closed.items():
                cell.t_hi = h
                cell.u_ul, cell.u_ur = uL, uR
                cell.upper_rests = _overlaps(
                    self._parallel_at.get(h, []), uL, uR)
                for (fcell, fL, fR) in fresh:
                    if max(uL, fL) < min(uR, fR):
                        cell.up.append(fcell.id)
                        fcell.dn.append(cell.id)
            for (fcell, fL, fR) in fresh:
                fcell.lower_rests = _overlaps(
                    self._parallel_at.get(h, []), fL, fR)
                for (u1, u2, eidx) in self._parallel_at.get(h, []):
                    if max(u1, fL) < min(u2, fR):
                        self.cells_above_edge.setdefault(eidx, []).append(
                            (max(u1, fL), min(u2, fR), fcell.id))

        if act or open_cells:
            raise DomainError("sweep did not close all cells; invalid domain?")

    def _index(self) -> None:
        for cell in self.cells:
            self.support.setdefault(cell.el, []).append(cell.id)
            self.support.setdefault(cell.er, []).append(cell.id)
        for e, ids in self.support.items():
            ids.sort(key=lambda i: self.cells[i].t_lo)
        self._slab_heights = sorted({c.t_lo for c in self.cells}
                                    | {c.t_hi for c in self.cells})
        self._slabs: List[List[int]] = [[] for _ in range(len(self._slab_heights) - 1)]
        import bisect
        for cell in self.cells:
            i0 = bisect.bisect_left(self._slab_heights, cell.t_lo)
            i1 = bisect.bisect_left(self._slab_heights, cell.t_hi)
            for i in range(i0, i1):
                self._slabs[i].append(cell.id)
        for i, ids in enumerate(self._slabs):
            tm = (self._slab_heights[i] + self._slab_heights[i + 1]) / 2
            ids.sort(key=lambda cid: self.cells[cid].u_left_at(tm))

    # -- queries -------------------------------------------------------------

    def locate(self, q: Point) -> int:
        """Id of the cell containing q; boundary ties go to the smaller id."""
        t, u = self.frame(q)
        import bisect
        hs = self._slab_heights
        if not hs or t < hs[0] or t > hs[-1]:
            raise OutsideFreeSpaceError(f"{q} outside free space")
        i = bisect.bisect_left(hs, t)
        slab_ids: List[int] = []
        if i < len(hs) and hs[i] == t:
            if i > 0:
                slab_ids.extend(self._slabs[i - 1])
            if i < len(self._slabs):
                slab_ids.extend(self._slabs[i])
        else:
            slab_ids.extend(self._slabs[i - 1])
        best: Optional[int] = None
        for cid in slab_ids:
            if self.cells[cid].contains_frame(t, u):
                if best is None or cid < best:
                    best = cid
        if best is None:
            raise OutsideFreeSpaceError(f"{q} outside free space")
        return best

    def pot_of(self, t0: Fraction, u_lo: Fraction, u_hi: Fraction) -> int:
        """Cell whose lower base or interior contains the segment at height t0.

        Used to plant clipped parallelograms: when the segment lies on a
        shared boundary the cell above (lower base at t0) wins; at a shared
        vertex of two stacked cells the upper one is chosen.
        """
        um = (u_lo + u_hi) / 2
        import bisect
        hs = self._slab_heights
        i = bisect.bisect_left(hs, t0)
        candidates: List[int] = []
        if i < len(hs) and hs[i] == t0:
            if i < len(self._slabs):
                candidates.extend(self._slabs[i])
            if i > 0:
                candidates.extend(self._slabs[i - 1])
        else:
            candidates.extend(self._slabs[i - 1])
        # Prefer a cell whose lower base carries the segment.
        for cid in candidates:
            cell = self.cells[cid]
            if cell.t_lo == t0 and cell.u_ll <= u_lo and u_hi <= cell.u_lr:
                return cid
        for cid in candidates:
            cell = self.cells[cid]
            if cell.contains_frame(t0, um) and cell.t_lo <= t0 <= cell.t_hi:
                if cell.t_lo < t0 or cell.t_lo == cell.t_hi:
                    return cid
        for cid in candidates:
            if self.cells[cid].contains_frame(t0, um):
                return cid
        raise DomainError(f"no pot found at t={t0}, u=[{u_lo},{u_hi}]")

    def free_area2(self) -> Fraction:
        from .geom import polygon_area2
        total = Fraction(0)
        for cell in self.cells:
            total += polygon_area2(self.cell_polygon(cell))
        # areas computed in (x, y); frame scaling already undone by unframe
        return total


def _covered(coverers: Sequence[Tuple[Fraction, Fraction]],
             uL: Fraction, uR: Fraction) -> bool:
    import bisect
    if not coverers:
        return False
    i = bisect.bisect_left(coverers, (uL, uL)) - 1
    i = max(0, i)
    for j in range(i, len(coverers)):
        lo, hi = coverers[j]
        if lo > uR:
            break
        if hi >= uL:
            return True
    return False


def _overlaps(par_edges: Sequence[Tuple[Fraction, Fraction, int]],
              uL: Fraction, uR: Fraction) -> List[Tuple[Fraction, Fraction]]:
    out = []
    for (u1, u2, _e) in par_edges:
        lo, hi = max(u1, uL), min(u2, uR)
        if lo < hi:
            out.append((lo, hi))
    return out


def build_trapezoidation(domain: PolygonalDomain, c: Direction) -> Trapezoidation:
    return Trapezoidation(domain, c)


def dump_trapezoidation(t: Trapezoidation) -> dict:
    """Debug dump: cell polygons in domain-file coordinates."""
    from .domain import _encode_point
    return {
        "kind": "trapezoidation",
        "orientation": [t.c.dx, t.c.dy],
        "cells": [
            {
                "id": cell.id,
                "polygon": [_encode_point(p) for p in t.cell_polygon(cell)],
            }
            for cell in t.cells
        ],
    }
