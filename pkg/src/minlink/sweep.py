"""Sweep-status and event-queue machinery shared by the map builders.

The status is an ordered set of disjoint open intervals, each tagged with
the id of the parallelogram (or trapezoid) that emitted it.  For sweeps
whose source parallelograms are not perpendicular to the sweep direction,
every stored interval would drift sideways as the sweepline rises; instead
the status keeps intervals in a sheared coordinate (u - slope * height) so
stored values never move, and callers always pass physical intervals at
the current height.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, List, Optional, Sequence, Tuple


@dataclass(frozen=True)
class StatusInterval:
    lo: Fraction
    hi: Fraction
    source: Any

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"empty status interval [{self.lo},{self.hi}]")


class SweepStatus:
    """Disjoint open intervals with insert/clip/overlap in the sheared frame."""

    def __init__(self, shear_slope: Fraction = Fraction(0)):
        self.slope = Fraction(shear_slope)
        self.height = Fraction(0)
        self._offset = Fraction(0)
        # list of (lo, hi, source) in sheared coordinates, sorted by lo
        self._ivs: List[Tuple[Fraction, Fraction, Any]] = []

    # -- frame ---------------------------------------------------------------

    def shift_frame(self, new_height: Fraction) -> None:
        """Move the sweepline; stored intervals never change."""
        self.height = Fraction(new_height)
        self._offset = self.slope * self.height

    def _shear(self, lo: Fraction, hi: Fraction) -> Tuple[Fraction, Fraction]:
        return lo - self._offset, hi - self._offset

    def _unshear(self, lo: Fraction, hi: Fraction) -> Tuple[Fraction, Fraction]:
        return lo + self._offset, hi + self._offset

    # -- operations -----------------------------------------------------------

    def insert(self, lo: Fraction, hi: Fraction, source: Any) -> None:
        """Insert a physical interval; overlapped parts of old intervals go."""
        if not lo < hi:
            return
        slo, shi = self._shear(lo, hi)
        self._remove_range(slo, shi)
        self._ivs.insert(self._find(slo), (slo, shi, source))

    def clip(self, lo: Fraction, hi: Fraction) -> List[StatusInterval]:
        """Remove the physical range [lo, hi] from every stored interval.

        Returns the clipped-away pieces (physical coordinates).
        """
        if not lo < hi:
            return []
        slo, shi = self._shear(lo, hi)
        removed = self._remove_range(slo, shi)
        out = []
        for (rlo, rhi, src) in removed:
            plo, phi = self._unshear(rlo, rhi)
            out.append(StatusInterval(plo, phi, src))
        return out

    def remove_source(self, source: Any) -> None:
        """Drop every fragment owned by the given source."""
        self._ivs = [iv for iv in self._ivs if iv[2] != source]

    def overlap(self, lo: Fraction, hi: Fraction) -> List[StatusInterval]:
        """Stored intervals whose open intersection with [lo, hi] is nonempty."""
        if not lo < hi:
            return []
        slo, shi = self._shear(lo, hi)
        out = []
        i = max(0, self._find(slo) - 1)
        while i < len(self._ivs):
            ilo, ihi, src = self._ivs[i]
            if ilo >= shi:
                break
            if ihi > slo:
                plo, phi = self._unshear(ilo, ihi)
                out.append(StatusInterval(plo, phi, src))
            i += 1
        return out

    def intervals(self) -> List[StatusInterval]:
        return [StatusInterval(*self._unshear(lo, hi), src)
                for (lo, hi, src) in self._ivs]

    # -- internals -------------------------------------------------------------

    def _find(self, slo: Fraction) -> int:
        lo, hi = 0, len(self._ivs)
        while lo < hi:
            mid = (lo + hi) // 2
            if self._ivs[mid][0] < slo:
                lo = mid + 1
            else:
                hi = mid
        return lo

    def _remove_range(self, slo: Fraction, shi: Fraction
                      ) -> List[Tuple[Fraction, Fraction, Any]]:
        """Erase the open range (slo, shi) from stored intervals."""
        removed: List[Tuple[Fraction, Fraction, Any]] = []
        keep_before: List[Tuple[Fraction, Fraction, Any]] = []
        keep_after: List[Tuple[Fraction, Fraction, Any]] = []
        i = max(0, self._find(slo) - 1)
        j = i
        while j < len(self._ivs):
            ilo, ihi, src = self._ivs[j]
            if ilo >= shi:
                break
            if ihi <= slo:
                i = j + 1
                j += 1
                continue
            cut_lo, cut_hi = max(ilo, slo), min(ihi, shi)
            if cut_lo < cut_hi:
                removed.append((cut_lo, cut_hi, src))
            if ilo < cut_lo:
                keep_before.append((ilo, cut_lo, src))
            if cut_hi < ihi:
                keep_after.append((cut_hi, ihi, src))
            j += 1
        if removed or keep_before or keep_after:
            self._ivs[i:j] = keep_before + keep_after
        return removed


class NaiveSweepStatus:
    """Reference implementation: physically shifts stored intervals.

    Semantically identical to SweepStatus; used as the equivalence oracle.
    """

    def __init__(self, shear_slope: Fraction = Fraction(0)):
        self.slope = Fraction(shear_slope)
        self.height = Fraction(0)
        self._ivs: List[Tuple[Fraction, Fraction, Any]] = []

    def shift_frame(self, new_height: Fraction) -> None:
        delta = (Fraction(new_height) - self.height) * self.slope
        self.height = Fraction(new_height)
        self._ivs = [(lo + delta, hi + delta, src) for (lo, hi, src) in self._ivs]

    def insert(self, lo: Fraction, hi: Fraction, source: Any) -> None:
        if not lo < hi:
            return
        out = []
        for (ilo, ihi, src) in self._ivs:
            if ihi <= lo or ilo >= hi:
                out.append((ilo, ihi, src))
                continue
            if ilo < lo:
                out.append((ilo, lo, src))
            if hi < ihi:
                out.append((hi, ihi, src))
        out.append((lo, hi, source))
        out.sort(key=lambda iv: iv[0])
        self._ivs = out

    def clip(self, lo: Fraction, hi: Fraction) -> List[StatusInterval]:
        if not lo < hi:
            return []
        keep, removed = [], []
        for (ilo, ihi, src) in self._ivs:
            if ihi <= lo or ilo >= hi:
                keep.append((ilo, ihi, src))
                continue
            cut_lo, cut_hi = max(ilo, lo), min(ihi, hi)
            removed.append(StatusInterval(cut_lo, cut_hi, src))
            if ilo < cut_lo:
                keep.append((ilo, cut_lo, src))
            if cut_hi < ihi:
                keep.append((cut_hi, ihi, src))
        self._ivs = keep
        return removed

    def remove_source(self, source: Any) -> None:
        self._ivs = [iv for iv in self._ivs if iv[2] != source]

    def overlap(self, lo: Fraction, hi: Fraction) -> List[StatusInterval]:
        if not lo < hi:
            return []
        return [StatusInterval(ilo, ihi, src) for (ilo, ihi, src) in self._ivs
                if ilo < hi and lo < ihi]

    def intervals(self) -> List[StatusInterval]:
        return [StatusInterval(lo, hi, src) for (lo, hi, src) in self._ivs]


# Event classes, ordered: parallelogram events take priority over trapezoid
# events at equal height, and removals (upper sides) precede insertions.
EVENT_PAR_UPPER = 0
EVENT_PAR_LOWER = 1
EVENT_TRAP = 2


class EventQueue:
    """Priority queue keyed by (height, event class, id) — deterministic."""

    def __init__(self):
        self._heap: List[Tuple[Fraction, int, int, Any]] = []

    def push(self, height: Fraction, cls: int, ident: int, payload: Any = None) -> None:
        heapq.heappush(self._heap, (height, cls, ident, payload))

    def pop(self) -> Tuple[Fraction, int, int, Any]:
        return heapq.heappop(self._heap)

    def __len__(self) -> int:
        return len(self._heap)

    def __bool__(self) -> bool:
        return bool(self._heap)
