"""
Realization of itineraries as chords with exact slot positions

Passages through a glued side are ordered by comparing where the strands go
next on either side of it, which puts every pair of realized paths in minimal
position. Positions are exact fractions, so the result is reproducible.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import Dict, List, Sequence, Tuple

from app.core.errors import PathError
from app.core.surface.complex import PolygonComplex, Side, format_side
from app.core.surface.paths import CurvePath, Path, Visit, check_path, visits

logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class Chord:
    """Straight chord inside one polygon; positions are theta = side + t"""
    curve: str
    index: int
    polygon: str
    start: Fraction
    end: Fraction


def ccw_between(x: Fraction, a: Fraction, b: Fraction, n: int) -> bool:
    """x lies strictly inside the counter-clockwise boundary interval from a to b"""
    dx = (x - a) % n
    db = (b - a) % n
    return 0 < dx < db


def chords_cross(first: Chord, second: Chord, n: int) -> bool:
    if first.polygon != second.polygon:
        return False
    ends = {first.start, first.end}
    if second.start in ends or second.end in ends:
        return False
    inside = ccw_between(second.start, first.start, first.end, n)
    return inside != ccw_between(second.end, first.start, first.end, n)


@dataclass
class _Strand:
    path: int
    visits: List[Visit]
    closed: bool


class Realizer:
    """Assigns passage positions for a family of paths realized together"""

    def __init__(self, complex_: PolygonComplex, paths: Sequence[Path], pinned: bool = False):
        self.complex = complex_
        self.paths = list(paths)
        for path in self.paths:
            check_path(path, complex_, pinned=pinned)
        self.strands = [
            _Strand(i, visits(p, complex_), p.closed)
            for i, p in enumerate(self.paths)
        ]
        longest = max((len(s.visits) for s in self.strands), default=0)
        self.bound = 2 * longest + 2
        self.positions: Dict[Tuple[int, int], Fraction] = {}
        self._assign()

    def _offset(self, visit: Visit, forward: bool, last: bool) -> Fraction:
        n = self.complex.sides(visit.polygon)
        if forward:
            step = (visit.exit - visit.entry) % n
            tail = visit.exit_position if last else HALF
        else:
            step = (visit.entry - visit.exit) % n
            tail = visit.entry_position if last else HALF
        return step + tail

    def _ray(self, strand: _Strand, k: int, forward: bool) -> List[Fraction]:
        """Offsets seen walking away from the passage at exit k"""
        seq: List[Fraction] = []
        count = len(strand.visits)
        if forward:
            index = k + 1
            for _ in range(self.bound):
                if index >= count:
                    if not strand.closed:
                        break
                    index %= count
                last = not strand.closed and index == count - 1
                seq.append(self._offset(strand.visits[index], True, last))
                if last:
                    break
                index += 1
        else:
            index = k
            for _ in range(self.bound):
                if index < 0:
                    if not strand.closed:
                        break
                    index %= count
                last = not strand.closed and index == 0
                seq.append(self._offset(strand.visits[index], False, last))
                if last:
                    break
                index -= 1
        return seq

    def _assign(self) -> None:
        passages: Dict[Side, List[Tuple[int, int, Side]]] = {}
        for strand in self.strands:
            path = self.paths[strand.path]
            for k, exit_side in enumerate(path.exits):
                canonical = self.complex.canonical(exit_side)
                passages.setdefault(canonical, []).append((strand.path, k, exit_side))

        for canonical, items in passages.items():
            rays = {}
            for path_index, k, exit_side in items:
                strand = self.strands[path_index]
                p_to_q = exit_side == canonical
                forward = self._ray(strand, k, p_to_q)
                backward = self._ray(strand, k, not p_to_q)
                rays[(path_index, k)] = (forward, backward, p_to_q)

            def compare(first, second):
                f1, b1, dir1 = rays[(first[0], first[1])]
                f2, b2, dir2 = rays[(second[0], second[1])]
                if f1 != f2:
                    return -1 if f1 < f2 else 1
                if b1 != b2:
                    return -1 if b1 > b2 else 1
                if first[0] < second[0]:
                    return -1 if dir1 else 1
                if first[0] > second[0]:
                    return 1 if dir2 else -1
                return -1 if first[1] < second[1] else 1

            ordered = sorted(items, key=cmp_to_key(compare))
            total = len(ordered)
            for rank, (path_index, k, exit_side) in enumerate(ordered):
                t = Fraction(rank + 1, total + 1)
                self.positions[(path_index, k)] = t if exit_side == canonical else 1 - t
            logger.debug(f"Side {format_side(canonical)}: {total} passages ordered")

    def chords(self, path_index: int) -> List[Chord]:
        path = self.paths[path_index]
        strand = self.strands[path_index]
        result = []
        count = len(strand.visits)
        for k, visit in enumerate(strand.visits):
            if visit.entry_position is not None:
                entry = visit.entry_position
            else:
                entry = 1 - self.positions[(path_index, (k - 1) % count)]
            if visit.exit_position is not None:
                exit_pos = visit.exit_position
            else:
                exit_pos = self.positions[(path_index, k)]
            result.append(Chord(path.name, k, visit.polygon, visit.entry + entry, visit.exit + exit_pos))
        return result

    def all_chords(self) -> List[List[Chord]]:
        return [self.chords(i) for i in range(len(self.paths))]


def realize(complex_: PolygonComplex, paths: Sequence[Path], pinned: bool = False) -> List[List[Chord]]:
    """
    Realize paths jointly

    Args:
        complex_: Ambient complex
        paths: Arcs and closed curves
        pinned: Allow arc endpoints on glued sides

    Returns:
        Chord list per path, in traversal order
    """
    return Realizer(complex_, paths, pinned=pinned).all_chords()


def chords_from_slots(
    complex_: PolygonComplex,
    name: str,
    steps: Sequence[Tuple[Side, int]],
) -> List[Chord]:
    """
    Chords of a closed curve whose passages carry explicit slot indices

    Args:
        complex_: Ambient complex with declared slot counts
        name: Curve name
        steps: (exit side, slot) pairs in cyclic order

    Returns:
        Chords in traversal order
    """
    curve = CurvePath(name, tuple(side for side, _ in steps))
    check_path(curve, complex_)
    positions = []
    for side, slot in steps:
        count = complex_.slot_count(side)
        if not 1 <= slot <= count:
            raise PathError(f"{name}: slot {slot} out of range on side {format_side(side)} ({count} slots)")
        positions.append(Fraction(slot, count + 1))
    chords = []
    for k, (side, _) in enumerate(steps):
        previous = complex_.partner(steps[k - 1][0])
        entry = 1 - positions[k - 1]
        chords.append(Chord(name, k, side[0], previous[1] + entry, side[1] + positions[k]))
    return chords


def crossing_count(first: Sequence[Chord], second: Sequence[Chord], complex_: PolygonComplex) -> int:
    total = 0
    for a in first:
        n = complex_.sides(a.polygon)
        total += sum(1 for b in second if chords_cross(a, b, n))
    return total


def self_crossings(chords: Sequence[Chord], complex_: PolygonComplex) -> int:
    total = 0
    for i, a in enumerate(chords):
        n = complex_.sides(a.polygon)
        total += sum(1 for b in chords[i + 1:] if chords_cross(a, b, n))
    return total


def validate_simple(path: Path, others: Sequence[Path], complex_: PolygonComplex, pinned: bool = False) -> Dict:
    """
    Self crossings of a path and its crossing counts with other paths

    Returns:
        Report with self_crossings, per-path crossing counts and the
        polygons where crossings happen
    """
    realized = realize(complex_, [path] + list(others), pinned=pinned)
    own = realized[0]
    report = {
        "path": path.name,
        "simple": self_crossings(own, complex_) == 0,
        "self_crossings": self_crossings(own, complex_),
        "crossings": {},
        "positions": {},
    }
    for other, chords in zip(others, realized[1:]):
        report["crossings"][other.name] = crossing_count(own, chords, complex_)
        report["positions"][other.name] = sorted(
            a.polygon for a in own for b in chords
            if chords_cross(a, b, complex_.sides(a.polygon))
        )
    return report
