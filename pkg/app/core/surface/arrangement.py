"""
Arrangements of chord systems and their complementary regions

Every polygon is cut by its chords into faces. Faces are traced from the
rotation system of the planar graph formed by polygon boundaries, chord
pieces and crossings, then merged across glued sides into regions.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

import networkx as nx
import pandas as pd

from app.core.errors import InternalInvariantError, PathError, TripleCrossing
from app.core.surface.complex import PolygonComplex, Side, format_side
from app.core.surface.realize import Chord, ccw_between, chords_cross

logger = logging.getLogger(__name__)

ALPHA = "alpha"
BETA = "beta"


@dataclass(frozen=True)
class CurveChords:
    name: str
    family: str
    chords: Tuple[Chord, ...]
    closed: bool = True


@dataclass(frozen=True)
class Crossing:
    id: int
    polygon: str
    alpha: str
    beta: str
    alpha_index: int
    beta_index: int
    sign: int


@dataclass(frozen=True)
class RegionCorner:
    crossing: int
    quadrant: str
    kind: str


@dataclass
class Face:
    id: int
    polygon: str
    darts: List[int]
    corners: List[RegionCorner] = field(default_factory=list)
    boundary: List[Side] = field(default_factory=list)


@dataclass(frozen=True)
class Region:
    id: int
    faces: Tuple[int, ...]
    chi: int
    corners: Tuple[RegionCorner, ...]
    boundary_sides: Tuple[Side, ...]
    pieces: Tuple[str, ...]

    @property
    def boundary_adjacent(self) -> bool:
        return bool(self.boundary_sides)

    def corner_count(self, crossing: int, kind: str) -> int:
        return sum(1 for c in self.corners if c.crossing == crossing and c.kind == kind)


def euler_measure(region: Region) -> Fraction:
    """chi minus a quarter per corner"""
    return Fraction(region.chi) - Fraction(len(region.corners), 4)


@dataclass(frozen=True)
class _Dart:
    tail: tuple
    head: tuple
    kind: str
    curve: int = -1
    toward_end: bool = True
    side: Optional[Side] = None
    span: Optional[Tuple[Fraction, Fraction]] = None


class Arrangement:
    """Crossings, faces and regions of a family of chord systems on a complex"""

    def __init__(self, complex_: PolygonComplex, curves: Sequence[CurveChords]):
        self.complex = complex_
        self.curves = list(curves)
        self.crossings: List[Crossing] = []
        self.faces: List[Face] = []
        self.regions: List[Region] = []
        self._darts: List[_Dart] = []
        self._out: Dict[tuple, List[int]] = {}
        self._reverse: Dict[int, int] = {}
        self._face_of: Dict[int, Tuple[int, int]] = {}
        self._segment_twin: Dict[int, int] = {}
        self._quadrant_face: Dict[Tuple[int, str], int] = {}
        self._quadrant_region: Dict[Tuple[int, str], int] = {}
        self._ray_letter: Dict[int, str] = {}
        self._build()

    # ---- construction ---------------------------------------------------

    def _build(self) -> None:
        by_polygon: Dict[str, List[Tuple[int, Chord]]] = {}
        for index, curve in enumerate(self.curves):
            for chord in curve.chords:
                by_polygon.setdefault(chord.polygon, []).append((index, chord))

        self._find_crossings(by_polygon)
        for name in self.complex.polygon_names:
            self._build_polygon(name, by_polygon.get(name, []))
        self._trace_faces()
        self._merge_regions()
        self._check_euler()

    def _find_crossings(self, by_polygon: Dict[str, List[Tuple[int, Chord]]]) -> None:
        found = []
        for name in self.complex.polygon_names:
            items = by_polygon.get(name, [])
            n = self.complex.sides(name)
            seen_points: Dict[Fraction, str] = {}
            for index, chord in items:
                for point in (chord.start, chord.end):
                    if point in seen_points:
                        raise PathError(
                            f"{self.curves[index].name} and {seen_points[point]} share a slot in {name}"
                        )
                    seen_points[point] = self.curves[index].name
            for i, (ci, a) in enumerate(items):
                for cj, b in items[i + 1:]:
                    if not chords_cross(a, b, n):
                        continue
                    first, second = self.curves[ci], self.curves[cj]
                    if ci == cj:
                        raise PathError(f"{first.name} crosses itself in {name}")
                    if first.family == second.family:
                        raise PathError(f"{first.name} and {second.name} intersect in {name}")
                    if first.family == ALPHA:
                        found.append((name, ci, a, cj, b))
                    else:
                        found.append((name, cj, b, ci, a))

        order = {name: k for k, name in enumerate(self.complex.polygon_names)}
        found.sort(key=lambda f: (order[f[0]], f[1], f[2].index, f[3], f[4].index))
        self._crossing_chords: Dict[int, Tuple[Tuple[int, Chord], Tuple[int, Chord]]] = {}
        for cid, (name, ai, a, bi, b) in enumerate(found):
            n = self.complex.sides(name)
            sign = 1 if ccw_between(b.start, a.start, a.end, n) else -1
            self.crossings.append(
                Crossing(cid, name, self.curves[ai].name, self.curves[bi].name, a.index, b.index, sign)
            )
            self._crossing_chords[cid] = ((ai, a), (bi, b))
        logger.debug(f"Arrangement: {len(self.crossings)} crossings")

    def _add_dart(self, dart: _Dart) -> int:
        self._darts.append(dart)
        return len(self._darts) - 1

    def _build_polygon(self, name: str, items: List[Tuple[int, Chord]]) -> None:
        n = self.complex.sides(name)
        chord_at: Dict[Fraction, Tuple[int, Chord]] = {}
        for index, chord in items:
            chord_at[chord.start] = (index, chord)
            chord_at[chord.end] = (index, chord)
        points = sorted(set(Fraction(k) for k in range(n)) | set(chord_at))

        fwd, back = {}, {}
        for i, point in enumerate(points):
            nxt = points[(i + 1) % len(points)]
            side_index = int(point)
            t1 = point - side_index
            t2 = (nxt if nxt != 0 else Fraction(n)) - side_index
            tail, head = ("b", name, point), ("b", name, nxt)
            fwd[point] = self._add_dart(_Dart(tail, head, "fwd", side=(name, side_index), span=(t1, t2)))
            back[nxt] = self._add_dart(_Dart(head, tail, "back"))
            self._reverse[fwd[point]] = back[nxt]
            self._reverse[back[nxt]] = fwd[point]

        # chord pieces, crossings ordered along each chord
        chord_out: Dict[tuple, Dict[str, int]] = {}
        crossing_rays: Dict[int, List[Tuple[Fraction, int, str]]] = {}
        for index, chord in items:
            crossings_here = []
            for cid, ((ai, a), (bi, b)) in self._crossing_chords.items():
                if a == chord and ai == index:
                    crossings_here.append((cid, b))
                elif b == chord and bi == index:
                    crossings_here.append((cid, a))
            keyed = []
            for cid, other in crossings_here:
                right = other.start if ccw_between(other.start, chord.start, chord.end, n) else other.end
                keyed.append(((right - chord.start) % n, cid, other))
            keyed.sort(key=lambda item: item[0])
            for x in range(len(keyed)):
                for y in range(x + 1, len(keyed)):
                    if chords_cross(keyed[x][2], keyed[y][2], n):
                        raise TripleCrossing(f"three pairwise crossing chords in {name}")

            nodes = [("b", name, chord.start)] + [("x", cid) for _, cid, _ in keyed] + [("b", name, chord.end)]
            family = self.curves[index].family
            for k in range(len(nodes) - 1):
                u, v = nodes[k], nodes[k + 1]
                d_fwd = self._add_dart(_Dart(u, v, "chord", curve=index, toward_end=True))
                d_back = self._add_dart(_Dart(v, u, "chord", curve=index, toward_end=False))
                self._reverse[d_fwd] = d_back
                self._reverse[d_back] = d_fwd
                if u[0] == "b":
                    chord_out[u] = {"chord": d_fwd}
                else:
                    letter = "E" if family == ALPHA else "N"
                    crossing_rays.setdefault(u[1], []).append((chord.end, d_fwd, letter))
                if v[0] == "b":
                    chord_out[v] = {"chord": d_back}
                else:
                    letter = "W" if family == ALPHA else "S"
                    crossing_rays.setdefault(v[1], []).append((chord.start, d_back, letter))

        for point in points:
            node = ("b", name, point)
            rotation = [fwd[point]]
            if node in chord_out:
                rotation.append(chord_out[node]["chord"])
            rotation.append(back[point])
            self._out[node] = rotation
        for cid, rays in crossing_rays.items():
            if len(rays) != 4:
                raise InternalInvariantError(f"crossing {cid} has {len(rays)} rays")
            rays.sort(key=lambda r: r[0])
            self._out[("x", cid)] = [r[1] for r in rays]
            for _, dart, letter in rays:
                self._ray_letter[dart] = letter

    def _trace_faces(self) -> None:
        position_in_out: Dict[int, int] = {}
        for node, darts in self._out.items():
            for k, dart in enumerate(darts):
                position_in_out[dart] = k

        visited: Set[int] = set()
        for start, dart in enumerate(self._darts):
            if start in visited or dart.kind == "back":
                continue
            cycle = []
            current = start
            while current not in visited:
                visited.add(current)
                cycle.append(current)
                reverse = self._reverse[current]
                rotation = self._out[self._darts[current].head]
                current = rotation[(position_in_out[reverse] - 1) % len(rotation)]
            if current != start:
                raise InternalInvariantError("face tracing left an open walk")
            face = Face(len(self.faces), self._darts[start].tail[1] if self._darts[start].tail[0] == "b"
                        else self._polygon_of_crossing(self._darts[start].tail[1]), cycle)
            for j, d in enumerate(cycle):
                self._face_of[d] = (face.id, j)
                info = self._darts[d]
                if info.kind == "fwd" and self.complex.is_boundary(info.side):
                    if info.side not in face.boundary:
                        face.boundary.append(info.side)
                nxt = cycle[(j + 1) % len(cycle)]
                if info.head[0] == "x":
                    cid = info.head[1]
                    leaving = self._ray_letter[nxt]
                    arriving = self._ray_letter[self._reverse[d]]
                    kind = "A" if self.curves[self._darts[nxt].curve].family == ALPHA else "B"
                    quadrant = _quadrant_name(leaving, arriving)
                    face.corners.append(RegionCorner(cid, quadrant, kind))
                    self._quadrant_face[(cid, quadrant)] = face.id
            self.faces.append(face)
        logger.debug(f"Arrangement: {len(self.faces)} faces")

    def _polygon_of_crossing(self, cid: int) -> str:
        return self.crossings[cid].polygon

    def _merge_regions(self) -> None:
        segments: Dict[Tuple[str, int, Fraction, Fraction], int] = {}
        for index, dart in enumerate(self._darts):
            if dart.kind == "fwd":
                segments[(dart.side[0], dart.side[1], dart.span[0], dart.span[1])] = index

        graph = nx.Graph()
        graph.add_nodes_from(range(len(self.faces)))
        for (name, side_index, t1, t2), index in segments.items():
            other = self.complex.partner((name, side_index))
            if other is None:
                continue
            key = (other[0], other[1], 1 - t2, 1 - t1)
            if key not in segments:
                raise PathError(
                    f"slots on {format_side((name, side_index))} do not match "
                    f"its partner {format_side(other)}"
                )
            twin = segments[key]
            self._segment_twin[index] = twin
            graph.add_edge(self._face_of[index][0], self._face_of[twin][0])

        components = sorted((sorted(c) for c in nx.connected_components(graph)), key=lambda c: c[0])
        face_region = {}
        for rid, members in enumerate(components):
            for f in members:
                face_region[f] = rid
        for rid, members in enumerate(components):
            corners = tuple(c for f in members for c in self.faces[f].corners)
            boundary = []
            for f in members:
                for side in self.faces[f].boundary:
                    if side not in boundary:
                        boundary.append(side)
            pieces = tuple(sorted({self.faces[f].polygon for f in members},
                                  key=self.complex.polygon_names.index))
            chi = self.union_euler(members, glue_chords=False)
            self.regions.append(Region(rid, tuple(members), chi, corners, tuple(boundary), pieces))
        for (cid, quadrant), f in self._quadrant_face.items():
            self._quadrant_region[(cid, quadrant)] = face_region[f]
        logger.debug(f"Arrangement: {len(self.regions)} regions")

    def _check_euler(self) -> None:
        arcs = sum(1 for c in self.curves if not c.closed)
        expected = self.complex.census().chi + len(self.crossings) + arcs
        total = sum(r.chi for r in self.regions)
        if total != expected:
            raise InternalInvariantError(
                f"Euler relation fails: regions sum to {total}, expected {expected}"
            )

    # ---- queries ----------------------------------------------------------

    def union_euler(self, faces: Iterable[int], glue_chords: bool = True) -> int:
        """
        Euler characteristic of the closure of a union of faces

        Faces are identified along glued polygon sides and, when requested,
        along chord pieces with both sides in the union.
        """
        members = set(faces)
        parent: Dict[Tuple[int, int], Tuple[int, int]] = {}

        def find(x):
            while parent.setdefault(x, x) != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[rx] = ry

        edges = 0
        counted: Set[int] = set()
        for f in members:
            cycle = self.faces[f].darts
            size = len(cycle)
            for j in range(size):
                find((f, j))
            for j, d in enumerate(cycle):
                if d in counted:
                    continue
                twin = self._segment_twin.get(d)
                if twin is None and glue_chords and self._darts[d].kind == "chord":
                    twin = self._reverse[d]
                if twin is not None and self._face_of[twin][0] in members:
                    g, k = self._face_of[twin]
                    other_size = len(self.faces[g].darts)
                    union((f, j), (g, (k + 1) % other_size))
                    union((f, (j + 1) % size), (g, k))
                    counted.add(twin)
                counted.add(d)
                edges += 1
        vertices = len({find(x) for x in list(parent)})
        return vertices - edges + len(members)

    def region_boundary(self, region: Region) -> List[List[Tuple[str, object]]]:
        """
        Boundary cycles of a region's closure

        Returns:
            Cycles of ("chord", curve name) and ("side", side) entries; glued
            sides interior to the region are skipped
        """
        members = set(region.faces)
        seen: Set[Tuple[int, int]] = set()
        cycles = []
        for f in region.faces:
            for j in range(len(self.faces[f].darts)):
                if (f, j) in seen or self._is_internal(f, j, members):
                    continue
                cycle = []
                current = (f, j)
                while current not in seen:
                    seen.add(current)
                    dart = self._darts[self.faces[current[0]].darts[current[1]]]
                    if dart.kind == "chord":
                        cycle.append(("chord", self.curves[dart.curve].name))
                    else:
                        cycle.append(("side", dart.side))
                    current = self._next_on_boundary(current, members)
                cycles.append(cycle)
        return cycles

    def _is_internal(self, f: int, j: int, members: Set[int]) -> bool:
        twin = self._segment_twin.get(self.faces[f].darts[j])
        return twin is not None and self._face_of[twin][0] in members

    def _next_on_boundary(self, current: Tuple[int, int], members: Set[int]) -> Tuple[int, int]:
        f, j = current
        for _ in range(len(self._darts) + 1):
            j = (j + 1) % len(self.faces[f].darts)
            if not self._is_internal(f, j, members):
                return (f, j)
            f, j = self._face_of[self._segment_twin[self.faces[f].darts[j]]]
        raise InternalInvariantError("region boundary walk does not close")

    def region_at(self, crossing: int, quadrant: str) -> int:
        return self._quadrant_region[(crossing, quadrant)]

    def quadrants(self, crossing: int) -> Dict[str, Tuple[int, str]]:
        """Quadrant name -> (region id, corner kind)"""
        result = {}
        for quadrant in ("NE", "NW", "SW", "SE"):
            if (crossing, quadrant) in self._quadrant_region:
                face = self.faces[self._quadrant_face[(crossing, quadrant)]]
                kind = next(c.kind for c in face.corners if c.crossing == crossing and c.quadrant == quadrant)
                result[quadrant] = (self._quadrant_region[(crossing, quadrant)], kind)
        return result

    def crossings_on(self, curve: str) -> List[Crossing]:
        return [c for c in self.crossings if c.alpha == curve or c.beta == curve]

    def region_table(self) -> pd.DataFrame:
        rows = []
        for region in self.regions:
            rows.append({
                "region": region.id,
                "chi": region.chi,
                "corners": len(region.corners),
                "euler": str(euler_measure(region)),
                "boundary": region.boundary_adjacent,
                "pieces": " ".join(region.pieces),
            })
        return pd.DataFrame(rows, columns=["region", "chi", "corners", "euler", "boundary", "pieces"])


def _quadrant_name(first: str, second: str) -> str:
    letters = {first, second}
    vertical = "N" if "N" in letters else "S"
    horizontal = "E" if "E" in letters else "W"
    return vertical + horizontal


def arrangement(complex_: PolygonComplex, curves: Sequence[CurveChords]) -> Arrangement:
    """Crossings, faces and regions with the Euler relation verified"""
    return Arrangement(complex_, curves)
