"""
Oriented surfaces glued from convex polygons

A polygon with n sides lists its sides counter-clockwise; side k runs from
corner k to corner k+1 and is parametrized by t in [0, 1]. Gluing two sides
always reverses orientation: t on one side is identified with 1 - t on the
other, so corner i of p meets corner j+1 of q and corner i+1 of p meets
corner j of q.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from app.core.errors import ComplexError

logger = logging.getLogger(__name__)

Side = Tuple[str, int]
Corner = Tuple[str, int]


class PolygonLabel(str, Enum):
    """Partial open book labels"""
    PLUS = "plus"
    HANDLE = "handle"


@dataclass(frozen=True)
class Polygon:
    name: str
    sides: int
    label: Optional[PolygonLabel] = None


@dataclass(frozen=True)
class ComponentCensus:
    polygons: Tuple[str, ...]
    chi: int
    genus: int
    boundary_components: int


@dataclass(frozen=True)
class Census:
    vertices: int
    edges: int
    faces: int
    chi: int
    components: Tuple[ComponentCensus, ...] = field(default_factory=tuple)

    @property
    def genus(self) -> int:
        return sum(c.genus for c in self.components)

    @property
    def boundary_components(self) -> int:
        return sum(c.boundary_components for c in self.components)


class PolygonComplex:
    """Immutable polygon complex with side pairings and declared slot counts"""

    def __init__(
        self,
        polygons: Sequence[Polygon],
        pairs: Dict[Side, Side],
        slots: Optional[Dict[Side, int]] = None,
    ):
        self._polygons: Dict[str, Polygon] = {p.name: p for p in polygons}
        self._order: List[str] = [p.name for p in polygons]
        self._pairs = dict(pairs)
        self._slots = dict(slots or {})
        self._vertex_of: Optional[Dict[Corner, int]] = None

    # ---- basic access -------------------------------------------------

    @property
    def polygon_names(self) -> List[str]:
        return list(self._order)

    @property
    def polygons(self) -> List[Polygon]:
        return [self._polygons[name] for name in self._order]

    def polygon(self, name: str) -> Polygon:
        try:
            return self._polygons[name]
        except KeyError:
            raise ComplexError(f"unknown polygon {name}")

    def has_polygon(self, name: str) -> bool:
        return name in self._polygons

    def sides(self, name: str) -> int:
        return self.polygon(name).sides

    def label(self, name: str) -> Optional[PolygonLabel]:
        return self.polygon(name).label

    def all_sides(self) -> List[Side]:
        return [(name, k) for name in self._order for k in range(self.sides(name))]

    def check_side(self, side: Side) -> None:
        name, index = side
        if name not in self._polygons:
            raise ComplexError(f"side {format_side(side)} refers to unknown polygon {name}")
        if not 0 <= index < self._polygons[name].sides:
            raise ComplexError(
                f"side {format_side(side)} out of range (polygon {name} has "
                f"{self._polygons[name].sides} sides)"
            )

    def partner(self, side: Side) -> Optional[Side]:
        return self._pairs.get(side)

    def is_boundary(self, side: Side) -> bool:
        return side not in self._pairs

    def boundary_sides(self) -> List[Side]:
        return [s for s in self.all_sides() if s not in self._pairs]

    def glued_pairs(self) -> List[Tuple[Side, Side]]:
        """Each glued pair once, canonical side first"""
        seen = []
        for side in self.all_sides():
            other = self._pairs.get(side)
            if other is not None and self._key(side) < self._key(other):
                seen.append((side, other))
        return seen

    def slot_count(self, side: Side) -> int:
        return self._slots.get(side, 1)

    def declared_slots(self) -> Dict[Side, int]:
        return dict(self._slots)

    def canonical(self, side: Side) -> Side:
        """Smaller side of a glued pair (or the side itself)"""
        other = self._pairs.get(side)
        if other is None or self._key(side) < self._key(other):
            return side
        return other

    def _key(self, side: Side) -> Tuple[int, int]:
        return (self._order.index(side[0]), side[1])

    def side_key(self, side: Side) -> Tuple[int, int]:
        return self._key(side)

    # ---- vertices -----------------------------------------------------

    def _vertices(self) -> Dict[Corner, int]:
        if self._vertex_of is None:
            graph = nx.Graph()
            for name in self._order:
                for k in range(self.sides(name)):
                    graph.add_node((name, k))
            for (p, i), (q, j) in self.glued_pairs():
                n_p, n_q = self.sides(p), self.sides(q)
                graph.add_edge((p, i), (q, (j + 1) % n_q))
                graph.add_edge((p, (i + 1) % n_p), (q, j))
            classes = sorted(
                (sorted(c, key=self._key) for c in nx.connected_components(graph)),
                key=lambda c: self._key(c[0]),
            )
            self._vertex_of = {corner: idx for idx, cls in enumerate(classes) for corner in cls}
        return self._vertex_of

    def vertex_of(self, corner: Corner) -> int:
        return self._vertices()[corner]

    def vertex_count(self) -> int:
        return len(set(self._vertices().values()))

    def boundary_vertices(self) -> set:
        result = set()
        for name, k in self.boundary_sides():
            n = self.sides(name)
            result.add(self.vertex_of((name, k)))
            result.add(self.vertex_of((name, (k + 1) % n)))
        return result

    def is_ideal(self) -> bool:
        """True when every vertex lies on the boundary"""
        return self.vertex_count() == len(self.boundary_vertices())

    # ---- boundary walks -------------------------------------------------

    def next_boundary_side(self, side: Side) -> Tuple[Side, List[Side]]:
        """
        Follow the boundary forward from the end of a boundary side

        Returns:
            The next boundary side and the glued sides crossed around the
            shared vertex, in the order a path hugging the boundary crosses them
        """
        name, k = side
        crossed: List[Side] = []
        current = (name, (k + 1) % self.sides(name))
        for _ in range(len(self._pairs) + 1):
            if self.is_boundary(current):
                return current, crossed
            crossed.append(current)
            q, j = self._pairs[current]
            current = (q, (j + 1) % self.sides(q))
        raise ComplexError(f"boundary walk from {format_side(side)} does not terminate")

    def previous_boundary_side(self, side: Side) -> Tuple[Side, List[Side]]:
        """Follow the boundary backward from the start of a boundary side"""
        name, k = side
        crossed: List[Side] = []
        current = (name, (k - 1) % self.sides(name))
        for _ in range(len(self._pairs) + 1):
            if self.is_boundary(current):
                return current, crossed
            crossed.append(current)
            q, j = self._pairs[current]
            current = (q, (j - 1) % self.sides(q))
        raise ComplexError(f"boundary walk from {format_side(side)} does not terminate")

    def boundary_cycles(self) -> List[List[Side]]:
        cycles: List[List[Side]] = []
        seen = set()
        for side in self.boundary_sides():
            if side in seen:
                continue
            cycle = []
            current = side
            while current not in seen:
                seen.add(current)
                cycle.append(current)
                current, _ = self.next_boundary_side(current)
            cycles.append(cycle)
        return cycles

    # ---- census ---------------------------------------------------------

    def components(self) -> List[List[str]]:
        graph = nx.Graph()
        graph.add_nodes_from(self._order)
        for (p, _), (q, _) in self.glued_pairs():
            graph.add_edge(p, q)
        comps = [sorted(c, key=self._order.index) for c in nx.connected_components(graph)]
        return sorted(comps, key=lambda c: self._order.index(c[0]))

    def census(self) -> Census:
        vertices = self._vertices()
        pairs = self.glued_pairs()
        boundary = self.boundary_sides()
        cycles = self.boundary_cycles()
        parts = []
        for comp in self.components():
            members = set(comp)
            v = len({vertices[c] for c in vertices if c[0] in members})
            e = sum(1 for s, _ in pairs if s[0] in members) + sum(1 for s in boundary if s[0] in members)
            f = len(comp)
            chi = v - e + f
            b = sum(1 for cyc in cycles if cyc[0][0] in members)
            twice_genus = 2 - chi - b
            if twice_genus < 0 or twice_genus % 2:
                raise ComplexError(f"inconsistent census for component {comp}: chi={chi}, b={b}")
            parts.append(ComponentCensus(tuple(comp), chi, twice_genus // 2, b))
        v_total = self.vertex_count()
        e_total = len(pairs) + len(boundary)
        f_total = len(self._order)
        census = Census(v_total, e_total, f_total, v_total - e_total + f_total, tuple(parts))
        logger.debug(f"Census: V={census.vertices} E={census.edges} F={census.faces} chi={census.chi}")
        return census

    # ---- derived complexes ----------------------------------------------

    def subcomplex(self, names: Iterable[str]) -> "PolygonComplex":
        """Restriction to a set of polygons; pairings leaving the set become boundary"""
        keep = [n for n in self._order if n in set(names)]
        kept = set(keep)
        pairs = {s: t for s, t in self._pairs.items() if s[0] in kept and t[0] in kept}
        slots = {s: c for s, c in self._slots.items() if s[0] in kept}
        return PolygonComplex([self._polygons[n] for n in keep], pairs, slots)


def format_side(side: Side) -> str:
    return f"{side[0]}.{side[1]}"


def build_complex(
    polygons: Sequence[Polygon],
    gluings: Sequence[Tuple[Side, Side, bool]],
    slots: Optional[Dict[Side, int]] = None,
) -> PolygonComplex:
    """
    Validate a polygon/gluing description and build the complex

    Args:
        polygons: Polygons in declaration order
        gluings: (side, side, orientation_preserving) triples
        slots: Declared slot counts per side

    Returns:
        Validated PolygonComplex
    """
    names = set()
    for polygon in polygons:
        if polygon.name in names:
            raise ComplexError(f"duplicate polygon {polygon.name}")
        if polygon.sides < 2:
            raise ComplexError(f"polygon {polygon.name} needs at least 2 sides")
        names.add(polygon.name)

    if not polygons:
        raise ComplexError("no polygons")

    unglued = PolygonComplex(polygons, {})
    pairs: Dict[Side, Side] = {}
    for first, second, preserving in gluings:
        unglued.check_side(first)
        unglued.check_side(second)
        if first == second:
            raise ComplexError(f"side {format_side(first)} glued to itself")
        if preserving:
            raise ComplexError(
                f"non-orientable gluing {format_side(first)} ~ {format_side(second)}"
            )
        for side in (first, second):
            if side in pairs:
                raise ComplexError(f"side {format_side(side)} glued twice")
        pairs[first] = second
        pairs[second] = first

    merged: Dict[Side, int] = {}
    for side, count in (slots or {}).items():
        unglued.check_side(side)
        if count < 1:
            raise ComplexError(f"side {format_side(side)} needs a positive slot count")
        merged[side] = count
    for side, count in list(merged.items()):
        other = pairs.get(side)
        if other is None:
            continue
        if other in merged and merged[other] != count:
            raise ComplexError(
                f"slot-order mismatch: {format_side(side)} has {count} slots, "
                f"{format_side(other)} has {merged[other]}"
            )
        merged[other] = count

    complex_ = PolygonComplex(polygons, pairs, merged)
    complex_.census()
    return complex_


def classify(complex_: PolygonComplex) -> List[ComponentCensus]:
    """Per-component genus and boundary count"""
    return list(complex_.census().components)
