"""
Partial open book model: page, PLUS/HANDLE labels and monodromy
"""
import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Dict, List, Optional, Tuple

import networkx as nx

from app.core.errors import ComplexError, MonodromyError, PathError
from app.core.surface.complex import PolygonComplex, PolygonLabel, Side, format_side
from app.core.surface.paths import ArcPath, CurvePath, check_path, free_reduce
from app.core.surface.realize import realize, self_crossings

logger = logging.getLogger(__name__)


class MonodromyKind(str, Enum):
    """How the monodromy is specified"""
    TWIST_WORD = "twistword"
    EXPLICIT_IMAGES = "images"


@dataclass(frozen=True)
class Twist:
    curve: str
    sign: int

    def __str__(self) -> str:
        return f"{'+' if self.sign > 0 else '-'}{self.curve}"


@dataclass(frozen=True)
class PartialOpenBook:
    """
    Page S with R+ (PLUS polygons) and P (HANDLE polygons)

    In TWIST_WORD mode the monodromy is the product of Dehn twists listed
    left to right, so the rightmost twist acts first. In EXPLICIT_IMAGES mode
    the monodromy is known only on the pushoffs of the named basis arcs.
    """
    page: PolygonComplex
    curves: Dict[str, CurvePath] = field(default_factory=dict)
    twist_word: Tuple[Twist, ...] = ()
    images: Optional[Dict[str, ArcPath]] = None

    @property
    def kind(self) -> MonodromyKind:
        return MonodromyKind.TWIST_WORD if self.images is None else MonodromyKind.EXPLICIT_IMAGES

    def handle_polygons(self) -> List[str]:
        return [n for n in self.page.polygon_names if self.page.label(n) == PolygonLabel.HANDLE]

    def plus_polygons(self) -> List[str]:
        return [n for n in self.page.polygon_names if self.page.label(n) == PolygonLabel.PLUS]

    def is_handle(self, polygon: str) -> bool:
        return self.page.label(polygon) == PolygonLabel.HANDLE

    def a_sides(self) -> List[Side]:
        """Boundary sides of HANDLE polygons"""
        return [s for s in self.page.boundary_sides() if self.is_handle(s[0])]

    def interface_sides(self) -> List[Side]:
        """HANDLE sides glued to PLUS polygons (the suture inside S)"""
        result = []
        for name in self.handle_polygons():
            for k in range(self.page.sides(name)):
                other = self.page.partner((name, k))
                if other is not None and not self.is_handle(other[0]):
                    result.append((name, k))
        return result

    def gamma_sides(self) -> List[Side]:
        plus_boundary = [s for s in self.page.boundary_sides() if not self.is_handle(s[0])]
        return self.interface_sides() + plus_boundary

    def handle_complex(self) -> PolygonComplex:
        return self.page.subcomplex(self.handle_polygons())

    def handle_components(self) -> List[List[str]]:
        graph = nx.Graph()
        graph.add_nodes_from(self.handle_polygons())
        for (p, _), (q, _) in self.page.glued_pairs():
            if self.is_handle(p) and self.is_handle(q):
                graph.add_edge(p, q)
        order = self.page.polygon_names
        comps = [sorted(c, key=order.index) for c in nx.connected_components(graph)]
        return sorted(comps, key=lambda c: order.index(c[0]))

    def with_twist_word(self, word: Tuple[Twist, ...], curves: Dict[str, CurvePath]) -> "PartialOpenBook":
        return replace(self, twist_word=word, curves=curves)


def validate_pob(pob: PartialOpenBook) -> Dict:
    """
    Check labels, the Gamma/A split and the monodromy data

    Args:
        pob: Partial open book

    Returns:
        Report with the Gamma and A sides, HANDLE components and census
    """
    page = pob.page
    for name in page.polygon_names:
        if page.label(name) is None:
            raise ComplexError(f"polygon {name} has no PLUS/HANDLE label")

    if not page.is_ideal():
        raise ComplexError("page has a vertex in its interior; every vertex must lie on the boundary")

    a_sides = set(pob.a_sides())
    for component in pob.handle_components():
        if not any(side[0] in component for side in a_sides):
            raise ComplexError(
                f"HANDLE component {' '.join(component)} has no boundary side (empty A)"
            )

    for twist in pob.twist_word:
        if twist.sign not in (1, -1):
            raise MonodromyError(f"twist {twist.curve} has sign {twist.sign}")
        if twist.curve not in pob.curves:
            raise MonodromyError(f"twist word names undeclared curve {twist.curve}")

    for name, curve in pob.curves.items():
        check_path(curve, page)
        reduced = free_reduce(curve, page)
        if len(reduced.exits) != len(curve.exits):
            raise PathError(f"twist curve {name} is not reduced")
        chords = realize(page, [curve])[0]
        if self_crossings(chords, page):
            raise PathError(f"twist curve {name} is not simple")

    if pob.images is not None:
        for name, image in pob.images.items():
            check_path(image, page)

    census = page.census()
    report = {
        "polygons": len(page.polygon_names),
        "plus": pob.plus_polygons(),
        "handle": pob.handle_polygons(),
        "a_sides": [format_side(s) for s in pob.a_sides()],
        "gamma_sides": [format_side(s) for s in pob.gamma_sides()],
        "handle_components": len(pob.handle_components()),
        "monodromy": pob.kind.value,
        "twist_word": " ".join(str(t) for t in pob.twist_word),
        "chi": census.chi,
        "genus": census.genus,
        "boundary_components": census.boundary_components,
    }
    logger.debug(f"Partial open book valid: {report['polygons']} polygons, {report['handle_components']} handle components")
    return report
