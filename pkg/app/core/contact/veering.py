"""
Right-veering diagnostics for arcs in P
"""
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import List, Sequence, Tuple

from app.core.errors import PathError
from app.core.openbook.pob import PartialOpenBook
from app.core.openbook.twist import apply_monodromy
from app.core.surface.complex import PolygonComplex, format_side
from app.core.surface.paths import ArcPath

logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)


class Veering(str, Enum):
    RIGHT = "RIGHT"
    LEFT = "LEFT"


@dataclass
class ArcVeering:
    arc: str
    start: Veering
    end: Veering

    @property
    def left(self) -> bool:
        return Veering.LEFT in (self.start, self.end)


@dataclass
class VeeringReport:
    arcs: List[ArcVeering]
    partial: bool = True

    def left_arcs(self) -> List[str]:
        return [a.arc for a in self.arcs if a.left]

    @property
    def right_veering(self) -> bool:
        return not self.left_arcs()


def _stops(page: PolygonComplex, arc: ArcPath) -> List[Tuple[int, Fraction]]:
    """Per polygon visit: (entry side, ccw target) as theta values"""
    result = []
    entry_side, entry_pos = arc.start.side, arc.start.position
    for exit_side in arc.exits:
        result.append((entry_side[1] + entry_pos, Fraction(exit_side[1]) + HALF))
        entry_side, entry_pos = page.partner(exit_side), HALF
    result.append((entry_side[1] + entry_pos, arc.end.side[1] + arc.end.position))
    return result


def departure(page: PolygonComplex, arc: ArcPath, image: ArcPath) -> Veering:
    """
    Side to which image leaves arc at their common start point

    Both itineraries are followed until they first take different exits;
    there the one with the smaller counter-clockwise offset from the entry
    point lies to the right. Identical itineraries count as RIGHT.
    """
    ours, theirs = arc.exits, image.exits
    k = 0
    while k < len(ours) and k < len(theirs) and ours[k] == theirs[k]:
        k += 1
    if k == len(ours) and k == len(theirs):
        return Veering.RIGHT
    polygon = arc.polygons(page)[k]
    n = page.sides(polygon)
    entry, target_a = _stops(page, arc)[k]
    _, target_h = _stops(page, image)[k]
    if target_a == target_h:
        return Veering.RIGHT
    offset_a = (target_a - entry) % n
    offset_h = (target_h - entry) % n
    return Veering.RIGHT if offset_h < offset_a else Veering.LEFT


def right_veering_report(pob: PartialOpenBook, arcs: Sequence[ArcPath]) -> VeeringReport:
    """
    Compare every arc with its monodromy image at both endpoints

    Args:
        pob: Partial open book
        arcs: Arcs of P with endpoints on A

    Returns:
        Per arc verdicts; a certificate over the supplied arcs only
    """
    a_sides = set(pob.a_sides())
    page = pob.page
    result = []
    for arc in arcs:
        for label, endpoint in (("start", arc.start), ("end", arc.end)):
            if endpoint.side not in a_sides:
                raise PathError(f"{arc.name} has its {label} on {format_side(endpoint.side)}, not on A")
        image = apply_monodromy(pob, arc)
        verdict = ArcVeering(
            arc.name,
            departure(page, arc, image),
            departure(page, arc.reversed(page), image.reversed(page)),
        )
        logger.debug(f"Veering {arc.name}: start {verdict.start.value}, end {verdict.end.value}")
        result.append(verdict)
    return VeeringReport(result)
