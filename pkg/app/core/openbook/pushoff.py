"""
Pushoffs of basis arcs along the boundary orientation
"""
import logging
from fractions import Fraction
from typing import Dict, List

from app.core.openbook.basis import Basis
from app.core.openbook.pob import PartialOpenBook
from app.core.surface.complex import Side
from app.core.surface.paths import ArcPath, Endpoint

logger = logging.getLogger(__name__)


def pushoff_name(name: str) -> str:
    return f"{name}'"


def _shift(endpoint: Endpoint, occupied: Dict[Side, List[Fraction]]) -> Endpoint:
    later = [t for t in occupied.get(endpoint.side, []) if t > endpoint.position]
    limit = min(later) if later else Fraction(1)
    return Endpoint(endpoint.side, (endpoint.position + limit) / 2)


def pushoff(pob: PartialOpenBook, basis: Basis) -> List[ArcPath]:
    """
    Push every basis arc off itself

    Each endpoint moves forward along its side, halfway to the next basis
    endpoint (or to the end of the side). The pushoff keeps the itinerary of
    the arc, so after realization it meets the arc once, in the polygon where
    the arc starts.

    Args:
        pob: Partial open book
        basis: Valid basis

    Returns:
        Pushoff arcs b_i in basis order
    """
    occupied: Dict[Side, List[Fraction]] = {}
    for arc in basis.arcs:
        for endpoint in (arc.start, arc.end):
            occupied.setdefault(endpoint.side, []).append(endpoint.position)

    result = []
    for arc in basis.arcs:
        b = ArcPath(pushoff_name(arc.name), _shift(arc.start, occupied), arc.exits, _shift(arc.end, occupied))
        result.append(b)
        logger.debug(f"Pushoff {b.name}: start {b.start.position}, end {b.end.position}")
    return result
