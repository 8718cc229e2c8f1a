"""
Basis arcs of a partial open book and the cut criterion
"""
import logging
from dataclasses import dataclass
from typing import Dict, List, Tuple

from app.core.errors import BasisError, PathError
from app.core.openbook.pob import PartialOpenBook
from app.core.surface.arrangement import ALPHA, CurveChords, arrangement
from app.core.surface.complex import format_side
from app.core.surface.paths import ArcPath, check_path
from app.core.surface.realize import realize

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Basis:
    arcs: Tuple[ArcPath, ...]

    @property
    def r(self) -> int:
        return len(self.arcs)

    def names(self) -> List[str]:
        return [a.name for a in self.arcs]

    def index(self, name: str) -> int:
        for k, arc in enumerate(self.arcs):
            if arc.name == name:
                return k
        raise BasisError(f"unknown basis arc {name}")

    def replaced(self, index: int, arc: ArcPath) -> "Basis":
        arcs = list(self.arcs)
        arcs[index] = arc
        return Basis(tuple(arcs))


def _gamma_runs(cycle: List[Tuple[str, object]], gamma: set) -> int:
    kinds = [entry[0] == "side" and entry[1] in gamma for entry in cycle]
    if kinds and all(kinds):
        return 1
    return sum(1 for k in range(len(kinds)) if kinds[k] and not kinds[k - 1])


def validate_basis(pob: PartialOpenBook, basis: Basis) -> Dict:
    """
    Check that the basis arcs cut P into disks each meeting Gamma once

    Args:
        pob: Partial open book
        basis: Candidate basis

    Returns:
        Report with r and the census of cut components
    """
    page = pob.page
    a_sides = set(pob.a_sides())
    for arc in basis.arcs:
        check_path(arc, page)
        for polygon in arc.polygons(page):
            if not pob.is_handle(polygon):
                raise BasisError(f"basis arc {arc.name} leaves P through polygon {polygon}")
        for endpoint in (arc.start, arc.end):
            if endpoint.side not in a_sides:
                raise BasisError(f"basis arc {arc.name} ends on {format_side(endpoint.side)}, which is not in A")

    handle = pob.handle_complex()
    interface = set(pob.interface_sides())
    chords = realize(handle, list(basis.arcs)) if basis.arcs else []
    curves = [CurveChords(arc.name, ALPHA, tuple(c), closed=False) for arc, c in zip(basis.arcs, chords)]
    try:
        layout = arrangement(handle, curves)
    except PathError as e:
        raise BasisError(f"basis arcs are not simple and disjoint: {e}")

    components = []
    for region in layout.regions:
        cycles = layout.region_boundary(region)
        runs = sum(_gamma_runs(cycle, interface) for cycle in cycles)
        components.append({
            "region": region.id,
            "polygons": list(region.pieces),
            "chi": region.chi,
            "gamma_arcs": runs,
        })
        if region.chi != 1 or len(cycles) != 1:
            raise BasisError(
                f"cut component through {' '.join(region.pieces)} is not a disk (chi={region.chi})"
            )
        if runs != 1:
            raise BasisError(
                f"cut component through {' '.join(region.pieces)} meets Gamma in {runs} arcs"
            )

    logger.debug(f"Basis valid: r={basis.r}, {len(components)} cut components")
    return {"r": basis.r, "components": components}
