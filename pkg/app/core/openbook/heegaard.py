"""
Sutured Heegaard diagrams

A diagram built from a partial open book doubles the page: level -1 is a copy
of S with reversed orientation, level +1 is a copy of the HANDLE polygons,
and the two levels are glued along A. Alpha curves are the doubled basis arcs,
beta curves join each pushoff at level +1 to its monodromy image at level -1.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from app.core.errors import InternalInvariantError, MonodromyError, SFHError
from app.core.openbook.basis import Basis, validate_basis
from app.core.openbook.pob import PartialOpenBook, validate_pob
from app.core.openbook.pushoff import pushoff
from app.core.openbook.twist import apply_monodromy
from app.core.surface.arrangement import ALPHA, BETA, Arrangement, CurveChords, Region, arrangement
from app.core.surface.complex import Polygon, PolygonComplex, Side, build_complex, format_side
from app.core.surface.paths import ArcPath, Endpoint
from app.core.surface.realize import Chord, realize

logger = logging.getLogger(__name__)

UPPER = "+"
LOWER = "-"


@dataclass
class SuturedHeegaardDiagram:
    """Heegaard surface, curve systems, labelled points and regions"""
    sigma: PolygonComplex
    alphas: List[str]
    betas: List[str]
    layout: Arrangement
    point_names: Dict[int, str]
    distinguished: Optional[Dict[str, int]] = None
    source: str = "diagram"
    corner_sign: int = 1
    orientation: Tuple[int, int] = (-1, -1)
    levels: Dict[str, int] = field(default_factory=dict)
    cache: Dict[str, object] = field(default_factory=dict, repr=False, compare=False)

    @property
    def crossings(self):
        return self.layout.crossings

    @property
    def regions(self) -> List[Region]:
        return self.layout.regions

    def interior_regions(self) -> List[Region]:
        return [r for r in self.layout.regions if not r.boundary_adjacent]

    def point(self, crossing: int) -> str:
        return self.point_names[crossing]

    def crossing_named(self, name: str) -> int:
        for cid, label in self.point_names.items():
            if label == name:
                return cid
        raise SFHError(f"no intersection point named {name}")

    def curve_pair(self, crossing: int) -> Tuple[str, str]:
        """(alpha, beta) names of a crossing in the current role assignment"""
        c = self.layout.crossings[crossing]
        if c.alpha in self.alphas:
            return c.alpha, c.beta
        return c.beta, c.alpha

    def corner_coefficient(self, region: Region, crossing: int) -> int:
        return self.corner_sign * (region.corner_count(crossing, "A") - region.corner_count(crossing, "B"))

    def gamma_sides(self) -> List[Side]:
        return self.sigma.boundary_sides()


def _lower_side(page: PolygonComplex, side: Side) -> Side:
    name, k = side
    return (name + LOWER, page.sides(name) - 1 - k)


def _upper_side(side: Side) -> Side:
    return (side[0] + UPPER, side[1])


def _lift(page: PolygonComplex, arc: ArcPath, level: str) -> ArcPath:
    if level == UPPER:
        return ArcPath(
            arc.name,
            Endpoint(_upper_side(arc.start.side), arc.start.position),
            tuple(_upper_side(e) for e in arc.exits),
            Endpoint(_upper_side(arc.end.side), arc.end.position),
        )
    return ArcPath(
        arc.name,
        Endpoint(_lower_side(page, arc.start.side), 1 - arc.start.position),
        tuple(_lower_side(page, e) for e in arc.exits),
        Endpoint(_lower_side(page, arc.end.side), 1 - arc.end.position),
    )


def _closed_curve(name: str, family: str, upper: List[Chord], lower: List[Chord]) -> CurveChords:
    chords = [Chord(name, k, c.polygon, c.start, c.end) for k, c in enumerate(upper)]
    for c in reversed(lower):
        chords.append(Chord(name, len(chords), c.polygon, c.end, c.start))
    return CurveChords(name, family, tuple(chords), closed=True)


def doubled_surface(pob: PartialOpenBook) -> PolygonComplex:
    """Sigma: S at level -1, the HANDLE polygons at level +1, glued along A"""
    page = pob.page
    handles = pob.handle_polygons()
    polygons = [Polygon(name + UPPER, page.sides(name)) for name in handles]
    polygons += [Polygon(name + LOWER, page.sides(name)) for name in page.polygon_names]
    gluings = []
    for first, second in page.glued_pairs():
        gluings.append((_lower_side(page, first), _lower_side(page, second), False))
        if pob.is_handle(first[0]) and pob.is_handle(second[0]):
            gluings.append((_upper_side(first), _upper_side(second), False))
    for side in pob.a_sides():
        gluings.append((_upper_side(side), _lower_side(page, side), False))
    return build_complex(polygons, gluings)


def build_heegaard(pob: PartialOpenBook, basis: Basis) -> SuturedHeegaardDiagram:
    """
    Sutured Heegaard diagram of a partial open book with a basis

    Args:
        pob: Partial open book
        basis: Basis of P

    Returns:
        Diagram with distinguished points x_i
    """
    validate_pob(pob)
    validate_basis(pob, basis)
    page = pob.page
    sigma = doubled_surface(pob)

    pushoffs = pushoff(pob, basis)
    images = []
    for b in pushoffs:
        image = apply_monodromy(pob, b)
        for label, ours, theirs in (("start", b.start, image.start), ("end", b.end, image.end)):
            if ours != theirs:
                raise MonodromyError(
                    f"image of {b.name} moves its {label} point off {format_side(ours.side)}"
                )
        images.append(image)

    lifted = (
        [_lift(page, a, UPPER) for a in basis.arcs]
        + [_lift(page, b, UPPER) for b in pushoffs]
        + [_lift(page, a, LOWER) for a in basis.arcs]
        + [_lift(page, h, LOWER) for h in images]
    )
    chords = realize(sigma, lifted, pinned=True)
    r = basis.r
    curves = []
    alphas, betas = [], []
    for i, arc in enumerate(basis.arcs):
        curves.append(_closed_curve(arc.name, ALPHA, chords[i], chords[2 * r + i]))
        alphas.append(arc.name)
    for i, b in enumerate(pushoffs):
        curves.append(_closed_curve(b.name, BETA, chords[r + i], chords[3 * r + i]))
        betas.append(b.name)

    layout = arrangement(sigma, curves)
    distinguished: Dict[str, int] = {}
    for crossing in layout.crossings:
        if not crossing.polygon.endswith(UPPER):
            continue
        i = alphas.index(crossing.alpha)
        if crossing.beta != betas[i]:
            raise InternalInvariantError(
                f"{crossing.alpha} meets {crossing.beta} at level +1"
            )
        if crossing.alpha in distinguished:
            raise InternalInvariantError(f"{crossing.alpha} meets its pushoff twice at level +1")
        if crossing.sign != 1:
            raise InternalInvariantError(f"pushoff of {crossing.alpha} crosses it with sign {crossing.sign}")
        distinguished[crossing.alpha] = crossing.id
    missing = [a for a in alphas if a not in distinguished]
    if missing:
        raise InternalInvariantError(f"no level +1 point on {' '.join(missing)}")

    names: Dict[int, str] = {}
    for i, alpha in enumerate(alphas):
        names[distinguished[alpha]] = f"x{i + 1}"
    counter = 1
    for crossing in layout.crossings:
        if crossing.id not in names:
            names[crossing.id] = f"p{counter}"
            counter += 1

    levels = {name + UPPER: 1 for name in pob.handle_polygons()}
    levels.update({name + LOWER: -1 for name in page.polygon_names})
    logger.info(
        f"Heegaard diagram: {len(sigma.polygon_names)} polygons, r={r}, "
        f"{len(layout.crossings)} points, {len(layout.regions)} regions"
    )
    return SuturedHeegaardDiagram(
        sigma=sigma,
        alphas=alphas,
        betas=betas,
        layout=layout,
        point_names=names,
        distinguished=distinguished,
        source="pob",
        levels=levels,
    )


def diagram_from_curves(
    sigma: PolygonComplex,
    alphas: Sequence[CurveChords],
    betas: Sequence[CurveChords],
    labels: Sequence[Tuple[str, str, str, str, int]] = (),
    eh_points: Sequence[str] = (),
) -> SuturedHeegaardDiagram:
    """
    Diagram given directly by its curves

    Args:
        sigma: Heegaard surface
        alphas: Alpha curves
        betas: Beta curves
        labels: (name, alpha, beta, polygon, n) for the n-th such crossing
        eh_points: Point names forming the distinguished generator

    Returns:
        Diagram; distinguished points only when eh_points is given
    """
    if len(alphas) != len(betas):
        raise SFHError(f"unbalanced diagram: {len(alphas)} alpha and {len(betas)} beta curves")
    layout = arrangement(sigma, list(alphas) + list(betas))
    names: Dict[int, str] = {}
    for name, alpha, beta, polygon, n in labels:
        matches = [c for c in layout.crossings if c.alpha == alpha and c.beta == beta and c.polygon == polygon]
        if not 1 <= n <= len(matches):
            raise SFHError(f"point {name}: {alpha} and {beta} have {len(matches)} crossings in {polygon}")
        cid = matches[n - 1].id
        if cid in names:
            raise SFHError(f"point {name} relabels {names[cid]}")
        names[cid] = name
    counter = 1
    taken = set(names.values())
    for crossing in layout.crossings:
        if crossing.id not in names:
            while f"p{counter}" in taken:
                counter += 1
            names[crossing.id] = f"p{counter}"
            taken.add(names[crossing.id])

    diagram = SuturedHeegaardDiagram(
        sigma=sigma,
        alphas=[c.name for c in alphas],
        betas=[c.name for c in betas],
        layout=layout,
        point_names=names,
    )
    if eh_points:
        distinguished = {}
        for point in eh_points:
            cid = diagram.crossing_named(point)
            alpha = layout.crossings[cid].alpha
            if alpha in distinguished:
                raise SFHError(f"distinguished points {point} and {names[distinguished[alpha]]} share {alpha}")
            distinguished[alpha] = cid
        if len(distinguished) != len(alphas):
            raise SFHError("distinguished points must cover every alpha curve")
        diagram.distinguished = distinguished
    return diagram
