"""
Dehn twist calculus on arcs and monodromy evaluation
"""
import logging
from typing import List

from app.core.errors import MonodromyError
from app.core.openbook.pob import MonodromyKind, PartialOpenBook
from app.core.surface.complex import PolygonComplex, Side, format_side
from app.core.surface.paths import ArcPath, CurvePath, Endpoint, free_reduce
from app.core.surface.realize import ccw_between, chords_cross, realize

logger = logging.getLogger(__name__)


def _traversal(page: PolygonComplex, curve: CurvePath, index: int, forward: bool) -> List[Side]:
    """Exits of one full lap around the curve starting inside its chord `index`"""
    exits = curve.exits
    size = len(exits)
    if forward:
        return [exits[(index + k) % size] for k in range(size)]
    return [page.partner(exits[(index - 1 - k) % size]) for k in range(size)]


def dehn_twist(page: PolygonComplex, path: ArcPath, curve: CurvePath, sign: int) -> ArcPath:
    """
    Image of an arc under a Dehn twist

    At every crossing with the curve the arc turns (right for a positive
    twist, left for a negative one), runs once around the curve and carries
    on. The result is freely reduced.

    Args:
        page: Page carrying both paths
        path: Arc to twist
        curve: Simple closed twist curve
        sign: +1 or -1

    Returns:
        Reduced image arc with the same endpoints
    """
    arc_chords, curve_chords = realize(page, [path, curve])
    exits: List[Side] = []
    spliced = 0
    for k, chord in enumerate(arc_chords):
        n = page.sides(chord.polygon)
        hits = []
        for m, other in enumerate(curve_chords):
            if not chords_cross(chord, other, n):
                continue
            right_is_end = ccw_between(other.end, chord.start, chord.end, n)
            right = other.end if right_is_end else other.start
            hits.append(((right - chord.start) % n, m, right_is_end))
        for _, m, right_is_end in sorted(hits):
            forward = right_is_end if sign > 0 else not right_is_end
            exits.extend(_traversal(page, curve, m, forward))
            spliced += 1
        if k < len(path.exits):
            exits.append(path.exits[k])
    image = free_reduce(ArcPath(path.name, path.start, tuple(exits), path.end), page)
    logger.debug(
        f"Twist {'+' if sign > 0 else '-'}{curve.name} on {path.name}: "
        f"{spliced} crossings, {len(path.exits)} -> {len(image.exits)} exits"
    )
    return image


def base_name(name: str) -> str:
    return name[:-1] if name.endswith("'") else name


def apply_monodromy(pob: PartialOpenBook, arc: ArcPath) -> ArcPath:
    """
    Evaluate the monodromy on an arc

    Args:
        pob: Partial open book
        arc: Arc in P (a registered pushoff in EXPLICIT_IMAGES mode)

    Returns:
        Reduced image arc
    """
    if pob.kind == MonodromyKind.EXPLICIT_IMAGES:
        image = pob.images.get(base_name(arc.name))
        if image is None:
            raise MonodromyError(f"no image registered for {arc.name}")
        for label, ours, theirs in (("start", arc.start, image.start), ("end", arc.end, image.end)):
            if ours.side != theirs.side:
                raise MonodromyError(
                    f"image of {arc.name} has its {label} on {format_side(theirs.side)}, "
                    f"expected {format_side(ours.side)}"
                )
        result = ArcPath(
            arc.name,
            Endpoint(arc.start.side, arc.start.position),
            image.exits,
            Endpoint(arc.end.side, arc.end.position),
        )
        return free_reduce(result, pob.page)

    result = arc
    for twist in reversed(pob.twist_word):
        result = dehn_twist(pob.page, result, pob.curves[twist.curve], twist.sign)
    return result
