"""
Seeded random partial open books for property testing
"""
import logging
from fractions import Fraction
from typing import List, Optional, Tuple

import numpy as np

from app.config.settings import get_settings
from app.core.errors import SFHError
from app.core.openbook.basis import Basis, validate_basis
from app.core.openbook.moves import stabilize
from app.core.openbook.pob import PartialOpenBook, Twist, validate_pob
from app.core.surface.complex import Polygon, PolygonLabel, Side, build_complex
from app.core.surface.paths import ArcPath, Endpoint

logger = logging.getLogger(__name__)

POSITIONS = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4))
ATTEMPTS = 20


def product_pob() -> Tuple[PartialOpenBook, Basis]:
    """A PLUS square with empty P and trivial monodromy"""
    page = build_complex([Polygon("D", 4, PolygonLabel.PLUS)], [])
    return PartialOpenBook(page), Basis(())


def _random_arc(rng: np.random.Generator, pob: PartialOpenBook, name: str) -> Optional[ArcPath]:
    """Arc inside one polygon or through one glued side, between boundary sides"""
    page = pob.page
    boundary = page.boundary_sides()
    start_side: Side = boundary[int(rng.integers(len(boundary)))]
    polygon = start_side[0]
    exits: Tuple[Side, ...] = ()
    end_polygon = polygon
    glued = [(polygon, k) for k in range(page.sides(polygon)) if not page.is_boundary((polygon, k))]
    if glued and rng.random() < 0.5:
        exit_side = glued[int(rng.integers(len(glued)))]
        exits = (exit_side,)
        end_polygon = page.partner(exit_side)[0]
    ends = [s for s in boundary if s[0] == end_polygon]
    end_side = ends[int(rng.integers(len(ends)))]
    start = Endpoint(start_side, POSITIONS[int(rng.integers(len(POSITIONS)))])
    end = Endpoint(end_side, POSITIONS[int(rng.integers(len(POSITIONS)))])
    if start == end:
        return None
    if not exits and start.side == end.side:
        return None
    return ArcPath(name, start, exits, end)


def random_pob(
    seed: int,
    max_handles: Optional[int] = None,
    max_twists: Optional[int] = None,
) -> Tuple[PartialOpenBook, Basis]:
    """
    Random partial open book with a basis

    Starts from the product disk and stabilizes along random arcs; failed
    attempts are skipped, so the result depends on the seed only. The twist
    word is then redrawn as a random signed word over the stabilization
    curves.

    Args:
        seed: RNG seed
        max_handles: Largest number of stabilizations (settings default)
        max_twists: Longest twist word (settings default)

    Returns:
        (pob, basis)
    """
    settings = get_settings()
    max_handles = settings.fuzz_max_handles if max_handles is None else max_handles
    max_twists = settings.fuzz_max_twists if max_twists is None else max_twists
    rng = np.random.default_rng(seed)

    pob, basis = product_pob()
    handles = int(rng.integers(max_handles + 1))
    stabilized: List[str] = []
    for step in range(handles):
        for _ in range(ATTEMPTS):
            arc = _random_arc(rng, pob, f"c{step}")
            if arc is None:
                continue
            try:
                result = stabilize(pob, arc, basis)
            except SFHError as e:
                logger.debug(f"Seed {seed}: stabilization {step} rejected: {e}")
                continue
            pob, basis = result.pob, result.basis
            stabilized.append(result.curve)
            break

    if stabilized:
        length = int(rng.integers(max_twists + 1))
        word = tuple(
            Twist(stabilized[int(rng.integers(len(stabilized)))], 1 if rng.random() < 0.5 else -1)
            for _ in range(length)
        )
        pob = pob.with_twist_word(word, pob.curves)
    validate_pob(pob)
    validate_basis(pob, basis)
    logger.debug(
        f"Seed {seed}: {len(stabilized)} handles, word {' '.join(str(t) for t in pob.twist_word) or '(empty)'}"
    )
    return pob, basis
