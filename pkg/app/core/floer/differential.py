"""
The F2 boundary map of the sutured Floer complex

In a nice diagram the differential counts empty embedded bigons and
rectangles. The brute-force oracle counts every nonnegative index-one domain
with multiplicities at most one that avoids Gamma and contains no point of x
in its interior.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from app.config.settings import get_settings
from app.core.errors import InternalInvariantError, NotNice, PropertyFailure
from app.core.floer.domains import QUADRANTS, Domain, bounded_domains, maslov_index, spinc_key, spinc_partition
from app.core.floer.generators import Generator, enumerate_generators
from app.core.openbook.heegaard import SuturedHeegaardDiagram

logger = logging.getLogger(__name__)

OPPOSITE = ({"NE", "SW"}, {"NW", "SE"})


class CountMode(str, Enum):
    """How the differential is counted"""
    NICE = "nice"
    BRUTE = "brute"
    BOTH = "both"
    AUTO = "auto"


@dataclass
class NiceReport:
    nice: bool
    offending: List[int] = field(default_factory=list)


@dataclass
class ChainComplex:
    """Generators, boundary matrix (column x holds dx) and Spin^c classes"""
    generators: List[Generator]
    matrix: np.ndarray
    classes: List[List[int]]
    keys: List[Tuple[int, ...]]
    mode: CountMode

    @property
    def size(self) -> int:
        return len(self.generators)

    def boundary(self, index: int) -> List[int]:
        return [int(j) for j in np.nonzero(self.matrix[:, index])[0]]

    def index_of(self, generator: Generator) -> int:
        return self.generators.index(generator)

    def table(self, hd: SuturedHeegaardDiagram) -> pd.DataFrame:
        labels = [g.label(hd) for g in self.generators]
        rows = []
        for j, g in enumerate(self.generators):
            rows.append({
                "generator": labels[j],
                "class": next(k for k, c in enumerate(self.classes) if j in c),
                "boundary": " + ".join(labels[i] for i in self.boundary(j)) or "0",
            })
        return pd.DataFrame(rows, columns=["generator", "class", "boundary"])


def nice_report(hd: SuturedHeegaardDiagram) -> NiceReport:
    """Interior regions that are neither bigons nor squares"""
    offending = [
        r.id for r in hd.interior_regions()
        if r.chi != 1 or len(r.corners) not in (2, 4)
    ]
    return NiceReport(not offending, offending)


def is_nice(hd: SuturedHeegaardDiagram) -> bool:
    return nice_report(hd).nice


def _quadrant_counts(hd: SuturedHeegaardDiagram, domain: Domain) -> Dict[int, List[str]]:
    m = domain.multiplicities
    counts: Dict[int, List[str]] = {}
    for crossing in hd.crossings:
        hit = [q for q in QUADRANTS if m[hd.layout.region_at(crossing.id, q)] > 0]
        if hit:
            counts[crossing.id] = hit
    return counts


def is_empty_polygon(hd: SuturedHeegaardDiagram, domain: Domain) -> bool:
    """
    The domain is an empty embedded bigon or rectangle

    Args:
        hd: Diagram
        domain: Domain with multiplicities in {0, 1}

    Returns:
        True when the support is a disk whose only convex corners are the
        points where x and y differ and no point of x lies inside it
    """
    m = domain.multiplicities
    if any(v not in (0, 1) for v in m) or not any(m):
        return False
    faces = [f for rid in domain.support() for f in hd.regions[rid].faces]
    if hd.layout.union_euler(faces, glue_chords=True) != 1:
        return False
    moving = domain.source.point_set() ^ domain.target.point_set()
    if len(moving) not in (2, 4):
        return False
    counts = _quadrant_counts(hd, domain)
    convex = {cid for cid, quadrants in counts.items() if len(quadrants) == 1}
    if convex != moving:
        return False
    for cid, quadrants in counts.items():
        if len(quadrants) == 3:
            return False
        if len(quadrants) == 2 and set(quadrants) in OPPOSITE:
            return False
        if len(quadrants) == 4 and cid in domain.source.point_set():
            return False
    return maslov_index(hd, domain) == 1


def _contains_source_point(hd: SuturedHeegaardDiagram, domain: Domain) -> bool:
    m = domain.multiplicities
    for p in domain.source.points:
        if all(m[hd.layout.region_at(p, q)] > 0 for q in QUADRANTS):
            return True
    return False


def _pairs(hd: SuturedHeegaardDiagram, generators: Sequence[Generator]) -> List[Tuple[int, int]]:
    keys = [spinc_key(hd, g) for g in generators]
    return [
        (i, j)
        for i in range(len(generators))
        for j in range(len(generators))
        if i != j and keys[i] == keys[j]
    ]


def _count_nice(hd: SuturedHeegaardDiagram, generators: Sequence[Generator]) -> np.ndarray:
    n = len(generators)
    matrix = np.zeros((n, n), dtype=np.uint8)
    for i, j in _pairs(hd, generators):
        count = sum(1 for d in bounded_domains(hd, generators[i], generators[j], 1) if is_empty_polygon(hd, d))
        matrix[j, i] = count % 2
    return matrix


def differential_bruteforce(
    hd: SuturedHeegaardDiagram,
    mult_bound: Optional[int] = None,
    generators: Optional[Sequence[Generator]] = None,
) -> np.ndarray:
    """
    Oracle boundary matrix from exhaustive domain enumeration

    Args:
        hd: Weakly admissible diagram
        mult_bound: Largest multiplicity searched (settings default)
        generators: Generator order (enumerated when omitted)

    Returns:
        F2 matrix with entry [y, x] the count of domains from x to y
    """
    bound = get_settings().brute_bound if mult_bound is None else mult_bound
    generators = list(generators) if generators is not None else enumerate_generators(hd)
    n = len(generators)
    matrix = np.zeros((n, n), dtype=np.uint8)
    for i, j in _pairs(hd, generators):
        x, y = generators[i], generators[j]
        count = 0
        for domain in bounded_domains(hd, x, y, bound):
            if maslov_index(hd, domain) != 1:
                continue
            if max(domain.multiplicities) > 1:
                logger.warning(
                    f"Index one domain {x.label(hd)} -> {y.label(hd)} with multiplicity "
                    f"{max(domain.multiplicities)} ignored"
                )
                continue
            if _contains_source_point(hd, domain):
                continue
            count += 1
        matrix[j, i] = count % 2
    logger.debug(f"Brute-force differential at bound {bound}: {int(matrix.sum())} entries")
    return matrix


def check_square_zero(matrix: np.ndarray) -> None:
    square = (matrix.astype(np.int64) @ matrix.astype(np.int64)) % 2
    if square.any():
        raise InternalInvariantError(f"boundary map squares to nonzero ({int(square.sum())} entries)")


def differential(
    hd: SuturedHeegaardDiagram,
    mode: CountMode = CountMode.AUTO,
    bound: Optional[int] = None,
) -> ChainComplex:
    """
    Chain complex of the diagram

    Args:
        hd: Diagram
        mode: nice, brute, both (oracle agreement asserted) or auto
        bound: Multiplicity bound of the brute-force count

    Returns:
        ChainComplex with the boundary matrix and Spin^c classes
    """
    mode = CountMode(mode)
    generators = enumerate_generators(hd)
    report = nice_report(hd)
    if mode in (CountMode.NICE, CountMode.BOTH) and not report.nice:
        raise NotNice(report.offending)
    if mode == CountMode.AUTO:
        mode = CountMode.NICE if report.nice else CountMode.BRUTE
        if not report.nice:
            logger.info(f"Diagram not nice (regions {report.offending}); using brute force")

    if mode == CountMode.BRUTE:
        matrix = differential_bruteforce(hd, bound, generators)
    else:
        matrix = _count_nice(hd, generators)
        if mode == CountMode.BOTH:
            oracle = differential_bruteforce(hd, bound, generators)
            if not np.array_equal(matrix, oracle):
                diff = int((matrix ^ oracle).sum())
                raise PropertyFailure(f"nice count and brute-force oracle disagree in {diff} entries")
    check_square_zero(matrix)
    classes = spinc_partition(hd, generators)
    keys = [spinc_key(hd, generators[c[0]]) for c in classes]
    logger.info(f"Differential ({mode.value}): {len(generators)} generators, {int(matrix.sum())} nonzero entries")
    return ChainComplex(generators, matrix, classes, keys, mode)
