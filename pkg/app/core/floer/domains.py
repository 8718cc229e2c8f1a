"""
Domains, periodic domains and the Maslov index

A domain is an integer combination of regions. At every intersection point q
its corner multiplicities satisfy

    sum over q-corners of (A-corner - B-corner) multiplicity = delta(q)

with delta(q) = +1 on points of y, -1 on points of x. This is the corner
system solved exactly over the integers.
"""
import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import pandas as pd

from app.core.errors import InternalInvariantError
from app.core.floer.generators import Generator
from app.core.floer.linalg import IntegerSystem, IntVector, maximize
from app.core.openbook.heegaard import SuturedHeegaardDiagram
from app.core.surface.arrangement import euler_measure

logger = logging.getLogger(__name__)

QUADRANTS = ("NE", "NW", "SW", "SE")


@dataclass(frozen=True)
class Domain:
    """Multiplicity per region id, from generator x to generator y"""
    multiplicities: Tuple[int, ...]
    source: Generator
    target: Generator

    def support(self) -> List[int]:
        return [rid for rid, m in enumerate(self.multiplicities) if m != 0]

    def is_positive(self) -> bool:
        return all(m >= 0 for m in self.multiplicities)

    def __add__(self, other: "Domain") -> "Domain":
        if self.target != other.source:
            raise InternalInvariantError("domains are not composable")
        summed = tuple(a + b for a, b in zip(self.multiplicities, other.multiplicities))
        return Domain(summed, self.source, other.target)


@dataclass(frozen=True)
class PeriodicLattice:
    """Integer basis of corner-free region vectors"""
    basis: Tuple[Tuple[int, ...], ...]
    regions: int

    @property
    def rank(self) -> int:
        return len(self.basis)


class CornerSystem:
    """Corner equations of one diagram, over all regions or interior ones"""

    def __init__(self, hd: SuturedHeegaardDiagram, interior_only: bool):
        self.hd = hd
        if interior_only:
            self.columns = [r.id for r in hd.interior_regions()]
        else:
            self.columns = [r.id for r in hd.regions]
        self.rows = [c.id for c in hd.crossings]
        matrix = [
            [hd.corner_coefficient(hd.regions[rid], cid) for rid in self.columns]
            for cid in self.rows
        ]
        self.matrix = matrix
        self.system = IntegerSystem(matrix, len(self.columns))

    def delta(self, x: Generator, y: Generator) -> List[int]:
        rhs = {cid: 0 for cid in self.rows}
        for p in y.points:
            rhs[p] += 1
        for p in x.points:
            rhs[p] -= 1
        return [rhs[cid] for cid in self.rows]

    def widen(self, vector: Sequence[int]) -> Tuple[int, ...]:
        full = [0] * len(self.hd.regions)
        for rid, value in zip(self.columns, vector):
            full[rid] = int(value)
        return tuple(full)


def corner_system(hd: SuturedHeegaardDiagram, interior_only: bool = False) -> CornerSystem:
    key = "corners-interior" if interior_only else "corners-all"
    if key not in hd.cache:
        hd.cache[key] = CornerSystem(hd, interior_only)
    return hd.cache[key]


def corner_table(hd: SuturedHeegaardDiagram) -> pd.DataFrame:
    """Corner matrix with point labels as rows and region ids as columns"""
    system = corner_system(hd)
    return pd.DataFrame(
        system.matrix,
        index=[hd.point(cid) for cid in system.rows],
        columns=[f"R{rid}" for rid in system.columns],
    )


def domain_between(
    hd: SuturedHeegaardDiagram, x: Generator, y: Generator, interior_only: bool = False
) -> Optional[Tuple[Domain, PeriodicLattice]]:
    """
    Decide whether x and y are joined by a domain

    By default all regions, Gamma-adjacent ones included, may carry
    multiplicity. Relative Spin^c classes use interior_only=True, the same
    region set the differential counts in.

    Args:
        hd: Diagram
        x: Source generator
        y: Target generator
        interior_only: Keep Gamma-adjacent regions at multiplicity zero

    Returns:
        A particular domain and the lattice of corner-free vectors, or None
    """
    system = corner_system(hd, interior_only)
    solution = system.system.solve(system.delta(x, y))
    if solution is None:
        return None
    lattice = PeriodicLattice(
        tuple(system.widen(v) for v in system.system.kernel()),
        len(hd.regions),
    )
    return Domain(system.widen(solution), x, y), lattice


def periodic_lattice(hd: SuturedHeegaardDiagram) -> PeriodicLattice:
    """Periodic domains: corner-free vectors vanishing on Gamma-adjacent regions"""
    system = corner_system(hd, interior_only=True)
    basis = tuple(system.widen(v) for v in system.system.kernel())
    logger.debug(f"Periodic lattice rank {len(basis)} over {len(system.columns)} interior regions")
    return PeriodicLattice(basis, len(hd.regions))


def is_weakly_admissible(hd: SuturedHeegaardDiagram) -> bool:
    """
    No nonzero periodic domain has only nonnegative multiplicities

    Maximizes the total multiplicity over the cone of nonnegative lattice
    points cut by total <= 1; a positive optimum is a witness.
    """
    lattice = periodic_lattice(hd)
    if lattice.rank == 0:
        return True
    regions = [r.id for r in hd.interior_regions()]
    columns = [[Fraction(v[rid]) for v in lattice.basis] for rid in regions]
    total = [sum((row[j] for row in columns), Fraction(0)) for j in range(lattice.rank)]
    a_ub = [[-value for value in row] for row in columns] + [total]
    b_ub = [Fraction(0)] * len(columns) + [Fraction(1)]
    status, value = maximize(total, a_ub, b_ub)
    if status != "optimal":
        raise InternalInvariantError(f"admissibility program ended {status}")
    logger.debug(f"Admissibility optimum {value} on a rank {lattice.rank} lattice")
    return value <= 0


def point_multiplicity(hd: SuturedHeegaardDiagram, multiplicities: Sequence[int], crossing: int) -> Fraction:
    """Average of the four quadrant multiplicities at a point"""
    total = sum(multiplicities[hd.layout.region_at(crossing, q)] for q in QUADRANTS)
    return Fraction(total, 4)


def maslov_index(hd: SuturedHeegaardDiagram, domain: Domain) -> int:
    """
    Index n_x + n_y + e of a domain

    Args:
        hd: Diagram
        domain: Domain from x to y

    Returns:
        The integer index
    """
    m = domain.multiplicities
    value = sum(point_multiplicity(hd, m, p) for p in domain.source.points)
    value += sum(point_multiplicity(hd, m, p) for p in domain.target.points)
    value += sum(Fraction(m[r.id]) * euler_measure(r) for r in hd.regions if m[r.id])
    if value.denominator != 1:
        raise InternalInvariantError(f"non-integral index {value}")
    return int(value)


def _lattice_box(
    base: Sequence[int], lattice: Sequence[Sequence[int]], bound: int
) -> Optional[List[Tuple[int, int]]]:
    """Integer ranges of lattice coordinates keeping 0 <= base + L c <= bound"""
    k = len(lattice)
    rows = [[Fraction(v[i]) for v in lattice] for i in range(len(base))]
    a_ub = [[-value for value in row] for row in rows] + [list(row) for row in rows]
    b_ub = [Fraction(b) for b in base] + [Fraction(bound - b) for b in base]
    ranges = []
    for j in range(k):
        unit = [Fraction(1 if q == j else 0) for q in range(k)]
        status, high = maximize(unit, a_ub, b_ub)
        if status == "infeasible":
            return None
        if status == "unbounded":
            raise InternalInvariantError("domain search is unbounded; diagram not weakly admissible")
        _, low = maximize([-u for u in unit], a_ub, b_ub)
        ranges.append((math.ceil(-low), math.floor(high)))
    return ranges


def bounded_domains(
    hd: SuturedHeegaardDiagram, x: Generator, y: Generator, bound: int
) -> Iterator[Domain]:
    """
    Domains from x to y with interior multiplicities in [0, bound]

    Gamma-adjacent regions carry multiplicity zero.
    """
    system = corner_system(hd, interior_only=True)
    base = system.system.solve(system.delta(x, y))
    if base is None:
        return
    lattice = system.system.kernel()
    if not lattice:
        if all(0 <= v <= bound for v in base):
            yield Domain(system.widen(base), x, y)
        return
    ranges = _lattice_box(base, lattice, bound)
    if ranges is None:
        return
    for coefficients in itertools.product(*(range(lo, hi + 1) for lo, hi in ranges)):
        vector = [
            b + sum(c * v[i] for c, v in zip(coefficients, lattice))
            for i, b in enumerate(base)
        ]
        if all(0 <= v <= bound for v in vector):
            yield Domain(system.widen(vector), x, y)


def spinc_key(hd: SuturedHeegaardDiagram, x: Generator) -> IntVector:
    """Residue of x in the cokernel of the interior corner matrix"""
    system = corner_system(hd, interior_only=True)
    indicator = [1 if cid in x.points else 0 for cid in system.rows]
    return system.system.residue(indicator)


def spinc_partition(hd: SuturedHeegaardDiagram, generators: Sequence[Generator]) -> List[List[int]]:
    """
    Relative Spin^c classes

    Two generators share a class iff domain_between(hd, x, y, interior_only=True)
    finds a domain. The residue in the cokernel of the interior corner
    matrix decides this for all pairs at once.

    Returns:
        Classes as lists of generator indices, in order of first appearance
    """
    classes: Dict[IntVector, List[int]] = {}
    for index, g in enumerate(generators):
        classes.setdefault(spinc_key(hd, g), []).append(index)
    result = list(classes.values())
    logger.debug(f"Spin^c classes: {[len(c) for c in result]}")
    return result
