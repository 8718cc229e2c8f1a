"""
The contact class EH

The distinguished generator takes, on every alpha curve, the intersection
point the curve has with its own pushoff on the HANDLE level. It is a cycle
because every region at those points meets Gamma.
"""
import logging
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from app.core.errors import InternalInvariantError, SFHError
from app.core.floer.differential import ChainComplex, CountMode, differential
from app.core.floer.generators import Generator
from app.core.floer.homology import Homology, homology
from app.core.floer.linalg import f2_in_span, f2_solve
from app.core.openbook.heegaard import SuturedHeegaardDiagram

logger = logging.getLogger(__name__)


@dataclass
class EHClass:
    generator: Generator
    label: str
    is_cycle: bool
    nonzero: bool
    homology_dimension: int
    coordinates: List[int] = field(default_factory=list)


def eh_generator(hd: SuturedHeegaardDiagram) -> Generator:
    """
    The generator of distinguished points, in alpha order

    Raises:
        SFHError: the diagram carries no distinguished points
    """
    if hd.distinguished is None:
        raise SFHError("diagram has no distinguished generator (build it from a partial open book or add eh)")
    return Generator(tuple(hd.distinguished[name] for name in hd.alphas))


def _column(cc: ChainComplex, generator: Generator) -> np.ndarray:
    vector = np.zeros(cc.size, dtype=np.uint8)
    vector[cc.index_of(generator)] = 1
    return vector


def eh_is_cycle(hd: SuturedHeegaardDiagram, cc: ChainComplex) -> bool:
    index = cc.index_of(eh_generator(hd))
    return not cc.matrix[:, index].any()


def eh_nonzero(hd: SuturedHeegaardDiagram, cc: ChainComplex) -> bool:
    """The distinguished generator is not a boundary"""
    return not f2_in_span(cc.matrix, _column(cc, eh_generator(hd)))


def _coordinates(cc: ChainComplex, h: Homology, generator: Generator) -> List[int]:
    """Coefficients of [generator] in the representative basis"""
    reps = np.zeros((cc.size, len(h.representatives)), dtype=np.uint8)
    for k, support in enumerate(h.representatives):
        reps[support, k] = 1
    combined = np.column_stack([reps, cc.matrix]) if cc.size else reps
    solution = f2_solve(combined, _column(cc, generator))
    if solution is None:
        raise InternalInvariantError("cycle is not a combination of representatives and boundaries")
    return [int(v) for v in solution[: len(h.representatives)]]


def eh_class(
    hd: SuturedHeegaardDiagram,
    mode: CountMode = CountMode.AUTO,
    bound: Optional[int] = None,
    cc: Optional[ChainComplex] = None,
) -> EHClass:
    """
    Compute the EH class of a diagram built from a partial open book

    Args:
        hd: Diagram with distinguished points
        mode: Differential count mode
        bound: Brute-force multiplicity bound
        cc: Precomputed chain complex

    Returns:
        EHClass with cycle and nonvanishing verdicts
    """
    generator = eh_generator(hd)
    cc = cc if cc is not None else differential(hd, mode, bound)
    label = generator.label(hd)
    if not eh_is_cycle(hd, cc):
        targets = [cc.generators[i].label(hd) for i in cc.boundary(cc.index_of(generator))]
        logger.error(f"EH generator {label} has boundary {' + '.join(targets)}")
        raise InternalInvariantError(f"EH generator {label} is not a cycle")
    h = homology(cc)
    nonzero = eh_nonzero(hd, cc)
    coordinates = _coordinates(cc, h, generator) if nonzero else [0] * len(h.representatives)
    logger.info(f"EH {label}: {'nonzero' if nonzero else 'zero'}, homology dimension {h.total}")
    return EHClass(generator, label, True, nonzero, h.total, coordinates)
