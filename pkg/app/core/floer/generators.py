"""
Generators of the sutured Floer chain complex
"""
import logging
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from app.config.settings import get_settings
from app.core.errors import SFHError
from app.core.openbook.heegaard import SuturedHeegaardDiagram

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Generator:
    """One intersection point per alpha curve, listed in alpha order"""
    points: Tuple[int, ...]

    def label(self, hd: SuturedHeegaardDiagram) -> str:
        return "(" + ",".join(hd.point(p) for p in self.points) + ")"

    def point_set(self) -> frozenset:
        return frozenset(self.points)


def _candidates(hd: SuturedHeegaardDiagram) -> List[List[Tuple[int, str]]]:
    by_alpha: Dict[str, List[Tuple[int, str]]] = {name: [] for name in hd.alphas}
    for crossing in hd.crossings:
        alpha, beta = hd.curve_pair(crossing.id)
        by_alpha[alpha].append((crossing.id, beta))
    return [by_alpha[name] for name in hd.alphas]


def enumerate_generators(hd: SuturedHeegaardDiagram) -> List[Generator]:
    """
    All generators of the diagram

    Backtracks over the alpha curves in order, choosing one crossing on each
    so that the beta curves used are pairwise distinct.

    Args:
        hd: Sutured Heegaard diagram

    Returns:
        Generators in lexicographic order of their crossing ids
    """
    limit = get_settings().max_generators
    candidates = _candidates(hd)
    result: List[Generator] = []
    chosen: List[int] = []
    used: set = set()

    def extend(level: int) -> None:
        if level == len(candidates):
            result.append(Generator(tuple(chosen)))
            if len(result) > limit:
                raise SFHError(f"more than {limit} generators; raise SFH_MAX_GENERATORS to continue")
            return
        for cid, beta in candidates[level]:
            if beta in used:
                continue
            used.add(beta)
            chosen.append(cid)
            extend(level + 1)
            chosen.pop()
            used.discard(beta)

    extend(0)
    result.sort(key=lambda g: g.points)
    logger.debug(f"Generators: {len(result)} for r={len(hd.alphas)}")
    return result


def generator_named(hd: SuturedHeegaardDiagram, names: Sequence[str]) -> Generator:
    """Generator from point labels given in any order"""
    ids = [hd.crossing_named(n) for n in names]
    order = {name: k for k, name in enumerate(hd.alphas)}
    ids.sort(key=lambda cid: order[hd.curve_pair(cid)[0]])
    alphas = [hd.curve_pair(cid)[0] for cid in ids]
    betas = [hd.curve_pair(cid)[1] for cid in ids]
    if sorted(alphas) != sorted(hd.alphas) or sorted(betas) != sorted(hd.betas):
        raise SFHError(f"{' '.join(names)} is not a generator: every curve must be used exactly once")
    return Generator(tuple(ids))
