"""
Gluing inclusions between sutured Floer complexes

Removing the first k-1 curves of each family from a diagram leaves a
sub-diagram on the same surface. When the removed curves meet in a
recognized pattern, their intersection is pinned to fixed points and every
generator y' of the sub-diagram maps to (x_1, ..., x_{k-1}, y').
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from app.core.contact.eh import eh_generator
from app.core.errors import PatternError
from app.core.floer.differential import ChainComplex, CountMode, differential
from app.core.floer.generators import Generator
from app.core.floer.homology import homology
from app.core.floer.linalg import f2_kernel, f2_rank
from app.core.openbook.heegaard import SuturedHeegaardDiagram
from app.core.surface.arrangement import arrangement

logger = logging.getLogger(__name__)

SEQUENTIAL = "sequential"
LOCAL_2X2 = "local-2x2"


@dataclass
class GlueReport:
    pattern: str
    k: int
    pinned: List[str]
    sub_dimension: int
    big_dimension: int
    chain_map: bool
    injective: bool
    block_summand: bool
    eh_mapped: Optional[bool] = None
    images: Dict[str, str] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.chain_map and self.injective and self.block_summand and self.eh_mapped is not False


def _meets(hd: SuturedHeegaardDiagram, alpha: str, beta: str) -> List[int]:
    return [c.id for c in hd.crossings if hd.curve_pair(c.id) == (alpha, beta)]


def sub_diagram(hd: SuturedHeegaardDiagram, alphas: Sequence[str], betas: Sequence[str]) -> SuturedHeegaardDiagram:
    """
    Diagram on the same surface keeping only the named curves

    Point labels carry over from hd.
    """
    keep = set(alphas) | set(betas)
    curves = [c for c in hd.layout.curves if c.name in keep]
    layout = arrangement(hd.sigma, curves)
    big_ids = {
        (c.polygon, c.alpha, c.alpha_index, c.beta, c.beta_index): c.id for c in hd.crossings
    }
    names = {
        c.id: hd.point(big_ids[(c.polygon, c.alpha, c.alpha_index, c.beta, c.beta_index)])
        for c in layout.crossings
    }
    sub = SuturedHeegaardDiagram(
        sigma=hd.sigma,
        alphas=list(alphas),
        betas=list(betas),
        layout=layout,
        point_names=names,
        source=hd.source,
        corner_sign=hd.corner_sign,
        orientation=hd.orientation,
    )
    if hd.distinguished is not None:
        by_name = {label: cid for cid, label in names.items()}
        kept = {a: by_name.get(hd.point(hd.distinguished[a])) for a in alphas}
        if all(cid is not None for cid in kept.values()):
            sub.distinguished = kept
    return sub


def _pattern(hd: SuturedHeegaardDiagram, removed_a: List[str], removed_b: List[str]) -> str:
    """
    Classify how the removed curves meet

    SEQUENTIAL: alpha_i misses beta_j whenever j > i. LOCAL_2X2: two curves of
    each family, the handle pattern where every removed alpha meets both
    removed betas.
    """
    kept_b = [b for b in hd.betas if b not in removed_b]
    for a in removed_a:
        for b in kept_b:
            if _meets(hd, a, b):
                raise PatternError(f"{a} is removed but meets the kept curve {b}")
    lower = all(
        not _meets(hd, a, b)
        for i, a in enumerate(removed_a)
        for j, b in enumerate(removed_b)
        if j > i
    )
    if lower:
        return SEQUENTIAL
    if len(removed_a) == 2:
        missing = [(a, b) for a in removed_a for b in removed_b if not _meets(hd, a, b)]
        if not missing:
            return LOCAL_2X2
        a, b = missing[0]
        raise PatternError(f"{a} misses {b}, so the removed curves do not form the local 2x2 pattern")
    raise PatternError("removed curves meet in neither the sequential nor the local 2x2 pattern")


def _pinned(
    hd: SuturedHeegaardDiagram, removed_a: List[str], removed_b: List[str], pinned: Optional[Sequence[str]]
) -> List[int]:
    if pinned:
        if len(pinned) != len(removed_a):
            raise PatternError(f"{len(pinned)} pinned points for {len(removed_a)} removed curves")
        points = [hd.crossing_named(p) for p in pinned]
    else:
        points = []
        for a, b in zip(removed_a, removed_b):
            candidates = _meets(hd, a, b)
            if hd.distinguished is not None and hd.distinguished.get(a) in candidates:
                points.append(hd.distinguished[a])
            elif len(candidates) == 1:
                points.append(candidates[0])
            else:
                raise PatternError(f"{a} meets {b} in {len(candidates)} points; name the pinned point")
    for cid, a, b in zip(points, removed_a, removed_b):
        if hd.curve_pair(cid) != (a, b):
            raise PatternError(f"pinned point {hd.point(cid)} is not on {a} and {b}")
    return points


def _inclusion(
    big: SuturedHeegaardDiagram, sub: SuturedHeegaardDiagram, cc_big: ChainComplex,
    cc_sub: ChainComplex, pinned: List[int],
) -> np.ndarray:
    order = {name: k for k, name in enumerate(big.alphas)}
    matrix = np.zeros((cc_big.size, cc_sub.size), dtype=np.uint8)
    for j, g in enumerate(cc_sub.generators):
        points = list(pinned) + [big.crossing_named(sub.point(p)) for p in g.points]
        points.sort(key=lambda cid: order[big.curve_pair(cid)[0]])
        image = Generator(tuple(points))
        if image not in cc_big.generators:
            raise PatternError(f"{g.label(sub)} has no image generator")
        matrix[cc_big.index_of(image), j] = 1
    return matrix


def _class_rank(boundaries: np.ndarray, cycles: np.ndarray) -> int:
    """Dimension of the span of cycles modulo boundaries"""
    if cycles.shape[1] == 0:
        return 0
    return f2_rank(np.column_stack([boundaries, cycles])) - f2_rank(boundaries)


def glue_inclusion_check(
    hd_big: SuturedHeegaardDiagram,
    k: int,
    pinned: Optional[Sequence[str]] = None,
    mode: CountMode = CountMode.AUTO,
    bound: Optional[int] = None,
) -> GlueReport:
    """
    Build and verify the inclusion of the sub-diagram complex

    Args:
        hd_big: Diagram whose first k-1 alpha and beta curves are removed
        k: One more than the number of removed curves per family
        pinned: Names of the pinned points (default: distinguished or unique)
        mode: Differential count mode for both diagrams
        bound: Brute-force multiplicity bound

    Returns:
        GlueReport with chain-map, injectivity and summand verdicts
    """
    removed = k - 1
    if removed < 0 or removed > len(hd_big.alphas):
        raise PatternError(f"k={k} is out of range for {len(hd_big.alphas)} curves")
    removed_a, removed_b = hd_big.alphas[:removed], hd_big.betas[:removed]
    pattern = _pattern(hd_big, removed_a, removed_b)
    points = _pinned(hd_big, removed_a, removed_b, pinned)
    sub = sub_diagram(hd_big, hd_big.alphas[removed:], hd_big.betas[removed:])

    cc_big = differential(hd_big, mode, bound)
    cc_sub = differential(sub, mode, bound)
    phi = _inclusion(hd_big, sub, cc_big, cc_sub, points)
    big_m = cc_big.matrix.astype(np.int64)
    sub_m = cc_sub.matrix.astype(np.int64)
    chain_map = bool(np.array_equal((big_m @ phi) % 2, (phi @ sub_m) % 2))

    h_big = homology(cc_big)
    h_sub = homology(cc_sub)
    kernel = f2_kernel(cc_sub.matrix)
    cycles = np.column_stack(kernel) if kernel else np.zeros((cc_sub.size, 0), dtype=np.uint8)
    image_dim = _class_rank(cc_big.matrix, (phi.astype(np.int64) @ cycles.astype(np.int64)) % 2)
    injective = image_dim == h_sub.total

    rows = np.nonzero(phi.any(axis=1))[0]
    outside = [i for i in range(cc_big.size) if i not in set(rows)]
    block = not cc_big.matrix[np.ix_(rows, outside)].any() if len(rows) and outside else True

    eh_mapped = None
    if hd_big.distinguished is not None and sub.distinguished is not None:
        source = eh_generator(sub)
        target = cc_big.index_of(eh_generator(hd_big))
        mapped = phi[:, cc_sub.index_of(source)].astype(np.int64)
        mapped[target] ^= 1
        eh_mapped = _class_rank(cc_big.matrix, mapped.reshape(-1, 1)) == 0

    images = {
        g.label(sub): cc_big.generators[int(np.nonzero(phi[:, j])[0][0])].label(hd_big)
        for j, g in enumerate(cc_sub.generators)
    }
    report = GlueReport(
        pattern=pattern,
        k=k,
        pinned=[hd_big.point(p) for p in points],
        sub_dimension=h_sub.total,
        big_dimension=h_big.total,
        chain_map=chain_map,
        injective=injective,
        block_summand=bool(block),
        eh_mapped=eh_mapped,
        images=images,
    )
    logger.info(
        f"Glue check k={k} ({pattern}): dim {h_sub.total} -> {h_big.total}, "
        f"chain map {chain_map}, injective {injective}"
    )
    return report


def curve_blocks(hd: SuturedHeegaardDiagram) -> List[Tuple[List[str], List[str]]]:
    """Connected components of the alpha/beta intersection graph"""
    graph = nx.Graph()
    graph.add_nodes_from(("a", n) for n in hd.alphas)
    graph.add_nodes_from(("b", n) for n in hd.betas)
    for c in hd.crossings:
        alpha, beta = hd.curve_pair(c.id)
        graph.add_edge(("a", alpha), ("b", beta))
    blocks = []
    for component in nx.connected_components(graph):
        alphas = [n for n in hd.alphas if ("a", n) in component]
        betas = [n for n in hd.betas if ("b", n) in component]
        blocks.append((alphas, betas))
    blocks.sort(key=lambda b: hd.alphas.index(b[0][0]) if b[0] else len(hd.alphas))
    return blocks


def complementary_dimensions(
    hd: SuturedHeegaardDiagram, mode: CountMode = CountMode.AUTO, bound: Optional[int] = None
) -> Tuple[List[int], int]:
    """
    Homology dimension of every curve block on its own and their product

    Returns:
        (dimensions per block, product)
    """
    dims = []
    for alphas, betas in curve_blocks(hd):
        if len(alphas) != len(betas):
            raise PatternError(f"block {alphas} / {betas} is unbalanced")
        dims.append(homology(differential(sub_diagram(hd, alphas, betas), mode, bound)).total)
    product = math.prod(dims)
    logger.debug(f"Block dimensions {dims}, product {product}")
    return dims, product
