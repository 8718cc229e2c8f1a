"""
Homology of the F2 chain complex
"""
import logging
from dataclasses import dataclass
from typing import List

import numpy as np

from app.core.errors import InternalInvariantError
from app.core.floer.differential import ChainComplex, check_square_zero
from app.core.floer.linalg import f2_in_span, f2_kernel, f2_rank

logger = logging.getLogger(__name__)


@dataclass
class Homology:
    total: int
    class_dimensions: List[int]
    representatives: List[List[int]]


def _representatives(block: np.ndarray) -> List[np.ndarray]:
    """Cycles spanning kernel / image of one block"""
    chosen: List[np.ndarray] = []
    span = [block[:, j] for j in range(block.shape[1]) if block[:, j].any()]
    for cycle in f2_kernel(block):
        columns = np.column_stack(span) if span else np.zeros((block.shape[0], 0), dtype=np.uint8)
        if f2_in_span(columns, cycle):
            continue
        chosen.append(cycle)
        span.append(cycle)
    return chosen


def homology(cc: ChainComplex) -> Homology:
    """
    Dimensions over F2, per Spin^c class, with representative cycles

    Args:
        cc: Chain complex with the boundary map squaring to zero

    Returns:
        Total dimension, class dimensions in class order and representatives
        as lists of generator indices
    """
    check_square_zero(cc.matrix)
    dims = []
    representatives: List[List[int]] = []
    for members in cc.classes:
        block = cc.matrix[np.ix_(members, members)]
        rank = f2_rank(block)
        dim = len(members) - 2 * rank
        if dim < 0:
            raise InternalInvariantError(f"negative homology dimension in class {members}")
        cycles = _representatives(block)
        if len(cycles) != dim:
            raise InternalInvariantError(f"found {len(cycles)} representatives for dimension {dim}")
        for cycle in cycles:
            representatives.append([members[k] for k in np.nonzero(cycle)[0]])
        dims.append(dim)
    total = sum(dims)
    off_block = cc.matrix.copy()
    for members in cc.classes:
        off_block[np.ix_(members, members)] = 0
    if off_block.any():
        raise InternalInvariantError("boundary map mixes Spin^c classes")
    if total != cc.size - 2 * f2_rank(cc.matrix):
        raise InternalInvariantError("class dimensions do not add up")
    logger.debug(f"Homology dimension {total}, classes {dims}")
    return Homology(total, dims, representatives)
