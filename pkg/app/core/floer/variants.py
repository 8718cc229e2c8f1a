"""
Orientation variants of a sutured Heegaard diagram

Swapping the roles of the two curve systems reverses the manifold; reversing
the surface reverses both the manifold and the suture; doing both reverses
the suture only. Each variant flips the A/B corner convention once per
operation.
"""
import logging
from dataclasses import replace
from enum import Enum
from typing import Tuple

from app.core.openbook.heegaard import SuturedHeegaardDiagram

logger = logging.getLogger(__name__)


class Variant(str, Enum):
    """Target relative to the manifold and suture the diagram presents"""
    SAME = "M,G"
    FLIP_SUTURE = "M,-G"
    FLIP_MANIFOLD = "-M,G"
    FLIP_BOTH = "-M,-G"


# (swap curve roles, reverse the surface)
_OPERATIONS = {
    Variant.SAME: (False, False),
    Variant.FLIP_SUTURE: (True, True),
    Variant.FLIP_MANIFOLD: (True, False),
    Variant.FLIP_BOTH: (False, True),
}


# Dash-free spellings for the command line
_ALIASES = {
    "same": Variant.SAME,
    "flip-suture": Variant.FLIP_SUTURE,
    "flip-manifold": Variant.FLIP_MANIFOLD,
    "flip-both": Variant.FLIP_BOTH,
}


def variant_named(text: str) -> Variant:
    """
    Variant from its value ("-M,G") or its alias ("flip-manifold")

    Raises:
        ValueError: For any other spelling
    """
    key = text.strip()
    if key.lower() in _ALIASES:
        return _ALIASES[key.lower()]
    try:
        return Variant(key.replace(" ", ""))
    except ValueError:
        spellings = ", ".join(list(_ALIASES) + [v.value for v in Variant])
        raise ValueError(f"unknown variant {text!r}; expected one of {spellings}")


def operations(which: Variant) -> Tuple[bool, bool]:
    return _OPERATIONS[Variant(which)]


def variant(hd: SuturedHeegaardDiagram, which: Variant) -> SuturedHeegaardDiagram:
    """
    Diagram for the requested orientation variant

    Args:
        hd: Diagram presenting some (M, Gamma)
        which: Relative variant; applying one twice gives back hd

    Returns:
        New diagram sharing the surface and arrangement of hd
    """
    swap, reverse = operations(which)
    manifold, suture = hd.orientation
    sign = hd.corner_sign
    alphas, betas = list(hd.alphas), list(hd.betas)
    if swap:
        alphas, betas = betas, alphas
        sign = -sign
        manifold = -manifold
    if reverse:
        sign = -sign
        manifold = -manifold
        suture = -suture
    result = replace(
        hd,
        alphas=alphas,
        betas=betas,
        corner_sign=sign,
        orientation=(manifold, suture),
        distinguished=None,
        cache={},
    )
    if hd.distinguished is not None:
        result.distinguished = {result.curve_pair(cid)[0]: cid for cid in hd.distinguished.values()}
    logger.debug(f"Variant {Variant(which).value}: orientation {result.orientation}, corner sign {sign}")
    return result
