"""
Arcs and closed curves on a polygon complex, stored as itineraries

An arc is a start endpoint, the glued sides it exits through in order, and an
end endpoint. A closed curve is a cyclic word of exits. Endpoint positions are
exact fractions along their side; positions of interior passages are assigned
by the realization step.
"""
import logging
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from app.core.errors import PathError
from app.core.surface.complex import PolygonComplex, Side, format_side

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Endpoint:
    side: Side
    position: Fraction


@dataclass(frozen=True)
class ArcPath:
    name: str
    start: Endpoint
    exits: Tuple[Side, ...]
    end: Endpoint

    closed = False

    def polygons(self, complex_: PolygonComplex) -> List[str]:
        result = [self.start.side[0]]
        for exit_side in self.exits:
            result.append(complex_.partner(exit_side)[0])
        return result

    def reversed(self, complex_: PolygonComplex) -> "ArcPath":
        exits = tuple(complex_.partner(e) for e in reversed(self.exits))
        return ArcPath(self.name, self.end, exits, self.start)

    def renamed(self, name: str) -> "ArcPath":
        return replace(self, name=name)


@dataclass(frozen=True)
class CurvePath:
    name: str
    exits: Tuple[Side, ...]

    closed = True

    def polygons(self, complex_: PolygonComplex) -> List[str]:
        return [e[0] for e in self.exits]

    def reversed(self, complex_: PolygonComplex) -> "CurvePath":
        return CurvePath(self.name, tuple(complex_.partner(e) for e in reversed(self.exits)))


Path = Union[ArcPath, CurvePath]


@dataclass(frozen=True)
class Visit:
    """One chord of a path: the polygon and the sides it enters and leaves by"""
    polygon: str
    entry: int
    exit: int
    entry_position: Optional[Fraction]
    exit_position: Optional[Fraction]


def visits(path: Path, complex_: PolygonComplex) -> List[Visit]:
    """
    Chords of a path in traversal order

    Passage positions are left as None; endpoint positions are filled in.
    """
    result: List[Visit] = []
    if isinstance(path, ArcPath):
        entry_side, entry_pos = path.start.side, path.start.position
        for exit_side in path.exits:
            result.append(Visit(entry_side[0], entry_side[1], exit_side[1], entry_pos, None))
            entry_side, entry_pos = complex_.partner(exit_side), None
        result.append(Visit(entry_side[0], entry_side[1], path.end.side[1], entry_pos, path.end.position))
        return result
    words = path.exits
    for k, exit_side in enumerate(words):
        previous = complex_.partner(words[k - 1])
        result.append(Visit(exit_side[0], previous[1], exit_side[1], None, None))
    return result


def check_path(path: Path, complex_: PolygonComplex, pinned: bool = False) -> None:
    """
    Continuity and endpoint checks

    Args:
        path: Arc or closed curve
        complex_: Ambient complex
        pinned: Allow arc endpoints on glued sides
    """
    name = path.name
    if isinstance(path, ArcPath):
        for endpoint in (path.start, path.end):
            complex_.check_side(endpoint.side)
            if not pinned and not complex_.is_boundary(endpoint.side):
                raise PathError(f"{name}: endpoint on {format_side(endpoint.side)} is not on a boundary side")
            if not 0 < endpoint.position < 1:
                raise PathError(f"{name}: endpoint position {endpoint.position} outside (0, 1)")
        current = path.start.side[0]
        targets = list(path.exits) + [path.end.side]
    else:
        if not path.exits:
            raise PathError(f"{name}: closed curve with empty itinerary")
        first = path.exits[0]
        complex_.check_side(first)
        last = path.exits[-1]
        complex_.check_side(last)
        if complex_.is_boundary(last):
            raise PathError(f"{name}: exit {format_side(last)} is a boundary side")
        current = complex_.partner(last)[0]
        targets = list(path.exits)

    for k, side in enumerate(targets):
        complex_.check_side(side)
        if side[0] != current:
            raise PathError(
                f"{name}: discontinuous at step {k}: {format_side(side)} is not a side of {current}"
            )
        is_exit = isinstance(path, CurvePath) or k < len(targets) - 1
        if is_exit:
            other = complex_.partner(side)
            if other is None:
                raise PathError(f"{name}: exit {format_side(side)} is a boundary side")
            current = other[0]

    for visit in visits(path, complex_):
        if visit.entry == visit.exit and visit.entry_position is None and visit.exit_position is None:
            raise PathError(f"{name}: enters and leaves {visit.polygon} through the same side")


def free_reduce(path: Path, complex_: PolygonComplex) -> Path:
    """
    Cancel every exit immediately followed by its partner

    On an ideal complex this removes all bigons between the path and the
    glued sides, which puts arcs and curves in minimal position.
    """
    stack: List[Side] = []
    for exit_side in path.exits:
        if stack and complex_.partner(stack[-1]) == exit_side:
            stack.pop()
        else:
            stack.append(exit_side)
    if isinstance(path, ArcPath):
        return replace(path, exits=tuple(stack))
    while len(stack) >= 2 and complex_.partner(stack[-1]) == stack[0]:
        stack = stack[1:-1]
    if not stack:
        raise PathError(f"{path.name}: closed curve is null-homotopic")
    return CurvePath(path.name, tuple(stack))


def concatenate(name: str, first: ArcPath, middle: Sequence[Side], second: ArcPath) -> ArcPath:
    """Arc running along first, through the extra exits, then along second"""
    return ArcPath(name, first.start, tuple(first.exits) + tuple(middle) + tuple(second.exits), second.end)


def same_arc(first: ArcPath, second: ArcPath) -> bool:
    return first.start == second.start and first.end == second.end and first.exits == second.exits


def cyclic_equal(first: CurvePath, second: CurvePath) -> bool:
    """Equality of closed curves up to the choice of starting exit"""
    a, b = first.exits, second.exits
    if len(a) != len(b):
        return False
    if not a:
        return True
    doubled = b + b
    return any(doubled[k:k + len(a)] == a for k in range(len(b)))
