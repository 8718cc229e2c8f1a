"""
Error hierarchy for the sutured Floer toolkit

Every error carries the process exit code the CLI should use and, when the
error comes from an input file, the source location.
"""
from typing import List, Optional, Tuple


class SFHError(Exception):
    """Base class for all user-visible failures"""

    exit_code = 1

    def __init__(self, message: str, location: Optional[Tuple[int, int]] = None):
        self.message = message
        self.location = location
        super().__init__(self.__str__())

    def __str__(self) -> str:
        if self.location is None:
            return self.message
        line, column = self.location
        return f"line {line}, column {column}: {self.message}"


class ParseError(SFHError):
    """Malformed input document"""


class ComplexError(SFHError):
    """Invalid polygon complex (dangling side, self pairing, orientation)"""


class PathError(SFHError):
    """Discontinuous, non-simple or badly terminated arc or curve"""


class BasisError(SFHError):
    """Basis arcs fail the cut criterion"""


class MonodromyError(SFHError):
    """Monodromy cannot be evaluated on the requested arc"""


class MoveError(SFHError):
    """Arc slide, stabilization or bypass request that cannot be performed"""


class PatternError(SFHError):
    """Gluing split pattern absent from the diagram"""


class NotNice(SFHError):
    """Diagram has interior regions that are neither bigons nor squares"""

    def __init__(self, regions: List[int]):
        self.regions = list(regions)
        super().__init__(
            f"diagram is not nice; offending interior regions: {self.regions}. "
            "Supply isotoped images or run with --mode brute"
        )


class PropertyFailure(SFHError):
    """A property check of the self test failed"""

    exit_code = 2


class InternalInvariantError(SFHError):
    """Broken internal invariant (convention bug, never user error)"""

    exit_code = 3


class TripleCrossing(InternalInvariantError):
    """Three pairwise crossing chords inside one polygon"""
