"""
Exception hierarchy for the Schubert GIT kit.
Every error is a ValueError so callers that only catch ValueError keep working.
"""

from typing import Optional, Tuple


class SgkError(ValueError):
    """Base class for all library errors"""


class IndexRangeError(SgkError):
    """Root, weight, column or coweight index outside its valid range"""


class RankMismatchError(SgkError):
    """Operands built for different ranks or different (r, q)"""


class DatumInvariantError(SgkError):
    """A structural invariant failed its eager check"""


class PatternViolationError(SgkError):
    """Matrix does not match the pinned/zero pattern of the Schubert cell chart"""

    def __init__(self, row: int, col: int, found: str, expected: str):
        self.row = row
        self.col = col
        self.found = found
        self.expected = expected
        super().__init__(f"entry ({row},{col}) is {found}, expected {expected}")


class OutsideChartError(SgkError):
    """A chart function met a vanishing coordinate"""

    def __init__(self, message: str, position: Optional[Tuple[int, int]] = None):
        self.position = position
        super().__init__(message if position is None else f"{message} at a_{position}")


class FieldMismatchError(SgkError):
    """Operands over different scalar fields, or an invalid field description"""


class ConfigError(SgkError):
    """Invalid suite configuration or configuration file"""


class MalformedInputError(SgkError):
    """Input document could not be parsed"""


class NotSemistableError(SgkError):
    """Operation requires a semistable point"""

    def __init__(self, column: int):
        self.column = column
        super().__init__(f"point is not semistable: column {column} has no nonzero coordinate")


__all__ = [
    "SgkError", "IndexRangeError", "RankMismatchError", "DatumInvariantError",
    "PatternViolationError", "OutsideChartError", "FieldMismatchError",
    "ConfigError", "MalformedInputError", "NotSemistableError",
]
