"""
Exceptions - error hierarchy shared by every besmints module
Verdicts are return values; these are raised only for bad input or broken invariants
"""

from typing import Optional


class BesMintsError(Exception):
    """Base class for all library errors"""

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class FormulaSyntaxError(BesMintsError):
    """Formula text does not match the grammar"""

    def __init__(self, message: str, offset: int, expected: Optional[str] = None):
        detail = f"{message} at byte {offset}"
        if expected:
            detail += f" (expected {expected})"
        super().__init__(detail)
        self.offset = offset
        self.expected = expected


class ReservedTokenError(BesMintsError):
    """The absurdity token appears where a basic sentence is required"""


class BaseSyntaxError(BesMintsError):
    """A base file line does not match the rule format"""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class NotNormalizedError(BesMintsError):
    """Absurdity occurs outside implication-conclusion position"""


class OutsideDomainError(BesMintsError):
    """A formula is atomic or not a subformula of the flattened one"""


class SchematicClauseError(BesMintsError):
    """A clause system still holds schematic templates"""


class EmptyUniverseError(BesMintsError):
    """Instantiation was requested over an empty atom universe"""


class FragmentError(BesMintsError):
    """A goal falls outside the conjunction/implication fragment"""


class BoundsError(BesMintsError):
    """A bounded-evaluation query mentions atoms outside its universe"""


class MalformedDerivationError(BesMintsError):
    """A derivation tree does not replay"""


class ConfigurationError(BesMintsError):
    """Settings could not be loaded"""
