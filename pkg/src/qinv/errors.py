"""Exception types shared across the package."""


class QinvError(Exception):
    """Base class for all package-specific errors."""


class ShapeError(QinvError):
    """Mismatched system shapes, alphabets, or permutation degrees."""


class ParseError(QinvError):
    """Base class for text-format parsing failures."""


class CycleSyntaxError(ParseError):
    """Unbalanced parentheses or junk tokens in cycle notation."""


class CycleRangeError(ParseError):
    """A cycle mentions a point outside 1..k."""


class MalformedCycleError(ParseError):
    """A point appears twice in one permutation's cycles."""


class ResourceLimitError(QinvError):
    """A computation would exceed the configured dimension budget."""


class StructureError(QinvError):
    """Invalid stabilizer generators (non-commuting or inconsistent signs)."""


class FactsError(QinvError):
    """Purity facts inconsistent with the declared code dimension."""


class NotApplicableError(QinvError):
    """An operation's applicability condition does not hold (e.g. k <= alpha)."""
