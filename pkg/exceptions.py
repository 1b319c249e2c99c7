"""
Exceptions Module
Error types raised by the describing-sentence toolkit
"""
from typing import Optional


class DescribeError(Exception):
    """Base class for all toolkit errors"""


class FormulaSyntaxError(DescribeError):
    """Malformed S-expression formula text"""

    def __init__(self, position: int, expected: str, found: Optional[str] = None):
        self.position = position
        self.expected = expected
        self.found = found
        where = "end-of-input" if found is None else repr(found)
        super().__init__(f"syntax error at position {position}: expected {expected}, found {where}")


class ArityError(FormulaSyntaxError):
    """Wrong number of arguments to a term or formula constructor"""


class WordIndexError(DescribeError):
    """A word letter references a generator that has no assigned element"""


class NotGenerating(DescribeError):
    """The given elements do not generate the group"""


class OddPermutation(DescribeError):
    """An even permutation was required"""


class BaseMissing(DescribeError):
    """The base 3-cycle is not among the generators"""


class SizeLimit(DescribeError):
    """Input exceeds the configured desk-scale limit"""


class PresentationFails(DescribeError):
    """Relators do not vanish or the assignment does not generate the target"""


class NotSimple(DescribeError):
    """The target group is not simple"""


class DiameterExceeded(DescribeError):
    """The Cayley diameter is larger than 2^v"""


class UnboundVariable(DescribeError):
    """A free variable of the formula has no value in the environment"""


class NotClosed(DescribeError):
    """A sentence was required but the formula has free variables"""


class BudgetExceeded(DescribeError):
    """Model checking visited more nodes than the configured budget"""


class NotNormalizing(DescribeError):
    """The permutation does not normalise the regular representation"""


class CatalogError(DescribeError):
    """Invalid catalog recipe"""


class InvalidGroupTable(DescribeError):
    """The multiplication table does not define a group"""


class InvariantViolation(DescribeError):
    """A computed result failed its own post-condition"""


class ArtifactError(DescribeError):
    """Malformed input or output file"""
