"""Exception hierarchy for :mod:`strandweaver`.

Every error derives from :class:`StrandweaverError` and from the builtin a
caller would naturally catch (mostly :class:`ValueError`).
"""

from __future__ import annotations


class StrandweaverError(Exception):
    """Base class of all library errors."""


class DimensionError(StrandweaverError, ValueError):
    """Matrix or diagram shapes do not fit together."""


class StochasticityError(StrandweaverError, ValueError):
    """A matrix column is negative somewhere or does not sum to one.

    ``column`` is 1-based, ``None`` when the problem is not column-local.
    """

    def __init__(self, message: str, column: int | None = None):
        super().__init__(message)
        self.column = column


class ParameterDomainError(StrandweaverError, ValueError):
    """A probability parameter lies outside ``[0, 1]`` or an arity is negative."""


class CompositionError(StrandweaverError, ValueError):
    """``compose(after, before)`` with ``before.cod != after.dom``."""


class IndexRangeError(StrandweaverError, IndexError):
    """A 1-based strand or column index is out of range."""


class ParseError(StrandweaverError, ValueError):
    """Diagram expression text could not be parsed.

    ``position`` is the 0-based character offset of the offending token.
    """

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class SynthesisError(StrandweaverError, ValueError):
    """No diagram exists for the requested shape, such as a column cascade with no outputs."""


class NoInputError(StrandweaverError, ValueError):
    """Sampling was asked for a diagram without input strands."""


class InvalidRedexError(StrandweaverError, ValueError):
    """A redex no longer matches the slice form it is applied to."""


class RuleSoundnessError(StrandweaverError, AssertionError):
    """A rule's two sides evaluate to different matrices."""


__all__ = [
    "StrandweaverError",
    "DimensionError",
    "StochasticityError",
    "ParameterDomainError",
    "CompositionError",
    "IndexRangeError",
    "ParseError",
    "SynthesisError",
    "NoInputError",
    "InvalidRedexError",
    "RuleSoundnessError",
]
