"""Evaluation of diagrams to stochastic matrices and token sampling.

:func:`evaluate` is the structure-preserving functor: identities go to unit
matrices, generators to their fixed matrices, tensor to block sums and
composition to products.  :func:`eval_slices` computes the same matrix
slice by slice, and :class:`TokenWalker` follows a single token down the
strands, branching at every ``c(λ)``.  The three paths are independent so
they can be tested against each other.
"""

from __future__ import annotations

import functools
import logging
import random
from fractions import Fraction
from typing import Dict, List, Sequence, Union

from .diagram import Compose, Diagram, Gen, Generator, GeneratorKind, Id, SliceForm, Tensor, to_slices
from .errors import IndexRangeError, NoInputError
from .matrix import ONE, ZERO, StochasticMatrix, block_diag, multiply

_logger = logging.getLogger(__name__)


@functools.lru_cache(maxsize=None)
def generator_matrix(gen: Generator) -> StochasticMatrix:
    if gen.kind is GeneratorKind.DEL:
        return StochasticMatrix.empty(1)
    if gen.kind is GeneratorKind.E:
        return StochasticMatrix([[ONE, ONE]])
    if gen.kind is GeneratorKind.S:
        return StochasticMatrix([[ZERO, ONE], [ONE, ZERO]])
    return StochasticMatrix([[gen.param], [ONE - gen.param]])


def evaluate(d: Diagram) -> StochasticMatrix:
    """The ``cod x dom`` matrix denoted by *d*.

    Examples
    --------
    >>> from strandweaver.diagram import c
    >>> evaluate(c("1/3")).to_rows()
    [[Fraction(1, 3)], [Fraction(2, 3)]]
    """
    results: Dict[int, StochasticMatrix] = {}
    stack = [(d, False)]
    while stack:
        node, expanded = stack.pop()
        key = id(node)
        if key in results:
            continue
        if isinstance(node, Id):
            results[key] = StochasticMatrix.identity(node.n)
        elif isinstance(node, Gen):
            results[key] = generator_matrix(node.gen)
        elif not expanded:
            stack.append((node, True))
            if isinstance(node, Tensor):
                stack.extend(((node.left, False), (node.right, False)))
            else:
                stack.extend(((node.after, False), (node.before, False)))
        elif isinstance(node, Tensor):
            results[key] = block_diag(results[id(node.left)], results[id(node.right)])
        elif isinstance(node, Compose):
            results[key] = multiply(results[id(node.after)], results[id(node.before)])
        else:
            raise TypeError(f"not a diagram: {node!r}")
    return results[id(d)]


def _apply_local(gen: Generator, values: Sequence[Fraction]) -> List[Fraction]:
    kind = gen.kind
    if kind is GeneratorKind.DEL:
        return [ZERO]
    if kind is GeneratorKind.E:
        return [values[0] + values[1]]
    if kind is GeneratorKind.S:
        return [values[1], values[0]]
    return [gen.param * values[0], (ONE - gen.param) * values[0]]


def eval_slices(s: SliceForm) -> StochasticMatrix:
    """Evaluate a slice form by pushing every input column through the slices."""
    columns = [[ONE if i == j else ZERO for i in range(s.dom)] for j in range(s.dom)]
    for sl in s.slices:
        k, gen = sl.left, sl.gen
        stop = k + gen.dom
        columns = [v[:k] + _apply_local(gen, v[k:stop]) + v[stop:] for v in columns]
    return StochasticMatrix.from_columns(columns, rows=s.cod)


class TokenWalker:
    """Follow one token through a slice form.

    ``s`` swaps the token, ``e`` merges it, ``del`` only shifts positions and
    ``c(p/q)`` sends it left when an integer drawn from ``[0, q)`` is below
    ``p``.
    """

    def __init__(self, slices: SliceForm):
        self.slices = slices

    def run(self, position: int, rng: random.Random) -> int:
        """Walk from input *position* (1-based) and return the output position."""
        p = position - 1
        for sl in self.slices.slices:
            gen = sl.gen
            if p < sl.left:
                continue
            if p >= sl.left + gen.dom:
                p += gen.cod - gen.dom
                continue
            local = p - sl.left
            if gen.kind is GeneratorKind.S:
                local = 1 - local
            elif gen.kind is GeneratorKind.E:
                local = 0
            else:
                lam = gen.param
                local = 0 if rng.randrange(lam.denominator) < lam.numerator else 1
            p = sl.left + local
        return p + 1


def _walker(d: Union[Diagram, SliceForm], input: int) -> TokenWalker:
    slices = d if isinstance(d, SliceForm) else to_slices(d)
    if slices.dom == 0:
        raise NoInputError("the diagram has no input strands to sample from")
    if not 1 <= input <= slices.dom:
        raise IndexRangeError(f"input {input} out of range 1..{slices.dom}")
    return TokenWalker(slices)


def sample(d: Union[Diagram, SliceForm], input: int, rng_seed: int) -> int:
    """One output strand (1-based) for a token entering at *input*."""
    return _walker(d, input).run(input, random.Random(rng_seed))


def sample_counts(
    d: Union[Diagram, SliceForm], input: int, count: int, seed: int
) -> List[int]:
    """Histogram of *count* samples from one seeded stream, indexed by output - 1."""
    walker = _walker(d, input)
    rng = random.Random(seed)
    hits = [0] * walker.slices.cod
    for _ in range(count):
        hits[walker.run(input, rng) - 1] += 1
    _logger.debug("sampled %d tokens from input %d: %s", count, input, hits)
    return hits


def total_variation(counts: Sequence[int], column: StochasticMatrix) -> Fraction:
    """Half the L1 distance between the empirical and the exact distribution."""
    total = sum(counts)
    if total == 0:
        raise ValueError("no samples")
    expected = [column[i, 0] for i in range(column.rows)]
    if len(expected) != len(counts):
        raise ValueError("histogram and column have different lengths")
    return sum(
        (abs(Fraction(n, total) - p) for n, p in zip(counts, expected)), ZERO
    ) / 2


__all__ = [
    "generator_matrix",
    "evaluate",
    "eval_slices",
    "TokenWalker",
    "sample",
    "sample_counts",
    "total_variation",
]
