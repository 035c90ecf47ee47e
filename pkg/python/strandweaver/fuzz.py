"""Seeded random generators for diagrams, matrices and parameters.

Every function takes an explicit :class:`random.Random`, so results are
reproducible from the seed alone.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import List

from .diagram import Compose, Diagram, Generator, GeneratorKind, Id, Tensor, whisker
from .errors import DimensionError
from .matrix import StochasticMatrix
from .synthesis import ColumnSpec

DEFAULT_SEED = 0
DEFAULT_INSTANTIATIONS = 20
DEFAULT_MAX_DENOMINATOR = 12


def random_probability(rng: random.Random, max_denominator: int = DEFAULT_MAX_DENOMINATOR) -> Fraction:
    """A fraction ``p/q`` with ``1 <= q <= max_denominator`` and ``0 <= p <= q``."""
    q = rng.randint(1, max_denominator)
    return Fraction(rng.randint(0, q), q)


def random_generator(rng: random.Random, max_denominator: int = DEFAULT_MAX_DENOMINATOR) -> Generator:
    kind = rng.choice(list(GeneratorKind))
    if kind is GeneratorKind.C:
        return Generator(kind, random_probability(rng, max_denominator))
    return Generator(kind)


def random_column(rng: random.Random, rows: int,
                  max_denominator: int = DEFAULT_MAX_DENOMINATOR) -> List[Fraction]:
    """Non-negative weights normalized to sum one; zeros are common on purpose."""
    if rows < 1:
        raise DimensionError("a column needs at least one row")
    weights = [rng.choice((0, rng.randint(0, max_denominator))) for _ in range(rows)]
    if not any(weights):
        weights[rng.randrange(rows)] = 1
    total = sum(weights)
    return [Fraction(w, total) for w in weights]


def random_stochastic_matrix(rng: random.Random, rows: int, cols: int,
                             max_denominator: int = DEFAULT_MAX_DENOMINATOR) -> StochasticMatrix:
    if rows == 0:
        if cols:
            raise DimensionError(f"no stochastic 0 x {cols} matrix exists")
        return StochasticMatrix.empty(0)
    columns = [random_column(rng, rows, max_denominator) for _ in range(cols)]
    return StochasticMatrix.from_columns(columns, rows=rows)


def random_column_spec(rng: random.Random, n: int,
                       max_denominator: int = DEFAULT_MAX_DENOMINATOR) -> ColumnSpec:
    return ColumnSpec(tuple(random_probability(rng, max_denominator) for _ in range(n - 1)), n)


def _random_layer(rng: random.Random, dom: int, max_width: int, max_denominator: int) -> Diagram:
    lam = random_probability(rng, max_denominator)
    choices = [
        gen
        for gen in (Generator(kind, lam if kind is GeneratorKind.C else None) for kind in GeneratorKind)
        if gen.dom <= dom and dom - gen.dom + gen.cod <= max_width
    ]
    if not choices:
        return Id(dom)
    gen = rng.choice(choices)
    left = rng.randint(0, dom - gen.dom)
    return whisker(left, gen, dom - gen.dom - left)


def random_diagram(rng: random.Random, dom: int, budget: int = 8, max_width: int = 4,
                   max_denominator: int = DEFAULT_MAX_DENOMINATOR) -> Diagram:
    """A random term on *dom* inputs with at most about *budget* generators.

    The tree mixes tensor and composition splits so printing and flattening
    meet nested shapes, and strand counts stay within ``max(dom, max_width)``.
    """
    max_width = max(max_width, dom)
    if budget <= 1:
        if rng.random() < 0.2:
            return Id(dom)
        return _random_layer(rng, dom, max_width, max_denominator)
    first = rng.randint(1, budget - 1)
    if dom >= 2 and rng.random() < 0.4:
        split = rng.randint(1, dom - 1)
        left = random_diagram(rng, split, first, max_width - (dom - split), max_denominator)
        right_width = max_width - left.cod
        right = random_diagram(rng, dom - split, budget - first, max(right_width, dom - split),
                               max_denominator)
        return Tensor(left, right)
    before = random_diagram(rng, dom, first, max_width, max_denominator)
    after = random_diagram(rng, before.cod, budget - first, max_width, max_denominator)
    return Compose(after, before)


__all__ = [
    "DEFAULT_SEED",
    "DEFAULT_INSTANTIATIONS",
    "DEFAULT_MAX_DENOMINATOR",
    "random_probability",
    "random_generator",
    "random_column",
    "random_stochastic_matrix",
    "random_column_spec",
    "random_diagram",
]
