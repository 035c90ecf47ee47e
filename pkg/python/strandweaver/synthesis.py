"""From matrices back to diagrams, and normalization by evaluation.

A column ``(μ_1, ..., μ_{n-1}, η_n)`` is produced by the cascade
:func:`~strandweaver.constructions.column_diagram` with

    λ_j = μ_j / (1 - μ_1 - ... - μ_{j-1}),

where a vanishing residual mass makes ``λ_j`` arbitrary; we always pick
:data:`FILLER`.  A general matrix is the coalescer ``p(m, n)`` after the
tensor product of its column cascades.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Tuple

from .constructions import column_diagram, del_power, iota, p
from .diagram import Compose, Diagram, Id, tensor_all
from .errors import DimensionError, SynthesisError
from .matrix import ONE, ZERO, StochasticMatrix, probability
from .semantics import evaluate

_logger = logging.getLogger(__name__)

FILLER = Fraction(0)


@dataclass(frozen=True)
class ColumnSpec:
    """Parameters ``λ_1 .. λ_{n-1}`` of a column cascade with ``n`` outputs."""

    lambdas: Tuple[Fraction, ...]
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise SynthesisError(f"no diagram maps one strand to {self.n} strands")
        lambdas = tuple(probability(lam) for lam in self.lambdas)
        if len(lambdas) != self.n - 1:
            raise DimensionError(
                f"a column of height {self.n} needs {self.n - 1} parameters, got {len(lambdas)}"
            )
        object.__setattr__(self, "lambdas", lambdas)

    def column(self) -> List[Fraction]:
        """Entries ``μ_j = λ_j (1-λ_{j-1}) ... (1-λ_1)`` and ``η_n``."""
        entries = []
        rest = ONE
        for lam in self.lambdas:
            entries.append(lam * rest)
            rest *= ONE - lam
        entries.append(rest)
        return entries

    def diagram(self) -> Diagram:
        return column_diagram(self.lambdas, self.n)

    @property
    def is_canonical(self) -> bool:
        """No parameter after an exhausted residual differs from :data:`FILLER`."""
        rest = ONE
        for lam in self.lambdas:
            if rest == ZERO and lam != FILLER:
                return False
            rest *= ONE - lam
        return True

    def canonical(self) -> "ColumnSpec":
        return synth_column(StochasticMatrix.from_columns([self.column()]))


def synth_column(col: StochasticMatrix) -> ColumnSpec:
    """Canonical :class:`ColumnSpec` of an ``n x 1`` matrix.

    A stochastic column always has at least one row, so only the column
    count needs checking here.

    Raises
    ------
    DimensionError
        If *col* does not have exactly one column.
    """
    if col.cols != 1:
        raise DimensionError(f"expected a single column, got {col.cols} columns")
    lambdas = []
    rest = ONE
    for j in range(col.rows - 1):
        mu = col[j, 0]
        if rest == ZERO:
            _logger.debug("residual exhausted before row %d, using filler", j + 1)
            lambdas.append(FILLER)
            continue
        lambdas.append(mu / rest)
        rest -= mu
    return ColumnSpec(tuple(lambdas), col.rows)


def synth_matrix(a: StochasticMatrix) -> Diagram:
    """A diagram whose value is exactly *a*.

    * no columns: ``del * ... * del`` (``id(0)`` for the ``0 x 0`` matrix),
    * one column: the bare column cascade,
    * otherwise ``p(cols, rows) ∘ (column_1 * ... * column_m)``.

    Examples
    --------
    >>> from strandweaver.expr_parser import format_diagram
    >>> format_diagram(synth_matrix(StochasticMatrix([["1/2"], ["1/3"], ["1/6"]])))
    'c(1/2) ; (id(1) * c(2/3))'
    """
    if a.cols == 0:
        return del_power(a.rows)
    columns = [synth_column(col).diagram() for col in a.columns()]
    if a.cols == 1:
        return columns[0]
    return Compose(p(a.cols, a.rows), tensor_all(columns))


def normalize(d: Diagram) -> Diagram:
    """Canonical representative of *d*: synthesize its value back."""
    return synth_matrix(evaluate(d))


def equal(d1: Diagram, d2: Diagram) -> bool:
    if (d1.dom, d1.cod) != (d2.dom, d2.cod):
        return False
    return evaluate(d1) == evaluate(d2)


def columns_of(d: Diagram) -> List[Diagram]:
    """The one-input diagrams ``d ∘ iota(j, dom)`` for ``j = 1 .. dom``."""
    return [Compose(d, iota(j, d.dom)) for j in range(1, d.dom + 1)]


def decompose(d: Diagram) -> Diagram:
    """``p(dom, cod) ∘ (d ∘ iota(1) * ... * d ∘ iota(dom))``, equal to *d*."""
    if d.dom == 0:
        return Compose(p(0, d.cod), Id(0))
    return Compose(p(d.dom, d.cod), tensor_all(columns_of(d)))


__all__ = [
    "FILLER",
    "ColumnSpec",
    "synth_column",
    "synth_matrix",
    "normalize",
    "equal",
    "columns_of",
    "decompose",
]
