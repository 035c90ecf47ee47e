"""Exact string diagrams for column-stochastic matrices.

Diagrams are built from four generators (``del``, ``e``, ``s`` and the
biased coin ``c(λ)``), evaluated to exact rational matrices, synthesized
back from matrices, normalized, rewritten with the defining relations and
sampled token by token.

Examples
--------
>>> from strandweaver import parse_expr, evaluate, normalize, format_diagram
>>> d = parse_expr("c(1/4) ; s")
>>> evaluate(d).to_rows()
[[Fraction(3, 4)], [Fraction(1, 4)]]
>>> format_diagram(normalize(d))
'c(3/4)'
"""

from .constructions import column_diagram, del_power, iota, p, z, z_inv
from .diagram import (
    DEL,
    E,
    S,
    Compose,
    Diagram,
    Gen,
    Generator,
    GeneratorKind,
    Id,
    Slice,
    SliceForm,
    Tensor,
    c,
    compose,
    from_slices,
    make_gen,
    make_id,
    tensor,
    tensor_all,
    tensor_power,
    to_slices,
)
from .errors import *  # noqa: F401,F403
from .expr_parser import format_diagram, parse_expr, parse_expr_file
from .matrix import StochasticMatrix, block_diag, column, hjoin, multiply
from .render import render, to_networkx
from .semantics import eval_slices, evaluate, sample, sample_counts
from .synthesis import ColumnSpec, columns_of, decompose, equal, normalize, synth_column, synth_matrix

__version__ = "0.1.0"
