import random
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "python"))

from strandweaver.errors import (
    DimensionError,
    IndexRangeError,
    ParameterDomainError,
    StochasticityError,
)
from strandweaver.fuzz import random_stochastic_matrix
from strandweaver.matrix import (
    StochasticMatrix,
    block_diag,
    column,
    empty,
    format_scalar,
    hjoin,
    identity,
    multiply,
    probability,
    to_scalar,
)


def build_coin(p="1/3"):
    p = Fraction(p)
    return StochasticMatrix([[p], [1 - p]])


def build_swap():
    return StochasticMatrix([[0, 1], [1, 0]])


def test_scalar_helpers():
    assert to_scalar("2/6") == Fraction(1, 3)
    assert to_scalar(1) == Fraction(1)
    assert format_scalar(Fraction(4, 2)) == "2"
    assert format_scalar("3/9") == "1/3"
    assert probability("1") == 1
    with pytest.raises(ParameterDomainError):
        probability("3/2")
    with pytest.raises(ParameterDomainError):
        to_scalar("one third")
    with pytest.raises(TypeError):
        to_scalar(0.5)
    with pytest.raises(TypeError):
        to_scalar(True)


def test_constructor_checks_columns():
    a = build_coin()
    assert a.shape == (2, 1)
    assert a[0, 0] == Fraction(1, 3)

    with pytest.raises(StochasticityError) as info:
        StochasticMatrix([["1/2", 1], ["1/3", 0]])
    assert info.value.column == 1

    with pytest.raises(StochasticityError) as info:
        StochasticMatrix([[1, "3/2"], [0, "-1/2"]])
    assert info.value.column == 2

    with pytest.raises(DimensionError):
        StochasticMatrix([[1, 0], [0]])


def test_zero_shapes():
    assert identity(0).shape == (0, 0)
    assert empty(3).shape == (3, 0)
    assert StochasticMatrix([], rows=2) == empty(2)
    assert StochasticMatrix.from_columns([], rows=2) == empty(2)
    with pytest.raises(ValueError):
        StochasticMatrix.from_columns([])


def test_no_zero_row_matrix_with_columns():
    with pytest.raises(DimensionError):
        StochasticMatrix(np.empty((0, 2), dtype=object))


def test_multiply():
    a = build_coin("1/4")
    s = build_swap()
    assert multiply(s, a) == StochasticMatrix([["3/4"], ["1/4"]])
    assert s @ s == identity(2)
    assert multiply(identity(2), a) == a
    # 3x0 times 0x0
    assert multiply(empty(3), identity(0)) == empty(3)
    with pytest.raises(DimensionError):
        multiply(a, a)


def test_block_diag():
    a = build_coin("1/2")
    b = block_diag(a, identity(1))
    assert b.shape == (3, 2)
    assert b.to_rows() == [
        [Fraction(1, 2), 0],
        [Fraction(1, 2), 0],
        [0, 1],
    ]
    assert block_diag(identity(0), a) == a
    assert block_diag(empty(1), empty(2)) == empty(3)
    assert block_diag(empty(1), identity(1)).to_rows() == [[0], [1]]


def test_hjoin_and_column():
    a = StochasticMatrix([["1/2", 0], ["1/2", 1]])
    cols = a.columns()
    assert hjoin(cols) == a
    assert column(a, 2) == StochasticMatrix([[0], [1]])
    assert hjoin([], rows=4) == empty(4)
    with pytest.raises(IndexRangeError):
        column(a, 3)
    with pytest.raises(IndexRangeError):
        column(a, 0)
    with pytest.raises(DimensionError):
        hjoin([identity(1), build_coin()])


def test_properties():
    assert build_swap().is_permutation()
    assert build_swap().is_deterministic()
    merge = StochasticMatrix([[1, 1]])
    assert merge.is_deterministic()
    assert not merge.is_permutation()
    assert not build_coin().is_deterministic()


def test_json_round_trip(tmp_path):
    a = StochasticMatrix([["1/2", 0, "1/3"], ["1/2", 1, "2/3"]])
    data = a.to_json_dict()
    assert data == {
        "rows": 2,
        "cols": 3,
        "entries": [["1/2", "0", "1/3"], ["1/2", "1", "2/3"]],
    }
    assert StochasticMatrix.from_json(a.to_json()) == a

    path = tmp_path / "m.json"
    empty(3).save_to_json(str(path))
    loaded = StochasticMatrix.load_from_json(str(path))
    assert loaded.shape == (3, 0)


def test_json_rejects_bad_documents():
    with pytest.raises(DimensionError):
        StochasticMatrix.from_json('{"rows": 3, "cols": 1, "entries": [["1"]]}')
    with pytest.raises(DimensionError):
        StochasticMatrix.from_json('{"rows": 1, "entries": [["1"]]}')
    with pytest.raises(StochasticityError):
        StochasticMatrix.from_json('{"rows": 1, "cols": 1, "entries": [["1/2"]]}')


def test_json_rows_must_be_lists():
    with pytest.raises(DimensionError):
        StochasticMatrix.from_json('{"rows": 1, "cols": 1, "entries": ["1"]}')
    with pytest.raises(DimensionError):
        StochasticMatrix.from_json('{"rows": 2, "cols": 1, "entries": "12"}')
    with pytest.raises(DimensionError):
        StochasticMatrix.from_json('{"rows": 2, "cols": 0, "entries": [[], "x"]}')


def test_immutable_and_hashable():
    a = build_coin()
    with pytest.raises(ValueError):
        a.entries[0, 0] = Fraction(1)
    assert hash(a) == hash(build_coin())
    assert len({a, build_coin(), build_swap()}) == 2


def build_chain(rng, length):
    """Sizes ``n_0 .. n_length`` for a chain ``n_0 -> n_1 -> ...``; zeros only as a prefix."""
    sizes = [rng.randint(0, 5)]
    for _ in range(length):
        sizes.append(rng.randint(1, 5) if sizes[-1] else rng.randint(0, 5))
    return sizes


def build_matrices(rng, sizes):
    return [random_stochastic_matrix(rng, rows, cols) for cols, rows in zip(sizes, sizes[1:])]


@settings(max_examples=200, deadline=None, derandomize=True)
@given(st.integers(min_value=0, max_value=10**6))
def test_multiply_is_associative(seed):
    rng = random.Random(seed)
    c, b, a = build_matrices(rng, build_chain(rng, 3))
    assert multiply(multiply(a, b), c) == multiply(a, multiply(b, c))


@settings(max_examples=200, deadline=None, derandomize=True)
@given(st.integers(min_value=0, max_value=10**6))
def test_block_diag_interchanges_with_multiply(seed):
    rng = random.Random(seed)
    c, a = build_matrices(rng, build_chain(rng, 2))
    d, b = build_matrices(rng, build_chain(rng, 2))
    assert multiply(block_diag(a, b), block_diag(c, d)) == block_diag(multiply(a, c), multiply(b, d))


def test_laws_with_zero_columns():
    rng = random.Random(5)
    a = random_stochastic_matrix(rng, 3, 2)
    b = random_stochastic_matrix(rng, 2, 0)
    assert multiply(multiply(a, b), identity(0)) == multiply(a, multiply(b, identity(0))) == empty(3)
    c = random_stochastic_matrix(rng, 4, 1)
    left = multiply(block_diag(a, c), block_diag(b, empty(1)))
    assert left == block_diag(multiply(a, b), multiply(c, empty(1))) == empty(7)
