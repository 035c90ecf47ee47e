import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "python"))

from strandweaver.constructions import p, z
from strandweaver.diagram import DEL, E, S, Compose, Id, Slice, SliceForm, Tensor, c, to_slices
from strandweaver.errors import IndexRangeError, NoInputError
from strandweaver.expr_parser import parse_expr
from strandweaver.fuzz import random_diagram
from strandweaver.matrix import StochasticMatrix, block_diag, column, empty, hjoin, identity, multiply
from strandweaver.semantics import (
    TokenWalker,
    eval_slices,
    evaluate,
    sample,
    sample_counts,
    total_variation,
)


def build_random(seed, dom=None, budget=10):
    rng = random.Random(seed)
    if dom is None:
        dom = rng.randint(0, 3)
    return random_diagram(rng, dom, budget=budget, max_width=5)


def test_generator_values():
    assert evaluate(c("1/3")) == StochasticMatrix([["1/3"], ["2/3"]])
    assert evaluate(DEL) == empty(1)
    assert evaluate(E) == StochasticMatrix([[1, 1]])
    assert evaluate(S) == StochasticMatrix([[0, 1], [1, 0]])
    assert evaluate(Id(4)) == identity(4)
    assert evaluate(Id(0)) == identity(0)


def test_named_families():
    assert evaluate(z(3)) == StochasticMatrix([[0, 1, 0], [0, 0, 1], [1, 0, 0]])
    assert evaluate(p(2, 3)) == hjoin([identity(3), identity(3)])


def test_eval_slices_agrees_on_small_cases():
    assert eval_slices(SliceForm(3)) == identity(3)
    single = SliceForm(3, (Slice(1, S.gen, 0),))
    assert eval_slices(single) == block_diag(identity(1), evaluate(S))
    assert eval_slices(SliceForm(0, (Slice(0, DEL.gen, 0),))) == empty(1)


@settings(max_examples=60, deadline=None, derandomize=True)
@given(st.integers(min_value=0, max_value=10**6), st.integers(min_value=0, max_value=10**6))
def test_functoriality(seed_a, seed_b):
    a = build_random(seed_a)
    b = build_random(seed_b, dom=a.cod)
    assert evaluate(Compose(b, a)) == multiply(evaluate(b), evaluate(a))
    assert evaluate(Tensor(a, b)) == block_diag(evaluate(a), evaluate(b))


@settings(max_examples=60, deadline=None, derandomize=True)
@given(st.integers(min_value=0, max_value=10**6))
def test_eval_slices_matches_eval(seed):
    d = build_random(seed, budget=20)
    result = evaluate(d)
    assert result.shape == (d.cod, d.dom)
    assert eval_slices(to_slices(d)) == result


def test_deterministic_samples():
    assert all(sample(c(1), 1, seed) == 1 for seed in range(20))
    assert all(sample(S, 1, seed) == 2 for seed in range(20))
    assert sample_counts(S, 2, 50, 7) == [50, 0]
    assert sample_counts(c(1), 1, 100, 7) == [100, 0]


def test_sample_is_reproducible():
    d = parse_expr("c(1/3) ; (id(1) * c(1/2)) ; (s * id(1))")
    assert sample_counts(d, 1, 500, 11) == sample_counts(d, 1, 500, 11)
    assert sample(d, 1, 3) == sample(d, 1, 3)


def test_sample_errors():
    with pytest.raises(NoInputError):
        sample(DEL, 1, 0)
    with pytest.raises(IndexRangeError):
        sample(S, 3, 0)
    with pytest.raises(IndexRangeError):
        sample(S, 0, 0)


def test_walker_on_slices_directly():
    s = to_slices(parse_expr("(del * id(1)) ; s"))
    walker = TokenWalker(s)
    assert walker.run(1, random.Random(0)) == 1


def test_coin_concentration():
    hits = sample_counts(c("1/4"), 1, 100_000, 7)
    assert sum(hits) == 100_000
    assert total_variation(hits, evaluate(c("1/4"))) < Fraction(2, 100)


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(10))
def test_sampler_matches_eval(seed):
    rng = random.Random(1000 + seed)
    d = random_diagram(rng, rng.randint(1, 3), budget=10, max_width=8)
    value = evaluate(d)
    assert d.cod <= 8
    j = 1 + seed % d.dom
    hits = sample_counts(to_slices(d), j, 100_000, seed)
    assert total_variation(hits, column(value, j)) < Fraction(2, 100)


def test_total_variation_is_exact():
    col = StochasticMatrix([["1/2"], ["1/2"]])
    assert total_variation([3, 1], col) == Fraction(1, 4)
    with pytest.raises(ValueError):
        total_variation([0, 0], col)
    with pytest.raises(ValueError):
        total_variation([1, 1, 1], col)
