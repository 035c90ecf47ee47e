import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "python"))

from strandweaver.constructions import p
from strandweaver.diagram import (
    DEL,
    E,
    S,
    Compose,
    Generator,
    GeneratorKind,
    Id,
    Slice,
    SliceForm,
    Tensor,
    c,
    compose,
    from_slices,
    generator_count,
    make_gen,
    make_id,
    tensor,
    tensor_all,
    tensor_power,
    to_slices,
    whisker,
)
from strandweaver.errors import CompositionError, DimensionError, ParameterDomainError
from strandweaver.fuzz import random_diagram
from strandweaver.matrix import StochasticMatrix, hjoin, identity
from strandweaver.semantics import eval_slices, evaluate


def build_random(seed, budget=12, dom=None):
    rng = random.Random(seed)
    if dom is None:
        dom = rng.randint(0, 3)
    return random_diagram(rng, dom, budget=budget, max_width=5)


def test_generator_arities():
    assert (DEL.dom, DEL.cod) == (0, 1)
    assert (E.dom, E.cod) == (2, 1)
    assert (S.dom, S.cod) == (2, 2)
    assert (c("1/2").dom, c("1/2").cod) == (1, 2)
    assert str(c(Fraction(2, 6)).gen) == "c(1/3)"
    assert str(DEL.gen) == "del"


def test_generator_parameter_checks():
    with pytest.raises(ParameterDomainError):
        c("3/2")
    with pytest.raises(ParameterDomainError):
        make_gen("c")
    with pytest.raises(ParameterDomainError):
        Generator(GeneratorKind.E, Fraction(1, 2))
    with pytest.raises(ValueError):
        make_gen("x")


def test_constructors():
    d = compose(make_gen("e"), tensor(make_gen("del"), make_id(1)))
    assert (d.dom, d.cod) == (1, 1)

    d = make_gen("s")
    t = tensor(make_id(0), d)
    assert (t.dom, t.cod) == (d.dom, d.cod)

    d = compose(make_id(2), make_gen("s"))
    assert (d.dom, d.cod) == (2, 2)

    with pytest.raises(CompositionError):
        compose(E, E)
    with pytest.raises(ParameterDomainError):
        make_id(-1)


def test_operator_sugar():
    assert E * DEL == Tensor(E, DEL)
    assert (S >> E) == Compose(E, S)
    with pytest.raises(CompositionError):
        DEL >> S


def test_structural_equality_ignores_construction_path():
    assert tensor(S, Id(1)) == Tensor(S, Id(1))
    assert c("1/2") == c(Fraction(1, 2))
    assert Tensor(Id(1), Id(1)) != Id(2)


def test_whisker_and_folds():
    assert whisker(0, S.gen, 0) == S
    assert whisker(1, S.gen, 2) == Tensor(Tensor(Id(1), S), Id(2))
    assert tensor_all([]) == Id(0)
    assert tensor_all([], width=3) == Id(3)
    assert tensor_all([S, E, DEL]) == Tensor(Tensor(S, E), DEL)
    assert tensor_power(E, 3) == Tensor(E, Tensor(E, E))
    assert tensor_power(E, 0) == Id(0)
    assert generator_count(tensor_power(E, 3)) == 3


def test_to_slices_identity():
    s = to_slices(make_id(5))
    assert s == SliceForm(5, ())
    assert s.cod == 5


def test_to_slices_tensor_left_first():
    s = to_slices(tensor(E, E))
    assert list(s) == [Slice(0, E.gen, 2), Slice(1, E.gen, 0)]
    assert eval_slices(s) == evaluate(tensor(E, E))


def test_to_slices_p22_counts():
    s = to_slices(p(2, 2))
    counts = s.counts()
    assert counts[GeneratorKind.E] == 2
    assert counts[GeneratorKind.S] == 3
    assert eval_slices(s) == hjoin([identity(2), identity(2)])


def test_slice_form_threading():
    s = SliceForm(1, [Slice(0, c("1/2").gen, 0), (0, E.gen, 0)])
    assert s.arities() == [1, 2, 1]
    assert s.cod == 1
    with pytest.raises(DimensionError):
        SliceForm(2, [Slice(0, DEL.gen, 0)])
    with pytest.raises(DimensionError):
        SliceForm(2, [Slice(-1, S.gen, 1)])


def test_splice_rechecks():
    s = to_slices(Compose(S, S))
    assert s.splice(0, 2, []) == SliceForm(2)
    with pytest.raises(DimensionError):
        s.splice(0, 1, [Slice(0, E.gen, 0)])


def test_from_slices_shapes():
    assert from_slices(SliceForm(3)) == Id(3)
    s = to_slices(Compose(E, Tensor(S, Id(1)) >> Tensor(Id(1), E)))
    d = from_slices(s)
    assert to_slices(d) == s


@settings(max_examples=60, deadline=None, derandomize=True)
@given(st.integers(min_value=0, max_value=10**6))
def test_slice_round_trip(seed):
    d = build_random(seed, budget=30)
    s = to_slices(d)
    assert (s.dom, s.cod) == (d.dom, d.cod)
    assert len(s) == generator_count(d)
    assert evaluate(from_slices(s)) == evaluate(d)
    assert to_slices(from_slices(s)) == s


@settings(max_examples=40, deadline=None, derandomize=True)
@given(st.integers(min_value=0, max_value=10**6), st.integers(min_value=0, max_value=10**6))
def test_tensor_slice_count_adds(seed_a, seed_b):
    a = build_random(seed_a)
    b = build_random(seed_b)
    assert len(to_slices(tensor(a, b))) == len(to_slices(a)) + len(to_slices(b))


def test_eval_of_slices_matches_generators():
    s = SliceForm(1, (Slice(0, DEL.gen, 1), Slice(0, E.gen, 0)))
    assert eval_slices(s) == StochasticMatrix([[1]])
