import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "python"))

from strandweaver.diagram import Compose, S, to_slices
from strandweaver.expr_parser import parse_expr
from strandweaver.rewriting import find_redexes, relation_rules, rule_by_name
from strandweaver.rewriting.selectors import (
    by_name,
    p_and,
    p_not,
    p_or,
    parametric,
    relations_only,
    select,
    structural,
)


def names(rules):
    return [rule.name for rule in rules]


def test_by_name():
    assert names(select(by_name("R4", "R5"))) == ["R4", "R5"]
    assert select(by_name("missing")) == []


def test_parametric():
    assert names(select(parametric())) == ["R6", "R8", "R9", "R10", "R11", "R12"]


def test_structural_and_relations():
    assert names(select(structural())) == ["X"]
    assert select(relations_only()) == relation_rules()


def test_combinators():
    assert names(select(p_or(by_name("R4"), parametric())))[:3] == ["R4", "R6", "R8"]
    assert names(select(p_and(parametric(), p_not(by_name("R12"))))) == ["R6", "R8", "R9", "R10", "R11"]
    assert select(p_and()) == select(lambda rule: True)
    assert select(p_or()) == []


def test_select_from_explicit_rules():
    rules = [rule_by_name("R1"), rule_by_name("R9")]
    assert names(select(parametric(), rules)) == ["R9"]


def test_predicate_feeds_find_redexes():
    s = to_slices(parse_expr("c(1/3) ; s"))
    labels = [r.label for r in find_redexes(s, parametric())]
    assert labels == ["R9", "R9.rev"]
    assert find_redexes(to_slices(Compose(S, S)), p_not(by_name("R4"))) == []
