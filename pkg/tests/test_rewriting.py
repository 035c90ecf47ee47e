import sys
from collections import Counter
from fractions import Fraction
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "python"))

from strandweaver.constructions import p
from strandweaver.diagram import E, S, Compose, Generator, GeneratorKind, Id, Slice, SliceForm, c, tensor, to_slices
from strandweaver.errors import InvalidRedexError, RuleSoundnessError
from strandweaver.rewriting import (
    MIRROR_DERIVATIONS,
    Pattern,
    Redex,
    RewriteRule,
    apply,
    check_instance,
    find_redexes,
    format_step,
    independent,
    interchange,
    locate,
    relation_rules,
    replay,
    rule_by_name,
    rule_table,
    verify_rule,
)
from strandweaver.semantics import eval_slices
from strandweaver.synthesis import FILLER


def build_coin_then(kind, lam="1/3"):
    """``c(lam)`` on one strand followed by a two-strand generator."""
    return SliceForm(1, (Slice(0, c(lam).gen, 0), Slice(0, Generator(GeneratorKind(kind)), 0)))


def test_table_layout():
    names = [rule.name for rule in rule_table()]
    assert names == [f"R{i}" for i in range(1, 13)] + ["D13", "D14", "X"]
    assert len(relation_rules()) == 14
    assert rule_by_name("R9").parametric
    assert not rule_by_name("R7").parametric
    assert rule_by_name("X").structural
    with pytest.raises(KeyError):
        rule_by_name("R99")


@pytest.mark.parametrize("rule", relation_rules(), ids=lambda r: r.name)
def test_every_relation_verifies(rule):
    checks = verify_rule(rule, count=20, seed=3)
    assert all(check.passed for check in checks)
    assert len(checks) == (20 if rule.lhs.variables else 1)


def test_rule_check_text():
    check = verify_rule(rule_by_name("R12"), count=1, seed=0)[0]
    assert str(check).startswith("PASS R12 λ=")
    assert "μ=" in str(check)
    assert str(verify_rule(rule_by_name("R5"))[0]) == "PASS R5"


def test_reverse_directions_are_sound():
    for rule in relation_rules():
        variables = rule.rhs.variables
        binding = {v: Fraction(2, 5) for v in variables}
        assert check_instance(rule, binding, reverse=True, fresh=Fraction(1, 7)), rule.name


def test_rule_sides_must_share_domain():
    with pytest.raises(RuleSoundnessError):
        RewriteRule("bad", "id(1) = id(2)", Pattern(1), Pattern(2))


def test_no_redex_in_identity():
    assert find_redexes(SliceForm(5)) == []
    assert find_redexes(to_slices(Id(5))) == []


def test_insertions_listed_on_request():
    redexes = find_redexes(SliceForm(2), include_insertions=True)
    assert Counter(r.label for r in redexes) == {"R4.rev": 1, "R8.rev": 2, "D13.rev": 2}


def test_find_and_apply_r9():
    s = build_coin_then("s")
    redexes = find_redexes(s, ["R9"])
    assert [r.label for r in redexes] == ["R9", "R9.rev"]
    r = redexes[0]
    assert r.target == (("mu", Fraction(2, 3)),)
    out = apply(s, r)
    assert out == SliceForm(1, (Slice(0, c("2/3").gen, 0),))
    assert eval_slices(out) == eval_slices(s)
    assert format_step(1, r) == "step 1: R9 @ slice 0 offset 0 [params λ=1/3, μ=2/3]"


def test_reverse_redex():
    s = SliceForm(1, (Slice(0, c("1/4").gen, 0),))
    r = locate(s, "R9", 0, 0, reverse=True)
    assert r.label == "R9.rev"
    out = apply(s, r)
    assert out == build_coin_then("s", "3/4")


def test_stale_redex_is_rejected():
    r = find_redexes(build_coin_then("s", "1/3"), ["R9"])[0]
    with pytest.raises(InvalidRedexError):
        apply(build_coin_then("s", "1/2"), r)
    with pytest.raises(InvalidRedexError):
        apply(build_coin_then("e"), r)
    with pytest.raises(InvalidRedexError):
        locate(build_coin_then("s"), "R9", 0, 1)
    with pytest.raises(InvalidRedexError):
        locate(build_coin_then("s"), "nope", 0, 0)


def test_interchange_is_an_involution():
    s = to_slices(tensor(E, E))
    first, second = s.slices
    assert independent(first, second)
    swapped = interchange(first, second)
    assert swapped == (Slice(2, E.gen, 0), Slice(0, E.gen, 1))
    assert interchange(*swapped) == (first, second)
    out = apply(s, locate(s, "X", 0, 0))
    assert eval_slices(out) == eval_slices(s)


def test_interchange_checks_offset():
    s = to_slices(tensor(E, E))
    with pytest.raises(InvalidRedexError):
        apply(s, Redex("X", False, 0, 99))
    with pytest.raises(InvalidRedexError):
        locate(s, "X", 0, 1)
    shifted = SliceForm(5, (Slice(1, E.gen, 2), Slice(2, E.gen, 0)))
    assert locate(shifted, "X", 0, 1).whisker_offset == 1


def test_dependent_slices_do_not_interchange():
    s = to_slices(Compose(S, S))
    assert not independent(*s.slices)
    with pytest.raises(InvalidRedexError):
        interchange(*s.slices)
    with pytest.raises(InvalidRedexError):
        locate(s, "X", 0, 0)
    assert [r.label for r in find_redexes(s)] == ["R4"]


def test_r12_uses_filler_when_degenerate():
    s = SliceForm(1, (Slice(0, c(1).gen, 0), Slice(0, c(1).gen, 1)))
    r = locate(s, "R12", 0, 0)
    assert r.filler
    assert dict(r.target) == {"lt": Fraction(1), "mt": FILLER}
    out = apply(s, r)
    assert eval_slices(out) == eval_slices(s)
    assert format_step(4, r).endswith("(filler)")


def test_r12_regular_case():
    s = SliceForm(1, (Slice(0, c("1/2").gen, 0), Slice(0, c("1/3").gen, 1)))
    r = locate(s, "R12", 0, 0)
    assert not r.filler
    assert dict(r.target) == {"lt": Fraction(1, 6), "mt": Fraction(2, 5)}
    assert eval_slices(apply(s, r)) == eval_slices(s)


def test_whiskered_match():
    s = SliceForm(3, (Slice(1, S.gen, 0), Slice(1, S.gen, 0)))
    r = find_redexes(s, ["R4"])[0]
    assert (r.slice_index, r.whisker_offset) == (0, 1)
    assert apply(s, r) == SliceForm(3)


def test_replay_with_tuples_and_redexes():
    s = to_slices(Compose(S, S))
    trace = replay(s, [("R4", False, 0, 0), ("R4", True, 0, 0)])
    assert trace[0] == s
    assert trace[1] == SliceForm(2)
    assert trace[2] == s
    r = Redex("R4", False, 0, 0)
    assert replay(s, [r])[-1] == SliceForm(2)


@pytest.mark.parametrize("name", sorted(MIRROR_DERIVATIONS))
def test_mirror_derivations(name):
    derivation = MIRROR_DERIVATIONS[name]
    trace = derivation.run()
    assert len(trace) == len(derivation.steps) + 1
    assert trace[-1] == derivation.target
    value = eval_slices(derivation.start)
    assert all(eval_slices(step) == value for step in trace)


def test_r8_and_r7_examples():
    s = SliceForm(1, (Slice(0, c("2/7").gen, 0), Slice(0, E.gen, 0)))
    assert apply(s, locate(s, "R8", 0, 0)) == SliceForm(1)

    created = SliceForm(1, (Slice(0, Generator(GeneratorKind.DEL), 1),))
    out = apply(created, locate(created, "R7", 0, 0, reverse=True))
    assert out == SliceForm(1, (Slice(0, c(0).gen, 0),))


def test_coalescer_has_redexes():
    s = to_slices(p(2, 2))
    redexes = find_redexes(s)
    assert redexes
    assert any(r.rule == "X" for r in redexes)
    for r in redexes:
        assert eval_slices(apply(s, r)) == eval_slices(s)
