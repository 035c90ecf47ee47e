"""The defining relations as slice patterns.

Every relation is stored once as a bidirectional :class:`RewriteRule`
between two short slice patterns.  Patterns are read from input to output
and may carry parameter variables on their ``c`` slices; the rule's
``forward``/``backward`` maps compute the parameters of the other side.

The table is checked at construction: each rule must evaluate to the same
matrix on both sides for a grid of parameter values.
"""

from __future__ import annotations

import functools
import itertools
import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, NamedTuple, Optional, Sequence, Tuple, Union

from ..diagram import Generator, GeneratorKind, Slice, SliceForm
from ..errors import RuleSoundnessError
from ..matrix import ONE, ZERO
from ..semantics import eval_slices
from ..synthesis import FILLER

_logger = logging.getLogger(__name__)


Binding = Dict[str, Fraction]
ParamMap = Callable[[Binding, Fraction], Tuple[Binding, bool]]

DEL, E, S, C = GeneratorKind.DEL, GeneratorKind.E, GeneratorKind.S, GeneratorKind.C

DISPLAY_NAMES = {"lam": "λ", "mu": "μ", "lt": "λ̃", "mt": "μ̃"}


class PatternSlice(NamedTuple):
    left: int
    kind: GeneratorKind
    right: int
    param: Union[str, Fraction, None] = None


@dataclass(frozen=True)
class Pattern:
    """A slice list on ``dom`` strands, possibly with parameter variables."""

    dom: int
    slices: Tuple[PatternSlice, ...] = ()

    @property
    def variables(self) -> Tuple[str, ...]:
        seen: List[str] = []
        for ps in self.slices:
            if isinstance(ps.param, str) and ps.param not in seen:
                seen.append(ps.param)
        return tuple(seen)

    def instantiate(self, binding: Binding, offset: int = 0, pad: int = 0) -> List[Slice]:
        """Concrete slices, shifted right by *offset* and padded by *pad* strands."""
        out = []
        for ps in self.slices:
            param = binding[ps.param] if isinstance(ps.param, str) else ps.param
            out.append(Slice(ps.left + offset, Generator(ps.kind, param), ps.right + pad))
        return out

    def slice_form(self, binding: Binding) -> SliceForm:
        return SliceForm(self.dom, tuple(self.instantiate(binding)))

    def __str__(self):
        if not self.slices:
            return f"id({self.dom})"
        parts = []
        for ps in self.slices:
            gen = ps.kind.value
            if ps.kind is C:
                gen = f"c({DISPLAY_NAMES.get(ps.param, ps.param)})"
            parts.append(f"({ps.left},{gen},{ps.right})")
        return " ".join(parts)


def _carry(target_vars: Sequence[str]) -> ParamMap:
    """Copy shared variables; unbound ones take the fresh value."""

    def _map(binding: Binding, fresh: Fraction) -> Tuple[Binding, bool]:
        return {v: binding.get(v, fresh) for v in target_vars}, False

    return _map


@dataclass(frozen=True)
class RewriteRule:
    """An oriented-on-demand equation ``lhs = rhs`` between slice patterns.

    ``forward`` maps a binding of the left side's variables (plus a fresh
    value for variables the left side does not determine) to the right
    side's binding; ``backward`` goes the other way.  The boolean they
    return reports that an arbitrary value was substituted.
    """

    name: str
    equation: str
    lhs: Pattern
    rhs: Pattern
    forward: Optional[ParamMap] = None
    backward: Optional[ParamMap] = None
    structural: bool = False

    def __post_init__(self):
        if self.lhs.dom != self.rhs.dom:
            raise RuleSoundnessError(f"{self.name}: sides have different domains")
        if self.forward is None:
            object.__setattr__(self, "forward", _carry(self.rhs.variables))
        if self.backward is None:
            object.__setattr__(self, "backward", _carry(self.lhs.variables))

    @property
    def parametric(self) -> bool:
        return bool(self.lhs.variables or self.rhs.variables)

    def source(self, reverse: bool) -> Pattern:
        return self.rhs if reverse else self.lhs

    def target(self, reverse: bool) -> Pattern:
        return self.lhs if reverse else self.rhs

    def target_binding(self, reverse: bool, binding: Binding, fresh: Fraction) -> Tuple[Binding, bool]:
        return (self.backward if reverse else self.forward)(binding, fresh)

    def __str__(self):
        return f"{self.name}: {self.equation}"


def _pat(dom: int, *slices) -> Pattern:
    return Pattern(dom, tuple(PatternSlice(*s) for s in slices))


def _r9_forward(b: Binding, fresh: Fraction) -> Tuple[Binding, bool]:
    return {"mu": ONE - b["lam"]}, False


def _r9_backward(b: Binding, fresh: Fraction) -> Tuple[Binding, bool]:
    return {"lam": ONE - b["mu"]}, False


def _r12_forward(b: Binding, fresh: Fraction) -> Tuple[Binding, bool]:
    lam, mu = b["lam"], b["mu"]
    lt = lam * mu
    if lt == ONE:
        _logger.debug("R12 with λμ = 1: μ̃ is arbitrary, using %s", FILLER)
        return {"lt": lt, "mt": FILLER}, True
    return {"lt": lt, "mt": lam * (ONE - mu) / (ONE - lt)}, False


def _r12_backward(b: Binding, fresh: Fraction) -> Tuple[Binding, bool]:
    lt, mt = b["lt"], b["mt"]
    lam = ONE - (ONE - lt) * (ONE - mt)
    if lam == ZERO:
        _logger.debug("R12 reversed with λ = 0: μ is arbitrary, using %s", FILLER)
        return {"lam": lam, "mu": FILLER}, True
    return {"lam": lam, "mu": lt / lam}, False


def _build_rules() -> Tuple[RewriteRule, ...]:
    return (
        RewriteRule("R1", "e(e⊗id) = e(id⊗e)",
                    _pat(3, (0, E, 1), (0, E, 0)),
                    _pat(3, (1, E, 0), (0, E, 0))),
        RewriteRule("R2", "es = e",
                    _pat(2, (0, S, 0), (0, E, 0)),
                    _pat(2, (0, E, 0))),
        RewriteRule("R3", "s(id⊗e) = (e⊗id)(id⊗s)(s⊗id)",
                    _pat(3, (1, E, 0), (0, S, 0)),
                    _pat(3, (0, S, 1), (1, S, 0), (0, E, 1))),
        RewriteRule("R4", "s² = id",
                    _pat(2, (0, S, 0), (0, S, 0)),
                    _pat(2)),
        RewriteRule("R5", "(s⊗id)(id⊗s)(s⊗id) = (id⊗s)(s⊗id)(id⊗s)",
                    _pat(3, (0, S, 1), (1, S, 0), (0, S, 1)),
                    _pat(3, (1, S, 0), (0, S, 1), (1, S, 0))),
        RewriteRule("R6", "c_λ∂ = ∂⊗∂",
                    _pat(0, (0, DEL, 0), (0, C, 0, "lam")),
                    _pat(0, (0, DEL, 0), (1, DEL, 0))),
        RewriteRule("R7", "c_0 = ∂⊗id",
                    _pat(1, (0, C, 0, ZERO)),
                    _pat(1, (0, DEL, 1))),
        RewriteRule("R8", "e c_λ = id",
                    _pat(1, (0, C, 0, "lam"), (0, E, 0)),
                    _pat(1)),
        RewriteRule("R9", "s c_λ = c_{1-λ}",
                    _pat(1, (0, C, 0, "lam"), (0, S, 0)),
                    _pat(1, (0, C, 0, "mu")),
                    forward=_r9_forward, backward=_r9_backward),
        RewriteRule("R10", "(id⊗c_λ)s = (s⊗id)(id⊗s)(c_λ⊗id)",
                    _pat(2, (0, S, 0), (1, C, 0, "lam")),
                    _pat(2, (0, C, 1, "lam"), (1, S, 0), (0, S, 1))),
        RewriteRule("R11", "(e⊗e)(id⊗s⊗id)(c_λ⊗c_λ) = c_λ e",
                    _pat(2, (0, C, 1, "lam"), (2, C, 0, "lam"), (1, S, 1), (0, E, 2), (1, E, 0)),
                    _pat(2, (0, E, 0), (0, C, 0, "lam"))),
        RewriteRule("R12", "(c_μ⊗id)c_λ = (id⊗c_μ̃)c_λ̃, λ̃ = λμ, μ̃ = λ(1-μ)/(1-λμ)",
                    _pat(1, (0, C, 0, "lam"), (0, C, 1, "mu")),
                    _pat(1, (0, C, 0, "lt"), (1, C, 0, "mt")),
                    forward=_r12_forward, backward=_r12_backward),
        RewriteRule("D13", "e(∂⊗id) = id",
                    _pat(1, (0, DEL, 1), (0, E, 0)),
                    _pat(1)),
        RewriteRule("D14", "s(∂⊗id) = id⊗∂",
                    _pat(1, (0, DEL, 1), (0, S, 0)),
                    _pat(1, (1, DEL, 0))),
    )


INTERCHANGE = RewriteRule(
    "X", "slide two independent slices past each other", Pattern(0), Pattern(0), structural=True
)

_CHECK_GRID = (ZERO, Fraction(1, 3), ONE)


def check_instance(rule: RewriteRule, binding: Binding, reverse: bool = False,
                   fresh: Fraction = FILLER) -> bool:
    """``True`` when both sides agree under eval for this source binding."""
    target, _ = rule.target_binding(reverse, binding, fresh)
    source_form = rule.source(reverse).slice_form(binding)
    target_form = rule.target(reverse).slice_form(target)
    return eval_slices(source_form) == eval_slices(target_form)


def _check_registration(rule: RewriteRule) -> None:
    for reverse in (False, True):
        variables = rule.source(reverse).variables
        for values in itertools.product(_CHECK_GRID, repeat=len(variables)):
            for fresh in _CHECK_GRID:
                binding = dict(zip(variables, values))
                if not check_instance(rule, binding, reverse, fresh):
                    raise RuleSoundnessError(
                        f"{rule.name} fails for {binding} (reverse={reverse}, fresh={fresh})"
                    )


@functools.lru_cache(maxsize=None)
def _table() -> Tuple[RewriteRule, ...]:
    rules = _build_rules()
    for rule in rules:
        _check_registration(rule)
    _logger.debug("registered %d relation rules", len(rules))
    return rules + (INTERCHANGE,)


def rule_table() -> List[RewriteRule]:
    """The 14 relation rules followed by the interchange move ``X``."""
    return list(_table())


def relation_rules() -> List[RewriteRule]:
    return [rule for rule in _table() if not rule.structural]


def rule_by_name(name: str) -> RewriteRule:
    for rule in _table():
        if rule.name == name:
            return rule
    raise KeyError(f"unknown rule {name!r}")


class RuleCheck(NamedTuple):
    rule: str
    binding: Tuple[Tuple[str, Fraction], ...]
    passed: bool

    def __str__(self):
        status = "PASS" if self.passed else "FAIL"
        if not self.binding:
            return f"{status} {self.rule}"
        params = ", ".join(f"{DISPLAY_NAMES.get(k, k)}={v}" for k, v in self.binding)
        return f"{status} {self.rule} {params}"


def verify_rule(rule: RewriteRule, count: int = 20, seed: int = 0,
                max_denominator: int = 12) -> List[RuleCheck]:
    """Check ``eval(lhs) == eval(rhs)`` for *count* random instantiations.

    Parameter-free rules are checked once.
    """
    from ..fuzz import random_probability

    variables = rule.lhs.variables
    if not variables:
        bindings = [{}]
    else:
        rng = random.Random(seed)
        bindings = [
            {v: random_probability(rng, max_denominator) for v in variables}
            for _ in range(count)
        ]
    return [
        RuleCheck(rule.name, tuple(b.items()), check_instance(rule, b))
        for b in bindings
    ]


__all__ = [
    "FILLER",
    "DISPLAY_NAMES",
    "PatternSlice",
    "Pattern",
    "RewriteRule",
    "INTERCHANGE",
    "check_instance",
    "rule_table",
    "relation_rules",
    "rule_by_name",
    "RuleCheck",
    "verify_rule",
]
