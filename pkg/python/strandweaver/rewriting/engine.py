"""Finding and applying redexes on slice forms.

A redex records where a rule side occurs: the index of its first slice,
the width of the left whisker it sits under, the parameters it matched and
the parameters of the replacement.  :func:`apply` re-matches before
replacing, so a redex that no longer fits the slice form is rejected
instead of trusted.

Rules whose matched side is empty (``s² = id`` read backwards, ``e c = id``
read backwards, ...) can be inserted at any boundary and any offset; those
insertion redexes are only listed when asked for.
"""

from __future__ import annotations

import logging
import random
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from ..diagram import GeneratorKind, Slice, SliceForm
from ..errors import InvalidRedexError
from ..synthesis import FILLER
from .rules import DISPLAY_NAMES, RewriteRule, rule_by_name, rule_table

_logger = logging.getLogger(__name__)

RuleFilter = Union[None, Callable[[RewriteRule], bool], Iterable[Union[RewriteRule, str]]]
WalkCallback = Callable[[int, "Redex", SliceForm], Optional[bool]]
Params = Tuple[Tuple[str, Fraction], ...]


@dataclass(frozen=True)
class Redex:
    """One applicable rewrite.

    Attributes
    ----------
    rule:
        Name of the rule, ``"X"`` for the interchange move.
    reverse:
        ``True`` when the rule is used right to left.
    slice_index:
        First slice of the match, or the boundary before which an empty
        side is inserted.
    whisker_offset:
        Strands left of the matched pattern.
    binding:
        Parameters read off the matched slices.
    target:
        Parameters written into the replacement.
    fresh:
        Value used for replacement parameters the match does not determine.
    filler:
        ``True`` when a degenerate parameter was replaced by the filler.
    """

    rule: str
    reverse: bool
    slice_index: int
    whisker_offset: int
    binding: Params = ()
    target: Params = ()
    fresh: Fraction = FILLER
    filler: bool = False

    @property
    def label(self) -> str:
        return f"{self.rule}.rev" if self.reverse else self.rule


def _resolve_rules(rules: RuleFilter) -> List[RewriteRule]:
    if rules is None:
        return rule_table()
    if callable(rules):
        return [rule for rule in rule_table() if rules(rule)]
    return [rule_by_name(r) if isinstance(r, str) else r for r in rules]


def _match(rule: RewriteRule, reverse: bool, s: SliceForm, index: int,
           arities: Sequence[int]) -> Optional[Tuple[int, Dict[str, Fraction]]]:
    """Offset and binding of the rule side starting at slice *index*."""
    pattern = rule.source(reverse)
    width = len(pattern.slices)
    if index < 0 or index + width > len(s.slices):
        return None
    offset = s.slices[index].left - pattern.slices[0].left
    pad = arities[index] - offset - pattern.dom
    if offset < 0 or pad < 0:
        return None
    binding: Dict[str, Fraction] = {}
    for ps, sl in zip(pattern.slices, s.slices[index:index + width]):
        if sl.gen.kind is not ps.kind:
            return None
        if sl.left != ps.left + offset or sl.right != ps.right + pad:
            return None
        if ps.param is None:
            continue
        if isinstance(ps.param, str):
            if binding.setdefault(ps.param, sl.gen.param) != sl.gen.param:
                return None
        elif ps.param != sl.gen.param:
            return None
    return offset, binding


def independent(first: Slice, second: Slice) -> bool:
    """Whether *second* touches none of the strands *first* produced."""
    if second.left + second.gen.dom <= first.left:
        return True
    return second.left >= first.left + first.gen.cod


def interchange(first: Slice, second: Slice) -> Tuple[Slice, Slice]:
    """The two slices in the other order; applying it twice is the identity."""
    g1, g2 = first.gen, second.gen
    if second.left + g2.dom <= first.left:
        before = first.left + g1.dom + first.right
        return (
            Slice(second.left, g2, before - second.left - g2.dom),
            Slice(first.left + g2.cod - g2.dom, g1, first.right),
        )
    if second.left >= first.left + g1.cod:
        return (
            Slice(second.left - g1.cod + g1.dom, g2, second.right),
            Slice(first.left, g1, first.right + g2.cod - g2.dom),
        )
    raise InvalidRedexError("the slices share strands and cannot be interchanged")


def _redex(rule: RewriteRule, reverse: bool, index: int, offset: int,
           binding: Dict[str, Fraction], fresh: Fraction) -> Redex:
    target, filler = rule.target_binding(reverse, binding, fresh)
    return Redex(
        rule.name, reverse, index, offset,
        tuple(binding.items()), tuple(target.items()), fresh, filler,
    )


def _insertion_slots(rule: RewriteRule, reverse: bool, arities: Sequence[int]) -> List[Tuple[int, int]]:
    width = rule.source(reverse).dom
    return [
        (i, j)
        for i, arity in enumerate(arities)
        for j in range(arity - width + 1)
    ]


def _directions(rule: RewriteRule) -> Tuple[bool, ...]:
    return (False,) if rule.structural else (False, True)


def find_redexes(s: SliceForm, rules: RuleFilter = None, *,
                 include_insertions: bool = False, fresh: Fraction = FILLER) -> List[Redex]:
    """Every occurrence of a rule side in *s*, both directions.

    Parameters
    ----------
    s:
        The slice form to search.
    rules:
        ``None`` for the whole table, a predicate over rules, or a
        sequence of rules or rule names.
    include_insertions:
        Also list the sides that match the empty slice list, at every
        boundary and offset.
    fresh:
        Value for replacement parameters the match leaves free.
    """
    arities = s.arities()
    by_kind: Dict[GeneratorKind, List[int]] = defaultdict(list)
    for i, sl in enumerate(s.slices):
        by_kind[sl.gen.kind].append(i)
    out: List[Redex] = []
    for rule in _resolve_rules(rules):
        if rule.structural:
            for i in range(len(s.slices) - 1):
                if independent(s.slices[i], s.slices[i + 1]):
                    out.append(Redex(rule.name, False, i, s.slices[i].left, fresh=fresh))
            continue
        for reverse in _directions(rule):
            if not rule.source(reverse).slices:
                if include_insertions:
                    for i, j in _insertion_slots(rule, reverse, arities):
                        out.append(_redex(rule, reverse, i, j, {}, fresh))
                continue
            for i in by_kind[rule.source(reverse).slices[0].kind]:
                found = _match(rule, reverse, s, i, arities)
                if found is not None:
                    out.append(_redex(rule, reverse, i, found[0], found[1], fresh))
    return out


def locate(s: SliceForm, rule: Union[RewriteRule, str], slice_index: int,
           whisker_offset: int, *, reverse: bool = False, fresh: Fraction = FILLER) -> Redex:
    """The redex of *rule* at a given position, or :class:`InvalidRedexError`."""
    if isinstance(rule, str):
        try:
            rule = rule_by_name(rule)
        except KeyError as exc:
            raise InvalidRedexError(str(exc)) from None
    arities = s.arities()
    if rule.structural:
        if not 0 <= slice_index < len(s.slices) - 1:
            raise InvalidRedexError(f"no slice pair at index {slice_index}")
        if not independent(s.slices[slice_index], s.slices[slice_index + 1]):
            raise InvalidRedexError(f"slices {slice_index} and {slice_index + 1} share strands")
        if whisker_offset != s.slices[slice_index].left:
            raise InvalidRedexError(
                f"slice {slice_index} starts at offset {s.slices[slice_index].left}, not {whisker_offset}"
            )
        return Redex(rule.name, False, slice_index, whisker_offset, fresh=fresh)
    if not rule.source(reverse).slices:
        if (slice_index, whisker_offset) not in _insertion_slots(rule, reverse, arities):
            raise InvalidRedexError(
                f"cannot insert {rule.name} at boundary {slice_index} offset {whisker_offset}"
            )
        return _redex(rule, reverse, slice_index, whisker_offset, {}, fresh)
    found = _match(rule, reverse, s, slice_index, arities)
    if found is None or found[0] != whisker_offset:
        side = "right" if reverse else "left"
        raise InvalidRedexError(
            f"{side} side of {rule.name} does not occur at slice {slice_index} offset {whisker_offset}"
        )
    return _redex(rule, reverse, slice_index, whisker_offset, found[1], fresh)


def apply(s: SliceForm, r: Redex) -> SliceForm:
    """Replace the matched side by the other side of the rule.

    Raises
    ------
    InvalidRedexError
        If *r* does not describe an occurrence in *s*.
    """
    current = locate(s, r.rule, r.slice_index, r.whisker_offset, reverse=r.reverse, fresh=r.fresh)
    if current.binding != r.binding or current.target != r.target:
        raise InvalidRedexError(f"stale redex {r.label} at slice {r.slice_index}")
    rule = rule_by_name(r.rule)
    i = r.slice_index
    if rule.structural:
        return s.splice(i, i + 2, interchange(s.slices[i], s.slices[i + 1]))
    source, target = rule.source(r.reverse), rule.target(r.reverse)
    pad = s.arities()[i] - r.whisker_offset - source.dom
    replacement = target.instantiate(dict(r.target), offset=r.whisker_offset, pad=pad)
    if r.filler:
        _logger.info("%s at slice %d used the filler parameter", r.label, i)
    return s.splice(i, i + len(source.slices), replacement)


def format_step(step: int, r: Redex) -> str:
    """``step <k>: <rule> @ slice <i> offset <j> [params ...]``."""
    line = f"step {step}: {r.label} @ slice {r.slice_index} offset {r.whisker_offset}"
    if r.binding or r.target:
        shown = ", ".join(
            f"{DISPLAY_NAMES.get(k, k)}={v}" for k, v in dict(r.binding + r.target).items()
        )
        line += f" [params {shown}]"
    if r.filler:
        line += " (filler)"
    return line


def random_walk(s: SliceForm, steps: int, seed: int, rules: RuleFilter = None, *,
                callbacks: Optional[Sequence[WalkCallback]] = None,
                max_denominator: int = 8) -> SliceForm:
    """Apply *steps* uniformly chosen rewrites.

    A rule direction is chosen uniformly among those with at least one
    redex, then one of its redexes.  Free parameters are drawn from the
    same seeded stream.  Each callback is called with ``(step, redex,
    result)``; returning ``False`` stops the walk.
    """
    from ..fuzz import random_probability

    rng = random.Random(seed)
    chosen_rules = _resolve_rules(rules)
    current = s
    for step in range(1, steps + 1):
        fresh = random_probability(rng, max_denominator)
        arities = current.arities()
        groups: Dict[Tuple[str, bool], Union[List[Redex], Tuple[RewriteRule, List[Tuple[int, int]]]]] = {}
        for redex in find_redexes(current, chosen_rules, fresh=fresh):
            groups.setdefault((redex.rule, redex.reverse), []).append(redex)
        for rule in chosen_rules:
            for reverse in _directions(rule):
                if not rule.structural and not rule.source(reverse).slices:
                    slots = _insertion_slots(rule, reverse, arities)
                    if slots:
                        groups[(rule.name, reverse)] = (rule, slots)
        if not groups:
            _logger.info("walk stopped after %d steps: no redex", step - 1)
            break
        key = rng.choice(list(groups))
        group = groups[key]
        if isinstance(group, tuple):
            rule, slots = group
            i, j = rng.choice(slots)
            redex = _redex(rule, key[1], i, j, {}, fresh)
        else:
            redex = rng.choice(group)
        current = apply(current, redex)
        _logger.debug(format_step(step, redex))
        if any(cb(step, redex, current) is False for cb in callbacks or ()):
            break
    return current


Step = Union[Redex, Tuple[str, bool, int, int]]


def replay(s: SliceForm, steps: Iterable[Step], fresh: Fraction = FILLER) -> List[SliceForm]:
    """Apply a scripted derivation and return every intermediate slice form.

    Steps are redexes or ``(rule, reverse, slice_index, offset)`` tuples.
    """
    trace = [s]
    current = s
    for step in steps:
        if not isinstance(step, Redex):
            name, reverse, index, offset = step
            step = locate(current, name, index, offset, reverse=reverse, fresh=fresh)
        current = apply(current, step)
        trace.append(current)
    return trace


__all__ = [
    "Redex",
    "independent",
    "interchange",
    "find_redexes",
    "locate",
    "apply",
    "format_step",
    "random_walk",
    "replay",
]
