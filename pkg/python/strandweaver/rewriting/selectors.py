"""Predicate helpers for choosing rules.

:func:`~strandweaver.rewriting.engine.find_redexes`,
:func:`~strandweaver.rewriting.engine.random_walk` and the verifier accept
any callable that receives a :class:`~strandweaver.rewriting.rules.RewriteRule`
and returns a boolean.  The utilities below build and compose such
callables.

Example
-------
>>> from strandweaver.rewriting.selectors import by_name, p_or, parametric, select
>>> predicate = p_or(by_name("R4"), parametric())
>>> [r.name for r in select(predicate)][:3]
['R4', 'R6', 'R8']
"""

from __future__ import annotations

from typing import Callable, Iterable, List, Optional

from .rules import RewriteRule, rule_table

RulePredicate = Callable[[RewriteRule], bool]


def by_name(*names: str) -> RulePredicate:
    """Match rules whose name is one of *names*.

    Example
    -------
    >>> pred = by_name("R4", "R5")
    >>> find_redexes(slices, pred)  # doctest: +SKIP
    """
    wanted = frozenset(names)

    def _predicate(rule: RewriteRule) -> bool:
        return rule.name in wanted

    return _predicate


def parametric() -> RulePredicate:
    """Match rules with a ``c`` parameter on either side."""

    def _predicate(rule: RewriteRule) -> bool:
        return rule.parametric

    return _predicate


def structural() -> RulePredicate:
    def _predicate(rule: RewriteRule) -> bool:
        return rule.structural

    return _predicate


def relations_only() -> RulePredicate:
    """Every rule except the interchange move."""
    return p_not(structural())


def p_and(*predicates: RulePredicate) -> RulePredicate:
    """Logical AND of multiple predicates.

    Example
    -------
    >>> pred = p_and(parametric(), p_not(by_name("R12")))
    >>> random_walk(slices, 100, 7, pred)  # doctest: +SKIP
    """

    def _predicate(rule: RewriteRule) -> bool:
        return all(p(rule) for p in predicates)

    return _predicate


def p_or(*predicates: RulePredicate) -> RulePredicate:
    def _predicate(rule: RewriteRule) -> bool:
        return any(p(rule) for p in predicates)

    return _predicate


def p_not(predicate: RulePredicate) -> RulePredicate:
    def _predicate(rule: RewriteRule) -> bool:
        return not predicate(rule)

    return _predicate


def select(predicate: RulePredicate, rules: Optional[Iterable[RewriteRule]] = None) -> List[RewriteRule]:
    """Rules of *rules* (the whole table by default) accepted by *predicate*."""
    return [rule for rule in (rule_table() if rules is None else rules) if predicate(rule)]
