"""Equational rewriting on slice forms."""

from .derivations import MIRROR_DERIVATIONS, Derivation
from .engine import (
    Redex,
    apply,
    find_redexes,
    format_step,
    independent,
    interchange,
    locate,
    random_walk,
    replay,
)
from .rules import (
    INTERCHANGE,
    Pattern,
    PatternSlice,
    RewriteRule,
    RuleCheck,
    check_instance,
    relation_rules,
    rule_by_name,
    rule_table,
    verify_rule,
)

__all__ = [
    "MIRROR_DERIVATIONS",
    "Derivation",
    "Redex",
    "apply",
    "find_redexes",
    "format_step",
    "independent",
    "interchange",
    "locate",
    "random_walk",
    "replay",
    "INTERCHANGE",
    "Pattern",
    "PatternSlice",
    "RewriteRule",
    "RuleCheck",
    "check_instance",
    "relation_rules",
    "rule_by_name",
    "rule_table",
    "verify_rule",
]
