"""
Reduction rule registry for tdcsp.
"""

from .rules import (
    CHECKS,
    RULES,
    Rule,
    apply_rule,
    get_rule,
    get_rule_info,
    list_rules,
)

__all__ = [
    "Rule",
    "RULES",
    "CHECKS",
    "list_rules",
    "get_rule",
    "get_rule_info",
    "apply_rule",
]
