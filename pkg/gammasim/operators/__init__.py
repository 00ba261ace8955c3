"""Limit-rule operators, cell histories and looping patterns."""

from .history import BlockStructure, History, TapeHistory, constant_word
from .operator import (
    CellByCell,
    Escaping,
    LimitOperator,
    apply_cell_rule,
    apply_operator,
    parse_operator,
)
from .patterns import (
    LimitOfRepeating,
    Neither,
    Repeating,
    escaping_decompose,
    is_looping_pattern,
    supn_looping_pattern,
)
from .rules import (
    GAMMA_102,
    GAMMA_210,
    Capabilities,
    CellRule,
    Inf,
    Sup,
    SupN,
    Tick,
    cofinal_letters,
    parse_rule,
)

__all__ = [
    "BlockStructure",
    "Capabilities",
    "CellByCell",
    "CellRule",
    "Escaping",
    "GAMMA_102",
    "GAMMA_210",
    "History",
    "Inf",
    "LimitOfRepeating",
    "LimitOperator",
    "Neither",
    "Repeating",
    "Sup",
    "SupN",
    "TapeHistory",
    "Tick",
    "apply_cell_rule",
    "apply_operator",
    "cofinal_letters",
    "constant_word",
    "escaping_decompose",
    "is_looping_pattern",
    "parse_operator",
    "parse_rule",
]
