"""Ordinal arithmetic and ordinal words."""

from .ordinal import (
    OMEGA,
    ONE,
    ZERO,
    Order,
    Ordinal,
    OrdinalClass,
    OrdinalKind,
    classify_ordinal,
    is_additively_closed,
    ord_add,
    ord_cmp,
    ord_divmod,
    ord_mul,
    ord_sub,
    parse_ordinal,
    render_ordinal,
)
from .word import (
    EMPTY,
    Concat,
    Letter,
    Power,
    WordExpr,
    canonical,
    concat,
    contract,
    eq_ctr,
    first_letter,
    index,
    is_stutter_free,
    last_letter,
    length,
    letter,
    letters,
    pad_limit,
    parse_word,
    power,
    render_word,
    substitute,
    suffix_at,
    words_equal,
)

__all__ = [
    "Concat",
    "EMPTY",
    "Letter",
    "OMEGA",
    "ONE",
    "Order",
    "Ordinal",
    "OrdinalClass",
    "OrdinalKind",
    "Power",
    "WordExpr",
    "ZERO",
    "canonical",
    "classify_ordinal",
    "concat",
    "contract",
    "eq_ctr",
    "first_letter",
    "index",
    "is_additively_closed",
    "is_stutter_free",
    "last_letter",
    "length",
    "letter",
    "letters",
    "ord_add",
    "ord_cmp",
    "ord_divmod",
    "ord_mul",
    "ord_sub",
    "pad_limit",
    "parse_ordinal",
    "parse_word",
    "power",
    "render_ordinal",
    "render_word",
    "substitute",
    "suffix_at",
    "words_equal",
]
