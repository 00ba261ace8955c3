"""Looping patterns and the repetition analysis behind the escaping operator."""

import logging
from dataclasses import dataclass
from typing import List, Sequence, Union

from gammasim.arithmetic.ordinal import OMEGA, Ordinal
from gammasim.arithmetic.word import Concat, Letter, Power, WordExpr, canonical, letters
from gammasim.operators.history import History
from gammasim.operators.rules import GAMMA_102, SupN

logger = logging.getLogger(__name__)

LOOPING_EXPONENTS = (OMEGA, OMEGA * 2, Ordinal.omega_power(2), Ordinal.omega_power(3))


def supn_looping_pattern(history: History, rule: SupN) -> bool:
    """True iff every cell starts the segment at the rule's maximum over the segment."""
    for _, _, word in history.representative_words():
        if rule.maximum(letters(word)) != _first(word):
            return False
    return True


def _first(word: WordExpr) -> int:
    node = word
    while not isinstance(node, Letter):
        node = node.base if isinstance(node, Power) else node.parts[0]
    return node.symbol


def is_looping_pattern(history: History, op) -> bool:
    """True iff a machine with history ``H0 . history^w`` loops over ``history``.

    For priority limsup operators the test is the per-cell maximum criterion;
    for any other operator the repetition is formed symbolically and checked
    to lead back to the first snapshot of the segment.
    """
    if not history.length.is_limit:
        return False
    rule = getattr(op, "rule", None)
    if isinstance(rule, SupN):
        return supn_looping_pattern(history, rule)
    start = history.first_snapshot()
    for exponent in LOOPING_EXPONENTS:
        if tuple(op.apply(history.repeat(exponent))) != start:
            return False
    return True


@dataclass(frozen=True)
class Repeating:
    """The history ends with a looping pattern repeated a limit number of times."""

    head: WordExpr
    body: WordExpr


@dataclass(frozen=True)
class LimitOfRepeating:
    """The history is a limit of histories that end in repetitions."""

    word: WordExpr


@dataclass(frozen=True)
class Neither:
    pass


Decomposition = Union[Repeating, LimitOfRepeating, Neither]


def _items(word: WordExpr) -> List[WordExpr]:
    if isinstance(word, Concat):
        return list(word.parts)
    return [word]


def _build(items: Sequence[WordExpr]) -> WordExpr:
    return items[0] if len(items) == 1 else Concat(items)


def _looping_rotation(base: List[WordExpr], blocks) -> bool:
    """True iff some rotation of ``base`` (at block boundaries) is a looping pattern for the 102 rule."""
    for k in range(len(base)):
        rotated = _build(base[k:] + base[:k])
        if supn_looping_pattern(History.from_blocks(rotated, blocks), GAMMA_102):
            return True
    return False


def _has_repeating_point(items: List[WordExpr], blocks) -> bool:
    for item in items:
        if not isinstance(item, Power):
            continue
        base = _items(item.base)
        if item.exponent.is_limit and _looping_rotation(base, blocks):
            return True
        if _has_repeating_point(base, blocks):
            return True
    return False


def _decompose(items: List[WordExpr], blocks) -> Decomposition:
    last = items[-1]
    if isinstance(last, Letter):
        return Neither()
    base = _items(last.base)
    if not last.exponent.is_limit:
        return _decompose(base, blocks)
    if _looping_rotation(base, blocks):
        return Repeating(_build(items[:-1]) if len(items) > 1 else Concat(()), last.base)
    if _has_repeating_point(base, blocks):
        return LimitOfRepeating(_build(items))
    return Neither()


def escaping_decompose(history: History) -> Decomposition:
    """Classify a limit history by its repetition structure.

    The block word of the history is put in canonical form. It is
    ``Repeating`` when it ends in a limit power of a word some rotation of
    which is a looping pattern for the 102 rule, ``LimitOfRepeating`` when it
    ends in a limit power of a word that contains such a repetition, and
    ``Neither`` otherwise (including histories without block structure).
    """
    if history.structure is None or not history.length.is_limit:
        return Neither()
    word = canonical(history.structure.word)
    result = _decompose(_items(word), history.structure.blocks)
    logger.debug(f"decomposed block word {word} as {type(result).__name__}")
    return result
