"""Whether an n-symbol rule restricted to 0 and 1 behaves like limsup or liminf."""

import logging
from dataclasses import dataclass
from typing import Iterable, Optional

from gammasim.arithmetic.word import WordExpr, letters, render_word
from gammasim.operators.rules import CellRule, Inf, Sup

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EnhancementResult:
    """``restricts_to`` is ``sup``, ``inf`` or None with a word telling both apart from the rule."""

    restricts_to: Optional[str]
    checked: int
    witness: Optional[WordExpr] = None

    def render(self) -> str:
        if self.restricts_to is not None:
            return f"restricts to {self.restricts_to} on {self.checked} words"
        shown = render_word(self.witness) if self.witness is not None else "-"
        return f"restricts to neither sup nor inf; witness {shown}"


def check_enhancement(rule: CellRule, words: Iterable[WordExpr]) -> EnhancementResult:
    """Compare ``rule`` with limsup and liminf on the two-symbol ``words``.

    Words using other symbols or of non-limit length are skipped.
    """
    candidates = {"sup": Sup(), "inf": Inf()}
    agreeing = set(candidates)
    checked = 0
    last_witness = None
    for word in words:
        if not word.length.is_limit or not letters(word) <= {0, 1}:
            continue
        checked += 1
        value = rule.apply(word)
        for name in list(agreeing):
            if candidates[name].apply(word) != value:
                agreeing.discard(name)
                last_witness = word
        if not agreeing:
            logger.info(f"{rule.spec} restricted to two symbols is neither sup nor inf")
            return EnhancementResult(None, checked, last_witness)
    chosen = "sup" if "sup" in agreeing else "inf"
    return EnhancementResult(chosen, checked)
