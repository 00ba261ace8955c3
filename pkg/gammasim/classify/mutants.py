"""Deliberately flawed limit rules, each breaking at least one property."""

from typing import FrozenSet

from gammasim.arithmetic.ordinal import Ordinal
from gammasim.arithmetic.word import WordExpr, first_letter
from gammasim.errors import OperatorError
from gammasim.operators.operator import CellByCell, LimitOperator, parse_operator
from gammasim.operators.rules import CellRule, Inf, Sup


class ConstantRule(CellRule):
    """Ignores the history and always gives ``value``."""

    def __init__(self, value: int = 0, n: int = 2):
        self.value = value
        self.n = n

    def decide(self, cofinal: FrozenSet[int], length: Ordinal) -> int:
        return self.value

    @property
    def spec(self) -> str:
        return f"mutant:const:{self.value}"


class FirstLetterRule(CellRule):
    """Gives the first value of the history."""

    def __init__(self, n: int = 2):
        self.n = n

    def apply(self, h: WordExpr) -> int:
        super().apply(h)
        return first_letter(h)

    def decide(self, cofinal: FrozenSet[int], length: Ordinal) -> int:
        return min(cofinal)

    @property
    def spec(self) -> str:
        return "mutant:first"


class LengthParityRule(CellRule):
    """limsup when the leading coefficient of the length is odd, liminf otherwise."""

    def decide(self, cofinal: FrozenSet[int], length: Ordinal) -> int:
        rule = Sup() if length.terms[0][1] % 2 else Inf()
        return rule.decide(cofinal, length)

    @property
    def spec(self) -> str:
        return "mutant:parity"


class LimitDepthRule(CellRule):
    """limsup on histories shorter than w^2, liminf on longer ones."""

    def decide(self, cofinal: FrozenSet[int], length: Ordinal) -> int:
        rule = Sup() if length < Ordinal.omega_power(2) else Inf()
        return rule.decide(cofinal, length)

    @property
    def spec(self) -> str:
        return "mutant:depth"


def parse_mutant(spec: str) -> CellRule:
    """Parse ``mutant:const:<v>``, ``mutant:first``, ``mutant:parity`` or ``mutant:depth``.

    Raises:
        OperatorError: on an unknown mutant
    """
    fields = spec.strip().split(":")
    if fields[0] != "mutant" or len(fields) < 2:
        raise OperatorError(f"unknown mutant spec {spec!r}")
    kind = fields[1]
    if kind == "const":
        try:
            value = int(fields[2]) if len(fields) > 2 else 0
        except ValueError:
            raise OperatorError(f"malformed constant in {spec!r}") from None
        return ConstantRule(value, max(2, value + 1))
    if kind == "first":
        return FirstLetterRule()
    if kind == "parity":
        return LengthParityRule()
    if kind == "depth":
        return LimitDepthRule()
    raise OperatorError(f"unknown mutant spec {spec!r}")


def parse_any_operator(spec: str) -> LimitOperator:
    """Like ``parse_operator`` but also accepting mutant rules."""
    if spec.strip().startswith("mutant:"):
        return CellByCell(parse_mutant(spec))
    return parse_operator(spec)
