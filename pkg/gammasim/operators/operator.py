"""Limit operators: map a limit history to the tape contents at the limit."""

from typing import Optional, Tuple

from gammasim.arithmetic.word import WordExpr
from gammasim.errors import OperatorError
from gammasim.operators.history import History
from gammasim.operators.patterns import LimitOfRepeating, Repeating, escaping_decompose
from gammasim.operators.rules import GAMMA_102, GAMMA_210, Capabilities, CellRule, parse_rule
from gammasim.tape import SymbolicTape


class LimitOperator:
    """Base class of operators ruling a machine at limit stages."""

    n: int = 2
    capabilities = Capabilities()

    def apply(self, history: History) -> Tuple[SymbolicTape, ...]:
        return self.apply_ruled(history)[0]

    def apply_ruled(self, history: History) -> Tuple[Tuple[SymbolicTape, ...], Optional[str]]:
        """Limit tapes plus the name of the sub-rule that decided them, if any."""
        raise NotImplementedError

    @property
    def spec(self) -> str:
        raise NotImplementedError

    def __repr__(self):
        return f"<{type(self).__name__} {self.spec}>"


def _cellwise(rule: CellRule, history: History) -> Tuple[SymbolicTape, ...]:
    if not history.length.is_limit:
        raise OperatorError(f"history of non-limit length {history.length}")
    return tuple(tape.to_tape(rule.apply) for tape in history.tapes)


class CellByCell(LimitOperator):
    """Applies one cell rule to every cell independently."""

    def __init__(self, rule: CellRule):
        self.rule = rule
        self.n = rule.n
        self.capabilities = rule.capabilities

    def apply_ruled(self, history: History):
        return _cellwise(self.rule, history), None

    @property
    def spec(self) -> str:
        return self.rule.spec


class Escaping(LimitOperator):
    """Three-symbol limsup that switches priority once the machine has been repeating.

    Histories ending in (or cofinal with) a limit repetition of a looping
    pattern of the 102 rule are ruled by the 210 rule, all others by the 102 rule.
    """

    n = 3
    capabilities = Capabilities(cell_by_cell=False, looping_stable=False)

    def apply_ruled(self, history: History):
        shape = escaping_decompose(history)
        if isinstance(shape, (Repeating, LimitOfRepeating)):
            return _cellwise(GAMMA_210, history), "210"
        return _cellwise(GAMMA_102, history), "102"

    @property
    def spec(self) -> str:
        return "esc"


def parse_operator(spec: str) -> LimitOperator:
    """Parse an operator spec: ``sup``, ``inf``, ``supn:<perm>``, ``tick:<tau>:<p>:<p>`` or ``esc``.

    Raises:
        OperatorError: on an unknown spec
    """
    if spec.strip() == "esc":
        return Escaping()
    return CellByCell(parse_rule(spec))


def apply_cell_rule(rule: CellRule, h: WordExpr) -> int:
    return rule.apply(h)


def apply_operator(op: LimitOperator, history: History) -> Tuple[SymbolicTape, ...]:
    return op.apply(history)
