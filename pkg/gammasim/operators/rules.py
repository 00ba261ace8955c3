"""Cell limit rules: limsup, liminf, priority limsup and the tick rule."""

from dataclasses import dataclass
from typing import FrozenSet, Sequence, Tuple

from gammasim.arithmetic.ordinal import Ordinal, classify_ordinal, ord_divmod, parse_ordinal
from gammasim.arithmetic.word import Concat, Power, WordExpr, check_alphabet, letters
from gammasim.errors import OperatorError, WordError


@dataclass(frozen=True)
class Capabilities:
    """Properties an operator declares about itself."""

    cell_by_cell: bool = True
    stable: bool = True
    asymptotic: bool = True
    contraction_proof: bool = True
    looping_stable: bool = True
    length_sensitive: bool = False


def cofinal_letters(h: WordExpr) -> FrozenSet[int]:
    """Symbols occurring at positions unbounded in ``|h|``.

    Raises:
        OperatorError: if ``h`` does not have limit length
    """
    if not h.length.is_limit:
        raise OperatorError(f"history of non-limit length {h.length}")
    node = h
    while True:
        if isinstance(node, Power):
            if node.exponent.is_limit:
                return letters(node.base)
            node = node.base
        elif isinstance(node, Concat):
            node = [p for p in node.parts if not p.length.is_zero][-1]
        else:
            raise OperatorError("a single letter has no cofinal letters")


def _check_permutation(priority: Sequence[int], n: int) -> Tuple[int, ...]:
    priority = tuple(priority)
    if sorted(priority) != list(range(n)):
        raise OperatorError(f"{priority} is not a permutation of 0..{n - 1}")
    return priority


class CellRule:
    """A limit rule for one cell, given that cell's history."""

    n: int = 2
    capabilities = Capabilities()

    def apply(self, h: WordExpr) -> int:
        """Limit value of a cell whose history is ``h``.

        Raises:
            OperatorError: for a non-limit history or a foreign symbol
        """
        if not h.length.is_limit:
            raise OperatorError(f"history of non-limit length {h.length}")
        try:
            check_alphabet(h, self.n)
        except WordError as e:
            raise OperatorError(str(e)) from e
        return self.decide(cofinal_letters(h), h.length)

    def decide(self, cofinal: FrozenSet[int], length: Ordinal) -> int:
        raise NotImplementedError

    @property
    def spec(self) -> str:
        raise NotImplementedError

    def __repr__(self):
        return f"<{type(self).__name__} {self.spec}>"


def _format_perm(priority: Sequence[int]) -> str:
    separator = "," if max(priority) >= 10 else ""
    return separator.join(str(s) for s in priority)


def _pick(priority: Tuple[int, ...], cofinal: FrozenSet[int]) -> int:
    for symbol in priority:
        if symbol in cofinal:
            return symbol
    raise OperatorError(f"no symbol of {sorted(cofinal)} in priority {priority}")


class SupN(CellRule):
    """Priority limsup: the most preferred symbol that occurs cofinally."""

    def __init__(self, priority: Sequence[int]):
        self.n = len(tuple(priority))
        self.priority = _check_permutation(priority, self.n)

    def decide(self, cofinal: FrozenSet[int], length: Ordinal) -> int:
        return _pick(self.priority, cofinal)

    def maximum(self, values) -> int:
        """Most preferred symbol of ``values``."""
        return _pick(self.priority, frozenset(values))

    def prefers(self, a: int, b: int) -> bool:
        return self.priority.index(a) < self.priority.index(b)

    @property
    def spec(self) -> str:
        return f"supn:{_format_perm(self.priority)}"

    def __eq__(self, other):
        return isinstance(other, SupN) and other.priority == self.priority

    def __hash__(self):
        return hash(("supn", self.priority))


class Sup(SupN):
    def __init__(self):
        super().__init__((1, 0))

    @property
    def spec(self) -> str:
        return "sup"


class Inf(SupN):
    def __init__(self):
        super().__init__((0, 1))

    @property
    def spec(self) -> str:
        return "inf"


GAMMA_102 = SupN((1, 0, 2))
GAMMA_210 = SupN((2, 1, 0))


class Tick(CellRule):
    """Priority limsup whose order switches at stages that are multiples of ``tau``."""

    capabilities = Capabilities(looping_stable=False, length_sensitive=True)

    def __init__(self, tau: Ordinal, tick_priority: Sequence[int] = (2, 1, 0),
                 base_priority: Sequence[int] = (1, 0, 2)):
        tau = Ordinal.of(tau)
        flags = classify_ordinal(tau)
        if not tau.is_limit or not flags.is_additively_closed:
            raise OperatorError(f"tick period {tau} must be an additively closed limit ordinal")
        self.tau = tau
        self.tick = SupN(tick_priority)
        self.base = SupN(base_priority)
        if self.tick.n != self.base.n:
            raise OperatorError("tick and base priorities use different alphabets")
        self.n = self.tick.n

    def is_tick(self, length: Ordinal) -> bool:
        return ord_divmod(length, self.tau)[1].is_zero

    def next_tick_after(self, stage: Ordinal) -> Ordinal:
        """Smallest multiple of ``tau`` strictly greater than ``stage``."""
        quotient, _ = ord_divmod(stage, self.tau)
        return self.tau * (quotient + 1)

    def decide(self, cofinal: FrozenSet[int], length: Ordinal) -> int:
        rule = self.tick if self.is_tick(length) else self.base
        return rule.decide(cofinal, length)

    @property
    def spec(self) -> str:
        return f"tick:{self.tau}:{_format_perm(self.tick.priority)}:{_format_perm(self.base.priority)}"


def parse_rule(spec: str) -> CellRule:
    """Parse ``sup``, ``inf``, ``supn:<perm>`` or ``tick:<tau>:<tickperm>:<baseperm>``.

    Raises:
        OperatorError: on an unknown or malformed spec
    """
    spec = spec.strip()
    if spec == "sup":
        return Sup()
    if spec == "inf":
        return Inf()
    head, _, rest = spec.partition(":")
    if head == "supn" and rest:
        return SupN(_parse_perm(rest))
    if head == "tick" and rest:
        fields = rest.split(":")
        if len(fields) not in (1, 3):
            raise OperatorError(f"malformed tick spec {spec!r}")
        tau = parse_ordinal(fields[0])
        if len(fields) == 1:
            return Tick(tau)
        return Tick(tau, _parse_perm(fields[1]), _parse_perm(fields[2]))
    raise OperatorError(f"unknown operator spec {spec!r}")


def _parse_perm(text: str) -> Tuple[int, ...]:
    text = text.strip()
    if "," in text:
        return tuple(int(s) for s in text.split(","))
    if not text.isdigit():
        raise OperatorError(f"malformed priority {text!r}")
    return tuple(int(c) for c in text)
