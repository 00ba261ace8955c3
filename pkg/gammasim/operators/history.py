"""Tape histories: for every cell of every tape, the word of its values."""

from dataclasses import dataclass
from math import lcm
from typing import Callable, List, Optional, Sequence, Tuple

from gammasim.arithmetic.ordinal import OMEGA, Ordinal, ord_divmod
from gammasim.arithmetic.word import (
    Letter,
    WordExpr,
    concat,
    first_letter,
    letters,
    power,
    substitute,
    suffix_at,
)
from gammasim.errors import OperatorError
from gammasim.tape import SymbolicTape


@dataclass(frozen=True)
class TapeHistory:
    """Histories of one tape.

    Cell ``i`` has history ``prefix[i]`` below ``len(prefix)`` and
    ``tail[(i - len(prefix)) % len(tail)]`` from there on, so only finitely
    many words describe the whole tape.
    """

    prefix: Tuple[WordExpr, ...]
    tail: Tuple[WordExpr, ...]

    def __post_init__(self):
        if not self.tail:
            raise OperatorError("a tape history needs at least one tail word")
        size = self.tail[0].length
        for word in self.prefix + self.tail:
            if word.length != size:
                raise OperatorError(f"cell histories of lengths {size} and {word.length} on one tape")

    @property
    def length(self) -> Ordinal:
        return self.tail[0].length

    def cell(self, i: int) -> WordExpr:
        if i < len(self.prefix):
            return self.prefix[i]
        return self.tail[(i - len(self.prefix)) % len(self.tail)]

    def words(self) -> Tuple[WordExpr, ...]:
        """One word per representative cell: every prefix cell, then one period of the tail."""
        return self.prefix + self.tail

    def map(self, fn: Callable[[WordExpr], WordExpr]) -> "TapeHistory":
        return TapeHistory(tuple(fn(w) for w in self.prefix), tuple(fn(w) for w in self.tail))

    def to_tape(self, fn: Callable[[WordExpr], int]) -> SymbolicTape:
        return SymbolicTape([fn(w) for w in self.prefix], [fn(w) for w in self.tail])


def _aligned(tapes: Sequence[TapeHistory], build: Callable[[int], WordExpr]) -> TapeHistory:
    width = max(len(t.prefix) for t in tapes)
    period = lcm(*(len(t.tail) for t in tapes))
    words = [build(i) for i in range(width + period)]
    return TapeHistory(tuple(words[:width]), tuple(words[width:]))


@dataclass(frozen=True)
class BlockStructure:
    """A history written as a word over block ids, each block an omega-long segment."""

    word: WordExpr
    blocks: Tuple["History", ...]


class History:
    """The history of every tape up to some limit stage.

    A history may carry a ``structure``: the same history written as a word
    over the ids of omega-long blocks. Operators that look at the machine as a
    whole (the escaping operator) need it; cell-by-cell operators ignore it.
    """

    __slots__ = ("tapes", "length", "structure")

    def __init__(self, tapes: Sequence[TapeHistory], structure: Optional[BlockStructure] = None):
        self.tapes = tuple(tapes)
        if not self.tapes:
            raise OperatorError("a history needs at least one tape")
        self.length = self.tapes[0].length
        for tape in self.tapes:
            if tape.length != self.length:
                raise OperatorError("tapes of one history must have equal lengths")
        self.structure = structure

    @classmethod
    def constant(cls, tapes: Sequence[SymbolicTape], length) -> "History":
        """History of a machine whose tapes hold ``tapes`` throughout."""
        length = Ordinal.of(length)

        def const(symbol):
            return power(Letter(symbol), length)

        return cls([TapeHistory(tuple(const(s) for s in t.prefix), tuple(const(s) for s in t.pattern))
                    for t in tapes])

    @classmethod
    def from_cells(cls, cells: Sequence[Sequence[WordExpr]], length=None) -> "History":
        """History with explicit words for the first cells of each tape and ``0`` elsewhere.

        Args:
            cells: One list of cell words per tape
            length: History length, taken from the first word when omitted

        Raises:
            OperatorError: if no length can be determined
        """
        if length is None:
            found = [w for tape in cells for w in tape]
            if not found:
                raise OperatorError("cannot infer the length of an empty history")
            length = found[0].length
        blank = power(Letter(0), Ordinal.of(length))
        return cls([TapeHistory(tuple(tape), (blank,)) for tape in cells])

    @classmethod
    def from_blocks(cls, word: WordExpr, blocks: Sequence["History"]) -> "History":
        """Substitute block histories for the letters of ``word``."""
        blocks = tuple(blocks)
        used = sorted(letters(word))
        if not used or used[-1] >= len(blocks):
            raise OperatorError(f"block word {word} refers to unknown blocks")
        tapes = []
        for t in range(len(blocks[used[0]].tapes)):
            members = [blocks[b].tapes[t] for b in used]

            def build(i, t=t):
                return substitute(word, lambda b: blocks[b].tapes[t].cell(i))

            tapes.append(_aligned(members, build))
        return cls(tapes, BlockStructure(word, blocks))

    def cell(self, tape: int, i: int) -> WordExpr:
        return self.tapes[tape].cell(i)

    def first_snapshot(self) -> Tuple[SymbolicTape, ...]:
        """Tape contents at position 0 of the history."""
        return tuple(t.to_tape(first_letter) for t in self.tapes)

    def map_cells(self, fn: Callable[[WordExpr], WordExpr]) -> "History":
        return History([t.map(fn) for t in self.tapes])

    def suffix(self, rho) -> "History":
        """Final segment of the history starting at position ``rho``."""
        rho = Ordinal.of(rho)
        structure = None
        if self.structure is not None:
            quotient, remainder = ord_divmod(rho, OMEGA)
            if remainder.is_zero:
                structure = BlockStructure(suffix_at(self.structure.word, quotient), self.structure.blocks)
        return History([t.map(lambda w: suffix_at(w, rho)) for t in self.tapes], structure)

    def repeat(self, exponent) -> "History":
        """The history repeated ``exponent`` times."""
        exponent = Ordinal.of(exponent)
        structure = None
        if self.structure is not None:
            structure = BlockStructure(power(self.structure.word, exponent), self.structure.blocks)
        return History([t.map(lambda w: power(w, exponent)) for t in self.tapes], structure)

    def then(self, other: "History") -> "History":
        """This history followed by ``other``."""
        if len(self.tapes) != len(other.tapes):
            raise OperatorError("histories over different numbers of tapes")
        structure = None
        if (self.structure is not None and other.structure is not None
                and self.structure.blocks == other.structure.blocks):
            structure = BlockStructure(concat(self.structure.word, other.structure.word),
                                       self.structure.blocks)
        tapes = []
        for mine, theirs in zip(self.tapes, other.tapes):
            tapes.append(_aligned([mine, theirs], lambda i, a=mine, b=theirs: concat(a.cell(i), b.cell(i))))
        return History(tapes, structure)

    def representative_words(self) -> List[Tuple[int, int, WordExpr]]:
        """``(tape, cell, word)`` for every representative cell."""
        out = []
        for t, tape in enumerate(self.tapes):
            for i, word in enumerate(tape.words()):
                out.append((t, i, word))
        return out

    def __eq__(self, other):
        return isinstance(other, History) and other.tapes == self.tapes

    def __hash__(self):
        return hash(self.tapes)

    def __repr__(self):
        return f"<History length={self.length} tapes={len(self.tapes)}>"


def constant_word(symbol: int, length=OMEGA) -> WordExpr:
    return power(Letter(symbol), Ordinal.of(length))

