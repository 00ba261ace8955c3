"""Seeded families of limit words and histories to test operators against."""

import logging
import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import List, Sequence, Tuple

from gammasim.arithmetic.ordinal import OMEGA, Ordinal, ord_divmod
from gammasim.arithmetic.word import Letter, WordExpr, concat, letters, parse_word, power
from gammasim.config import DEFAULT_SETTINGS, Settings
from gammasim.operators.history import History, TapeHistory
from gammasim.operators.patterns import LOOPING_EXPONENTS
from gammasim.tape import SymbolicTape

logger = logging.getLogger(__name__)

# shapes every corpus starts with: the words the classic counterexamples use
SEED_WORDS = ("(10)^w", "(1100)^w", "(01)^w", "(01)^{w^2}", "(12)^w", "(120)^w", "1^w",
              "0^w", "01^w", "10^w", "0^w(01)^w", "(2^w 1^w)^w", "((12)^w)^w")
# finite segments a machine may repeat
SEED_SEGMENTS = ("01", "10", "1", "12", "0112")
SEED_BLOCK_WORDS = ("0^w", "0^{w^2}", "(01)^w", "01^w", "(0^w 1)^w", "(01^w)^w")
SEED_BLOCKS = (("(12)^w", "0^w"), ("(10)^w", "(12)^w"), ("1^w", "2^w"), ("(21)^w", "0^w"))


def single_cell(word: WordExpr) -> History:
    """History whose only non-blank cell is cell 0 of the input tape."""
    return History.from_cells([[word], [], []], length=word.length)


def block(cells: Sequence[WordExpr]) -> History:
    """An omega-long block with the given histories on the first cells of the input tape."""
    blank = power(Letter(0), OMEGA)
    return History([TapeHistory(tuple(cells), (blank,)), TapeHistory((), (blank,)), TapeHistory((), (blank,))])


def constant_history(tape: SymbolicTape, length) -> History:
    """History in which all three tapes hold ``tape`` throughout, with block structure."""
    quotient, _ = ord_divmod(Ordinal.of(length), OMEGA)
    unit = History.constant([tape, tape, tape], OMEGA)
    return History.from_blocks(power(Letter(0), quotient), [unit])


@dataclass
class Corpus:
    """Words over ``n`` symbols built from letters, concatenation and powers.

    Everything is generated from ``seed``, so two corpora with the same
    parameters are identical. Every generated word has limit length.
    """

    n: int = 2
    depth: int = DEFAULT_SETTINGS.corpus_depth
    size: int = DEFAULT_SETTINGS.corpus_size
    seed: int = DEFAULT_SETTINGS.corpus_seed
    exponents: Tuple[Ordinal, ...] = field(default=LOOPING_EXPONENTS)

    @classmethod
    def from_settings(cls, n: int, settings: Settings = DEFAULT_SETTINGS, **overrides) -> "Corpus":
        values = dict(n=n, depth=settings.corpus_depth, size=settings.corpus_size, seed=settings.corpus_seed)
        values.update(overrides)
        return cls(**values)

    def _fits(self, word: WordExpr) -> bool:
        return max(letters(word)) < self.n

    def _word(self, rng: random.Random, depth: int, n: int) -> WordExpr:
        roll = rng.random()
        if depth == 0 or roll < 0.3:
            return Letter(rng.randrange(n))
        if roll < 0.6:
            return concat(*(self._word(rng, depth - 1, n) for _ in range(rng.randint(2, 3))))
        exponent = rng.choice((Ordinal.of(2), Ordinal.of(3)) + tuple(self.exponents))
        return power(self._word(rng, depth - 1, n), exponent)

    def _limit_word(self, rng: random.Random, depth: int, n: int) -> WordExpr:
        word = self._word(rng, depth, n)
        if not word.length.is_limit:
            word = concat(word, power(self._word(rng, max(depth - 1, 0), n), rng.choice(self.exponents)))
        return word

    def _omega_word(self, rng: random.Random) -> WordExpr:
        head = [Letter(rng.randrange(self.n)) for _ in range(rng.randint(0, 2))]
        loop = [Letter(rng.randrange(self.n)) for _ in range(rng.randint(1, 3))]
        return concat(*head, power(concat(*loop), OMEGA))

    @cached_property
    def words(self) -> List[WordExpr]:
        """Seed shapes over the alphabet followed by random limit words."""
        out = [w for w in (parse_word(text) for text in SEED_WORDS) if self._fits(w)]
        rng = random.Random(self.seed)
        while len(out) < self.size:
            out.append(self._limit_word(rng, self.depth, self.n))
        logger.debug(f"generated {len(out)} words over {self.n} symbols (seed {self.seed})")
        return out[:max(self.size, 0)]

    @cached_property
    def segments(self) -> List[WordExpr]:
        """Short finite words over the alphabet, for repetitions of successor-length histories."""
        return [w for w in (parse_word(text) for text in SEED_SEGMENTS) if self._fits(w)]

    @cached_property
    def histories(self) -> List[History]:
        """Block-structured histories: words over block ids with omega-long blocks."""
        out = []
        seed_blocks = [block([parse_word(a), parse_word(b)]) for a, b in SEED_BLOCKS]
        seed_blocks = [b for b in seed_blocks if all(self._fits(w) for _, _, w in b.representative_words())]
        if seed_blocks:
            for text in SEED_BLOCK_WORDS:
                word = parse_word(text)
                blocks = [seed_blocks[k % len(seed_blocks)] for k in range(2)]
                out.append(History.from_blocks(word, blocks))
        rng = random.Random(self.seed + 1)
        target = max(self.size // 4, len(out))
        while len(out) < target:
            count = rng.randint(1, 3)
            blocks = [block([self._omega_word(rng) for _ in range(rng.randint(1, 2))]) for _ in range(count)]
            word = self._limit_word(rng, min(self.depth, 2), count)
            out.append(History.from_blocks(word, blocks))
        return out

    @cached_property
    def tapes(self) -> List[SymbolicTape]:
        """Tape contents, starting with the all-1 and all-0 tapes."""
        out = [SymbolicTape((), (1,)), SymbolicTape.blank()]
        rng = random.Random(self.seed + 2)
        while len(out) < max(self.size // 20, 8):
            prefix = [rng.randrange(self.n) for _ in range(rng.randint(0, 3))]
            pattern = [rng.randrange(self.n) for _ in range(rng.randint(1, 2))]
            out.append(SymbolicTape(prefix, pattern))
        return out

    def describe(self) -> str:
        pool = ", ".join(str(e) for e in self.exponents)
        return f"n={self.n} depth={self.depth} size={self.size} seed={self.seed} exponents=({pool})"
