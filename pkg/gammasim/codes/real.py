"""Reals as eventually periodic bit sequences."""

from dataclasses import dataclass
from typing import Iterable

from gammasim.errors import CodeError, ParseError
from gammasim.tape import SymbolicTape, parse_tape

PREFIX = "bits:"


@dataclass(frozen=True)
class Real:
    """A subset of the naturals, given by the bits of a binary tape."""

    tape: SymbolicTape

    def __post_init__(self):
        if not self.tape.symbols() <= {0, 1}:
            raise CodeError(f"tape {self.tape} is not binary")

    @classmethod
    def from_positions(cls, positions: Iterable[int]) -> "Real":
        """The real whose set bits are exactly ``positions``."""
        positions = sorted(set(positions))
        bits = [0] * (positions[-1] + 1 if positions else 0)
        for p in positions:
            bits[p] = 1
        return cls(SymbolicTape(bits))

    def bit(self, i: int) -> int:
        return self.tape.cell(i)

    @property
    def is_finite_support(self) -> bool:
        return self.tape.is_finite_support

    def positions(self):
        """Set bits of the finite prefix."""
        return [i for i, b in enumerate(self.tape.prefix) if b]

    def render(self) -> str:
        return PREFIX + self.tape.render()

    def __str__(self):
        return self.render()


def parse_real(text: str) -> Real:
    """Parse ``bits:<prefix>|<pattern>``.

    Raises:
        ParseError: if the literal is malformed or not binary
    """
    text = text.strip()
    if not text.startswith(PREFIX):
        raise ParseError(f"real literal must start with {PREFIX!r}: {text!r}")
    tape = parse_tape(text[len(PREFIX):])
    try:
        return Real(tape)
    except CodeError as e:
        raise ParseError(str(e)) from e
