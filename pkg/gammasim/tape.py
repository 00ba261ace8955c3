"""Tape contents over omega: a finite prefix followed by a repeating pattern."""

from typing import Callable, Iterable, Sequence, Tuple

from gammasim.errors import ParseError


def _minimal_period(pattern: Tuple[int, ...]) -> Tuple[int, ...]:
    size = len(pattern)
    for period in range(1, size + 1):
        if size % period == 0 and pattern == pattern[:period] * (size // period):
            return pattern[:period]
    return pattern


class SymbolicTape:
    """An eventually periodic sequence of symbols.

    Cell ``i`` holds ``prefix[i]`` for ``i < len(prefix)`` and
    ``pattern[(i - len(prefix)) % len(pattern)]`` afterwards. The
    representation is normalized (minimal pattern, shortest prefix), so two
    tapes are equal exactly when their fields are.
    """

    __slots__ = ("prefix", "pattern", "_hash")

    def __init__(self, prefix: Iterable[int] = (), pattern: Iterable[int] = (0,)):
        prefix = tuple(int(s) for s in prefix)
        pattern = _minimal_period(tuple(int(s) for s in pattern))
        if not pattern:
            raise ValueError("tape pattern must not be empty")
        while prefix and prefix[-1] == pattern[-1]:
            prefix = prefix[:-1]
            pattern = pattern[-1:] + pattern[:-1]
        self.prefix = prefix
        self.pattern = pattern
        self._hash = hash((prefix, pattern))

    @classmethod
    def blank(cls) -> "SymbolicTape":
        return cls((), (0,))

    @classmethod
    def from_cells(cls, cells: Sequence[int], pattern: Sequence[int] = (0,)) -> "SymbolicTape":
        return cls(cells, pattern)

    def cell(self, i: int) -> int:
        if i < len(self.prefix):
            return self.prefix[i]
        return self.pattern[(i - len(self.prefix)) % len(self.pattern)]

    def cells(self, count: int) -> Tuple[int, ...]:
        return tuple(self.cell(i) for i in range(count))

    @property
    def period(self) -> int:
        return len(self.pattern)

    @property
    def is_finite_support(self) -> bool:
        return self.pattern == (0,)

    def symbols(self) -> frozenset:
        return frozenset(self.prefix) | frozenset(self.pattern)

    def map(self, fn: Callable[[int], int]) -> "SymbolicTape":
        """Apply ``fn`` to every cell."""
        return SymbolicTape([fn(s) for s in self.prefix], [fn(s) for s in self.pattern])

    def render(self) -> str:
        return f"{_render_symbols(self.prefix)}|{_render_symbols(self.pattern)}"

    def __eq__(self, other):
        return (isinstance(other, SymbolicTape) and other._hash == self._hash
                and other.prefix == self.prefix and other.pattern == self.pattern)

    def __hash__(self):
        return self._hash

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"SymbolicTape({self.render()!r})"


def _render_symbols(symbols: Sequence[int]) -> str:
    return "".join(str(s) if s < 10 else f"<{s}>" for s in symbols)


def _parse_symbols(text: str, source: str) -> Tuple[int, ...]:
    out = []
    i = 0
    while i < len(text):
        char = text[i]
        if char.isdigit():
            out.append(int(char))
            i += 1
        elif char == "<":
            end = text.find(">", i)
            if end < 0 or not text[i + 1:end].isdigit():
                raise ParseError(f"malformed symbol in tape {source!r}")
            out.append(int(text[i + 1:end]))
            i = end + 1
        elif char.isspace():
            i += 1
        else:
            raise ParseError(f"unexpected {char!r} in tape {source!r}")
    return tuple(out)


def parse_tape(text: str) -> SymbolicTape:
    """Parse ``prefix|pattern`` (``pattern`` defaults to ``0``).

    Raises:
        ParseError: on malformed text
    """
    prefix_text, bar, pattern_text = text.strip().partition("|")
    prefix = _parse_symbols(prefix_text, text)
    pattern = _parse_symbols(pattern_text, text) if bar else (0,)
    if not pattern:
        raise ParseError(f"empty pattern in tape {text!r}")
    return SymbolicTape(prefix, pattern)
