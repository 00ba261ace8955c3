"""Encoding an n-symbol machine as a two-symbol machine.

Every logical cell becomes a block of ``n - 1`` physical cells, and the value
``k`` is stored as ``1^k 0^(n-k-1)``. Under limsup a block then settles on the
largest value its logical cell took cofinally often.
"""

import itertools
import logging
from math import lcm
from typing import Dict, List, Optional, Tuple

from gammasim.errors import TransformError
from gammasim.machine.program import Configuration, Move, Program, Transition
from gammasim.tape import SymbolicTape

logger = logging.getLogger(__name__)

BITS = tuple(itertools.product((0, 1), repeat=3))


def block_of(value: int, width: int) -> Tuple[int, ...]:
    """Physical cells for the logical ``value``."""
    if not 0 <= value <= width:
        raise TransformError(f"value {value} does not fit a block of width {width}")
    return (1,) * value + (0,) * (width - value)


def encode_tape_blocks(tape: SymbolicTape, n: int) -> SymbolicTape:
    width = n - 1
    prefix = [bit for s in tape.prefix for bit in block_of(s, width)]
    pattern = [bit for s in tape.pattern for bit in block_of(s, width)]
    return SymbolicTape(prefix, pattern)


def decode_tape_blocks(tape: SymbolicTape, n: int) -> SymbolicTape:
    """Logical tape read off a physical tape, each block counting its 1s."""
    width = n - 1
    start = -(-len(tape.prefix) // width)
    span = lcm(tape.period, width) // width

    def value(block: int) -> int:
        return sum(tape.cell(block * width + j) for j in range(width))

    return SymbolicTape([value(b) for b in range(start)], [value(b) for b in range(start, start + span)])


def _counts(counts: Tuple[int, ...]) -> str:
    return "".join(str(c) for c in counts)


class _BlockCompiler:
    """Builds the two-symbol transition table for one n-symbol program."""

    def __init__(self, program: Program):
        self.program = program
        self.width = program.n - 1
        self.table: Dict[Tuple[str, Tuple[int, int, int]], Transition] = {}
        self.states: List[str] = list(program.states)

    def _add_state(self, name: str):
        if name not in self.states:
            self.states.append(name)

    def read_state(self, state: str, offset: int, counts: Tuple[int, ...]) -> str:
        if offset == 0:
            return state
        return f"{state}/r{offset}/{_counts(counts)}"

    def write_state(self, state: str, read: Tuple[int, ...], offset: int) -> str:
        return f"{state}/w{offset}/{_counts(read)}"

    def move_state(self, target: str, move: Move, k: int) -> str:
        return f"{target}/{move.name}{k}"

    def write_step(self, state: str, read: Tuple[int, ...], offset: int) -> Transition:
        """Write the bits of the new block at ``offset`` and continue left, or start moving."""
        rule = self.program.transition(state, read)
        bits = tuple(int(w > offset) for w in rule.write)
        if offset > 0:
            return Transition(bits, Move.L, self.write_state(state, read, offset - 1))
        if rule.next_state == self.program.halt or rule.move == Move.S:
            return Transition(bits, Move.S, rule.next_state)
        if self.width == 1:
            return Transition(bits, rule.move, rule.next_state)
        return Transition(bits, rule.move, self.move_state(rule.next_state, rule.move, 1))

    def compile_state(self, state: str):
        width = self.width
        for offset in range(width):
            for counts in itertools.product(range(offset + 1), repeat=3):
                if offset == 0 and counts != (0, 0, 0):
                    continue
                name = self.read_state(state, offset, counts)
                self._add_state(name)
                for bits in BITS:
                    seen = tuple(c + b for c, b in zip(counts, bits))
                    if offset < width - 1:
                        self.table[(name, bits)] = Transition(bits, Move.R,
                                                              self.read_state(state, offset + 1, seen))
                    else:
                        self.table[(name, bits)] = self.write_step(state, seen, offset)
        for read in itertools.product(range(self.program.n), repeat=3):
            for offset in range(width - 1):
                name = self.write_state(state, read, offset)
                self._add_state(name)
                for bits in BITS:
                    self.table[(name, bits)] = self.write_step(state, read, offset)

    def compile_moves(self):
        for target in self.program.states:
            if target == self.program.halt:
                continue
            for move in (Move.L, Move.R):
                for k in range(1, self.width):
                    name = self.move_state(target, move, k)
                    following = target if k == self.width - 1 else self.move_state(target, move, k + 1)
                    self._add_state(name)
                    for bits in BITS:
                        self.table[(name, bits)] = Transition(bits, move, following)

    def compile(self) -> Program:
        for state in self.program.states:
            if state != self.program.halt:
                self.compile_state(state)
        self.compile_moves()
        return Program(
            n=2,
            states=tuple(self.states),
            start=self.program.start,
            limit=self.program.limit,
            halt=self.program.halt,
            table=self.table,
            name=f"{self.program.name}@2" if self.program.name else "",
            comments=[f"block encoding of {self.program.name or 'an n-symbol program'}",
                      f"block width {self.width}"],
        )


def encode_n_in_2(program: Program) -> Program:
    """Two-symbol program running ``program`` on blocks of ``n - 1`` cells.

    Each logical step reads the block left to right, writes the new block
    right to left and then moves ``n - 1`` cells. The head is on the first
    cell of a block whenever the machine is in one of the original states.

    Raises:
        TransformError: if ``program`` already uses two symbols
    """
    if program.n < 3:
        raise TransformError(f"block encoding needs at least three symbols, got {program.n}")
    encoded = _BlockCompiler(program).compile()
    encoded.validate()
    logger.info(f"encoded {program.name!r} over 2 symbols: {len(encoded.states)} states")
    return encoded


class BlockDecoder:
    """Reads configurations of a block-encoded program back as the original's."""

    def __init__(self, reference: Program):
        self.reference = reference
        self.n = reference.n
        self.markers = False

    def encode_input(self, tape: SymbolicTape) -> SymbolicTape:
        return encode_tape_blocks(tape, self.n)

    def decode_tape(self, tape: SymbolicTape) -> SymbolicTape:
        return decode_tape_blocks(tape, self.n)

    def decode_configuration(self, config: Configuration) -> Optional[Configuration]:
        width = self.n - 1
        if config.state not in self.reference.states or config.head % width:
            return None
        return Configuration(config.state, config.head // width,
                             tuple(self.decode_tape(t) for t in config.tapes))

    def marked(self, config: Configuration) -> bool:
        return False
