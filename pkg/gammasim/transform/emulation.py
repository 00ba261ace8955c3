"""Emulating a two-symbol limsup machine on a larger alphabet.

A write of 0 over 1 is replaced by a chain of writes running through every
other symbol before settling on 0, so a cell that flips cofinally often shows
the whole alphabet cofinally often in its history.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

from gammasim.arithmetic.ordinal import OMEGA
from gammasim.arithmetic.word import Letter, concat, power
from gammasim.errors import OperatorError, TransformError
from gammasim.machine.program import Configuration, Move, Program, Transition
from gammasim.operators.history import History
from gammasim.operators.operator import LimitOperator
from gammasim.tape import SymbolicTape

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SymbolMap:
    """Physical symbols standing for the logical 0 and 1 of a two-symbol machine.

    ``one`` is written for a logical 1. Overwriting it with a logical 0 writes
    ``chain`` one symbol per step, in order; blank 0 stays the logical 0.
    """

    n: int
    one: int
    chain: Tuple[int, ...]

    def __post_init__(self):
        if self.one == 0:
            raise TransformError("the blank symbol cannot stand for a logical 1")
        if sorted(self.chain + (self.one,)) != list(range(self.n)):
            raise TransformError(f"chain {self.chain} with one={self.one} does not cover 0..{self.n - 1}")

    @property
    def decode(self) -> Tuple[int, ...]:
        """Physical-to-logical table; chain symbols read as the value being overwritten."""
        return tuple(0 if s == 0 else 1 for s in range(self.n))

    def physical(self, value: int) -> int:
        return self.one if value else 0

    def encode_tape(self, tape: SymbolicTape) -> SymbolicTape:
        return tape.map(self.physical)

    def decode_tape(self, tape: SymbolicTape) -> SymbolicTape:
        table = self.decode
        return tape.map(lambda s: table[s])

    def is_marker(self, symbol: int) -> bool:
        return symbol not in (0, self.one)


def cycle_word(n: int):
    """The word 1 2 ... (n-1) 0."""
    return concat(*(Letter(s) for s in list(range(1, n)) + [0]))


def _cell_limit(op: LimitOperator, word) -> int:
    """Limit value of one cell with history ``word`` whose neighbours stay blank."""
    history = History.from_cells([[word], [], []], length=word.length)
    return op.apply(history)[0].cell(0)


def symbol_map_for(op: LimitOperator, chain: Optional[Sequence[int]] = None) -> SymbolMap:
    """Pick the physical symbol for 1 from what ``op`` makes of a full cycle.

    Args:
        op: An operator over three or more symbols
        chain: Override of the overwrite chain; the default runs through the
            remaining nonzero symbols in cyclic order and ends on 0

    Returns:
        SymbolMap whose cycling cells settle on ``one`` under ``op``

    Raises:
        TransformError: if ``op`` settles a full cycle on the blank symbol
    """
    n = op.n
    if n <= 2:
        raise TransformError(f"emulation needs more than two symbols, operator has {n}")
    try:
        one = _cell_limit(op, power(cycle_word(n), OMEGA))
    except OperatorError as e:
        raise TransformError(f"operator cannot rule a cycling cell: {e}") from e
    if not 0 <= one < n:
        raise TransformError(f"operator maps a cycling cell to {one}, outside 0..{n - 1}")
    if one == 0:
        raise TransformError(f"{op.spec} settles a cycling cell on the blank symbol")
    if chain is None:
        chain = [s for s in range(one + 1, n)] + [s for s in range(1, one)] + [0]
    symbols = SymbolMap(n, one, tuple(chain))
    logger.debug(f"symbol map for {op.spec}: one={symbols.one} chain={symbols.chain}")
    return symbols


def _chain_state(state: str, read: Tuple[int, ...], j: int) -> str:
    return f"{state}~{''.join(str(s) for s in read)}~{j}"


def emulate_limsup_in_n(program: Program, op: LimitOperator, chain: Optional[Sequence[int]] = None) -> Program:
    """Rewrite a two-symbol program so that ``op`` rules it the way limsup rules the original.

    Transitions writing 0 over 1 become chains of fresh states that write the
    chain symbols in the same cell without moving, the last one carrying the
    original move and target state. All other transitions are kept under the
    symbol renaming.

    Raises:
        TransformError: if ``program`` is not a two-symbol program or ``op`` is unsuitable
    """
    if program.n != 2:
        raise TransformError(f"expected a two-symbol program, got {program.n} symbols")
    symbols = symbol_map_for(op, chain)
    n = symbols.n
    table: Dict[Tuple[str, Tuple[int, ...]], Transition] = {}
    states = list(program.states)
    for state in program.states:
        if state == program.halt:
            continue
        for read in itertools.product(range(n), repeat=3):
            logical = tuple(symbols.decode[s] for s in read)
            rule = program.transition(state, logical)
            cycling = [t for t in range(3) if logical[t] == 1 and rule.write[t] == 0]
            if not cycling:
                write = tuple(symbols.physical(w) for w in rule.write)
                table[(state, read)] = Transition(write, rule.move, rule.next_state)
                continue
            steps = symbols.chain
            names = [_chain_state(state, read, j) for j in range(1, len(steps))]
            states.extend(names)
            write = tuple(steps[0] if t in cycling else symbols.physical(rule.write[t]) for t in range(3))
            if not names:
                table[(state, read)] = Transition(write, rule.move, rule.next_state)
                continue
            table[(state, read)] = Transition(write, Move.S, names[0])
            for j, name in enumerate(names, start=1):
                last = j == len(names)
                move = rule.move if last else Move.S
                target = rule.next_state if last else names[j]
                for here in itertools.product(range(n), repeat=3):
                    written = tuple(steps[j] if t in cycling else here[t] for t in range(3))
                    table[(name, here)] = Transition(written, move, target)

    emulated = Program(
        n=n,
        states=tuple(states),
        start=program.start,
        limit=program.limit,
        halt=program.halt,
        table=table,
        decode=symbols.decode,
        name=f"{program.name}@{op.spec}" if program.name else "",
        comments=[f"emulation of {program.name or 'a two-symbol program'} under {op.spec}",
                  f"one={symbols.one} chain={','.join(str(s) for s in symbols.chain)}"],
    )
    emulated.validate()
    logger.info(f"emulated {program.name!r} over {n} symbols: {len(states)} states")
    return emulated


class SymbolDecoder:
    """Reads configurations of an emulating program back as the emulated program's."""

    def __init__(self, reference: Program, symbols: SymbolMap):
        self.reference = reference
        self.symbols = symbols
        self.markers = True

    def encode_input(self, tape: SymbolicTape) -> SymbolicTape:
        return self.symbols.encode_tape(tape)

    def decode_tape(self, tape: SymbolicTape) -> SymbolicTape:
        return self.symbols.decode_tape(tape)

    def decode_configuration(self, config: Configuration) -> Optional[Configuration]:
        """The emulated configuration, or None while a chain is being written."""
        if config.state not in self.reference.states:
            return None
        if any(self.symbols.is_marker(s) for tape in config.tapes for s in tape.symbols()):
            return None
        return Configuration(config.state, config.head, tuple(self.decode_tape(t) for t in config.tapes))

    def marked(self, config: Configuration) -> bool:
        return any(self.symbols.is_marker(s) for tape in config.tapes for s in tape.symbols())
