"""Omega-long runs from a configuration, certified by an exact cycle or a translation lasso.

Starting from a configuration (stage 0 or a limit stage) the machine is
stepped until either it halts, its configuration repeats exactly, or it
repeats up to a rightward translation of the head and tapes. In the last two
cases the rest of the omega steps are known, and every cell's history over
the whole block can be written as a finite word.
"""

import bisect
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from gammasim.arithmetic.ordinal import OMEGA
from gammasim.arithmetic.word import EMPTY, Letter, WordExpr, concat, power
from gammasim.config import DEFAULT_SETTINGS, Settings
from gammasim.machine.program import OUTPUT, Configuration, Program
from gammasim.operators.history import History, TapeHistory
from gammasim.tape import SymbolicTape

logger = logging.getLogger(__name__)


@dataclass
class BlockRun:
    """Result of simulating one omega-long block.

    ``kind`` is ``halted``, ``cycle``, ``lasso``, ``stuck`` (no certificate
    within the step cap) or ``fuel`` (the run budget ran out).
    """

    kind: str
    steps: int
    block: Optional[History] = None
    halted_after: Optional[int] = None
    final: Optional[Configuration] = None
    output_changes: List[int] = field(default_factory=list)
    output_cofinal: bool = False
    final_output: Optional[SymbolicTape] = None
    certificate: str = ""
    appearances: List[Tuple[int, int, SymbolicTape]] = field(default_factory=list)

    @property
    def certified(self) -> bool:
        return self.kind in ("cycle", "lasso")


def _runs(initial: int, changes: List[Tuple[int, int]], start: int, end: int) -> WordExpr:
    """Word of a cell's values over times ``[start, end)``."""
    value = initial
    k = 0
    while k < len(changes) and changes[k][0] <= start:
        value = changes[k][1]
        k += 1
    pieces = []
    since = start
    while k < len(changes) and changes[k][0] < end:
        time, new = changes[k]
        pieces.append(power(Letter(value), time - since))
        value, since = new, time
        k += 1
    pieces.append(power(Letter(value), end - since))
    return concat(*pieces)


def _final_value(initial: int, changes: List[Tuple[int, int]]) -> int:
    return changes[-1][1] if changes else initial


class _Workspace:
    """Mutable tapes over a symbolic base, with per-cell change lists."""

    def __init__(self, config: Configuration):
        self.base = config.tapes
        self.state = config.state
        self.head = config.head
        self.width = max([config.head + 1] + [len(t.prefix) for t in config.tapes])
        self.cells = [bytearray(t.cells(self.width)) for t in config.tapes]
        self.changes: List[Dict[int, List[Tuple[int, int]]]] = [{}, {}, {}]

    def grow(self, width: int):
        if width <= self.width:
            return
        for t in range(3):
            self.cells[t].extend(self.base[t].cell(i) for i in range(self.width, width))
        self.width = width

    def key(self) -> int:
        return hash((self.state, self.head, bytes(self.cells[0]), bytes(self.cells[1]), bytes(self.cells[2])))

    def same_as(self, other: "_Workspace") -> bool:
        if self.state != other.state or self.head != other.head:
            return False
        width = max(self.width, other.width)
        self.grow(width)
        other.grow(width)
        return self.cells == other.cells

    def tape(self, t: int) -> SymbolicTape:
        base = self.base[t]
        pattern = [base.cell(self.width + k) for k in range(base.period)]
        return SymbolicTape(self.cells[t], pattern)

    def configuration(self) -> Configuration:
        return Configuration(self.state, self.head, tuple(self.tape(t) for t in range(3)))

    def cell(self, t: int, i: int) -> int:
        return self.cells[t][i] if i < self.width else self.base[t].cell(i)

    def initial(self, t: int, i: int) -> int:
        return self.base[t].cell(i)


class BlockSimulator:
    """Steps a program from one configuration until the block is certified."""

    def __init__(self, program: Program, config: Configuration, settings: Settings = DEFAULT_SETTINGS,
                 budget: Optional[int] = None):
        self.program = program
        self.start = config
        self.settings = settings
        self.budget = settings.block_steps if budget is None else budget
        self.ws = _Workspace(config)
        self.time = 0
        self.heads = [config.head]
        self.clamps: List[int] = []
        self.appearances: List[Tuple[int, int, SymbolicTape]] = []

    def _step(self, ws: _Workspace, record: bool) -> bool:
        """Advance ``ws`` by one step; returns True when the halt state is entered."""
        head = ws.head
        ws.grow(head + 1)
        read = (ws.cells[0][head], ws.cells[1][head], ws.cells[2][head])
        rule = self.program.transition(ws.state, read)
        time = self.time + 1 if record else None
        for t in range(3):
            symbol = rule.write[t]
            if ws.cells[t][head] != symbol:
                ws.cells[t][head] = symbol
                if record:
                    ws.changes[t].setdefault(head, []).append((time, symbol))
                    if time <= self.settings.appearance_steps:
                        self.appearances.append((time, t, ws.tape(t)))
        target = head + rule.move.value
        if target < 0:
            target = 0
            if record:
                self.clamps.append(self.time)
        ws.head = target
        ws.state = rule.next_state
        return rule.next_state == self.program.halt

    def _replay(self, steps: int) -> _Workspace:
        replica = _Workspace(self.start)
        for _ in range(steps):
            self._step(replica, record=False)
        return replica

    def run(self) -> BlockRun:
        ws = self.ws
        if ws.state == self.program.halt:
            return BlockRun("halted", 0, halted_after=0, final=self.start)
        seen: Dict[int, List[int]] = {}
        records: Dict[str, deque] = {}
        record_head = ws.head
        cap = min(self.settings.block_steps, self.budget)
        while True:
            key = ws.key()
            for earlier in seen.get(key, ()):
                if self._replay(earlier).same_as(ws):
                    return self._cycle_block(earlier, self.time)
            seen.setdefault(key, []).append(self.time)

            if self.time >= cap:
                break
            halted = self._step(ws, record=True)
            self.time += 1
            self.heads.append(ws.head)
            if halted:
                return BlockRun("halted", self.time, halted_after=self.time - 1, final=ws.configuration(),
                                output_changes=self._output_times(), appearances=self.appearances)
            if ws.head > record_head:
                record_head = ws.head
                window = records.setdefault(ws.state, deque(maxlen=self.settings.lasso_window))
                lasso = self._find_lasso(window)
                if lasso is not None:
                    return self._lasso_block(*lasso)
                window.append((self.time, ws.head, [bytes(c) for c in ws.cells]))

        low, high = min(self.heads), max(self.heads)
        kind = "fuel" if self.budget < self.settings.block_steps else "stuck"
        diagnostic = (f"no cycle or translation within {self.time} steps; state={ws.state} "
                      f"head={ws.head} head range [{low}, {high}]")
        logger.debug(diagnostic)
        return BlockRun(kind, self.time, certificate=diagnostic, appearances=self.appearances)

    def _output_times(self) -> List[int]:
        return sorted(time for changes in self.ws.changes[OUTPUT].values() for time, _ in changes)

    def _find_lasso(self, window) -> Optional[Tuple[int, int, int]]:
        ws = self.ws
        t2, h2 = self.time, ws.head
        for t1, h1, cells1 in reversed(window):
            d = h2 - h1
            if any(d % tape.period for tape in ws.base):
                continue
            k = bisect.bisect_left(self.clamps, t1)
            if k < len(self.clamps) and self.clamps[k] < t2:
                continue
            low = min(self.heads[t1:t2 + 1])
            upto = max([len(cells1[0]), ws.width - d] + [len(t.prefix) for t in ws.base])
            upto += max(t.period for t in ws.base)
            if all(self._translated(t, cells1[t], d, low, upto) for t in range(3)):
                logger.debug(f"translation lasso t1={t1} t2={t2} shift={d} low={low}")
                return t1, d, low
        return None

    def _translated(self, t: int, cells1: bytes, d: int, low: int, upto: int) -> bool:
        base = self.ws.base[t]
        for j in range(low, upto):
            before = cells1[j] if j < len(cells1) else base.cell(j)
            if before != self.ws.cell(t, j + d):
                return False
        return True

    def _cycle_block(self, t1: int, t2: int) -> BlockRun:
        ws = self.ws
        tapes = []
        for t in range(3):
            base = ws.base[t]
            start = max(ws.width, len(base.prefix))
            prefix = []
            for i in range(start):
                changes = ws.changes[t].get(i, [])
                initial = ws.initial(t, i)
                head = _runs(initial, changes, 0, t1) if t1 else EMPTY
                prefix.append(concat(head, power(_runs(initial, changes, t1, t2), OMEGA)))
            tail = [power(Letter(base.cell(start + r)), OMEGA) for r in range(base.period)]
            tapes.append(TapeHistory(tuple(prefix), tuple(tail)))
        outputs = self._output_times()
        logger.debug(f"exact cycle t1={t1} t2={t2}")
        return BlockRun("cycle", t2, block=History(tapes), output_changes=outputs,
                        final_output=ws.tape(OUTPUT),
                        output_cofinal=any(t1 < time <= t2 for time in outputs),
                        certificate=f"cycle {t1}..{t2}", appearances=self.appearances)

    def _lasso_block(self, t1: int, d: int, low: int) -> BlockRun:
        ws = self.ws
        t2 = self.time
        period = t2 - t1
        before = max(self.heads[:t1], default=-1)
        outputs = self._output_times()
        cofinal = any(t1 < time <= t2 for time in outputs)
        c0 = max([before + 1, low] + [len(t.prefix) for t in ws.base])
        cycles = (c0 + d - 1 - low) // d + 1
        t_end = t1 + cycles * period
        while self.time < t_end:
            self._step(ws, record=True)
            self.time += 1
            self.heads.append(ws.head)
        tapes = []
        for t in range(3):
            words = []
            for i in range(c0 + d):
                changes = ws.changes[t].get(i, [])
                initial = ws.initial(t, i)
                if changes:
                    last = changes[-1][0]
                    head = _runs(initial, changes, 0, last)
                else:
                    head = EMPTY
                words.append(concat(head, power(Letter(_final_value(initial, changes)), OMEGA)))
            tapes.append(TapeHistory(tuple(words[:c0]), tuple(words[c0:])))
        return BlockRun("lasso", self.time, block=History(tapes), output_changes=outputs,
                        final_output=ws.tape(OUTPUT),
                        output_cofinal=cofinal,
                        certificate=f"lasso {t1}..{t2} shift {d}", appearances=self.appearances)


def run_block(program: Program, config: Configuration, settings: Settings = DEFAULT_SETTINGS,
              budget: Optional[int] = None) -> BlockRun:
    """Simulate the omega steps following ``config``."""
    return BlockSimulator(program, config, settings, budget).run()
