"""The transfinite run loop: omega-blocks, limit stages, acceleration and loop detection."""

import logging
from typing import Dict, List, Optional, Tuple

from gammasim.arithmetic.ordinal import OMEGA, ZERO, Ordinal, ord_sub, parse_ordinal
from gammasim.arithmetic.word import (
    Letter,
    WordExpr,
    canonical,
    concat,
    contract,
    pad_limit,
    power,
    suffix_at,
)
from gammasim.config import DEFAULT_SETTINGS, Settings
from gammasim.errors import EngineError
from gammasim.machine.certificate import BlockRun, run_block
from gammasim.machine.looping import detect_looping, general_criterion, segment_criterion
from gammasim.machine.outcome import (
    FuelExhausted,
    Halted,
    HorizonReached,
    LimitNotInferable,
    LoopCertified,
    RunOutcome,
    RunResult,
    Trace,
    TraceEntry,
)
from gammasim.machine.program import OUTPUT, Configuration, Program
from gammasim.operators.history import History
from gammasim.operators.operator import LimitOperator
from gammasim.operators.rules import Tick
from gammasim.tape import SymbolicTape

logger = logging.getLogger(__name__)

OMEGA_OMEGA = Ordinal.omega_power(OMEGA)


class Engine:
    """Runs one program under one operator, one limit event at a time.

    Each call to ``advance`` simulates the omega steps after the current
    stage, infers the next limit snapshot and then tries to certify a loop or
    to jump ahead over a repeating segment of limit snapshots.
    """

    def __init__(self, program: Program, op: LimitOperator, input_tape: Optional[SymbolicTape] = None,
                 fuel: Optional[int] = None, horizon=None, settings: Settings = DEFAULT_SETTINGS):
        if program.n > op.n:
            raise EngineError(f"{program.n}-symbol program under a {op.n}-symbol operator")
        if input_tape is not None and any(s >= program.n for s in input_tape.symbols()):
            raise EngineError(f"input tape {input_tape} uses symbols outside the program alphabet")
        self.program = program
        self.op = op
        self.settings = settings
        self.fuel = settings.fuel if fuel is None else fuel
        if horizon is None:
            horizon = parse_ordinal(settings.horizon)
        self.horizon = Ordinal.of(horizon)
        self.stage = ZERO
        self.config = program.initial(input_tape)
        self.word: WordExpr = concat()
        self.blocks: List[History] = []
        self._block_ids: Dict[History, int] = {}
        self.trace = Trace(blocks=self.blocks)
        self.appearances: Dict[Tuple[int, SymbolicTape], Ordinal] = {}
        self.steps = 0
        self.limit_events = 0
        self.outcome: Optional[RunOutcome] = None
        self.final: Configuration = self.config
        self.last_output_change = ZERO
        self.last_new_snapshot = ZERO
        self._seen: set = set()
        self._record_tapes(self.config, ZERO)
        if program.start == program.halt:
            self.outcome = Halted(ZERO)

    @property
    def done(self) -> bool:
        return self.outcome is not None

    def _record(self, tape: int, content: SymbolicTape, stage: Ordinal):
        key = (tape, content)
        if key not in self.appearances:
            self.appearances[key] = stage

    def _record_tapes(self, config: Configuration, stage: Ordinal):
        for t, content in enumerate(config.tapes):
            self._record(t, content, stage)

    def _compress(self, word: WordExpr) -> WordExpr:
        caps = self.op.capabilities
        if caps.contraction_proof and not caps.length_sensitive:
            return pad_limit(contract(word))
        return canonical(word)

    def _intern(self, block: History) -> int:
        block = block.map_cells(self._compress)
        bid = self._block_ids.get(block)
        if bid is None:
            bid = len(self.blocks)
            self.blocks.append(block)
            self._block_ids[block] = bid
            logger.debug(f"new block {bid}")
        return bid

    def _limit_snapshot(self, word: WordExpr) -> Tuple[Configuration, Optional[str]]:
        tapes, ruled_by = self.op.apply_ruled(History.from_blocks(word, self.blocks))
        return Configuration(self.program.limit, 0, tapes), ruled_by

    def _add_entry(self, entry: TraceEntry):
        if entry.snapshot not in self._seen:
            self._seen.add(entry.snapshot)
            self.last_new_snapshot = entry.stage
        self.stage = entry.stage
        self.config = entry.snapshot
        self.final = entry.snapshot
        self.word = entry.word
        self.limit_events += 1
        self._record_tapes(entry.snapshot, entry.stage)
        self.trace.entries.append(entry)
        logger.info(f"limit stage {entry.stage}: state={entry.snapshot.state}")

    # -- omega limits -------------------------------------------------------

    def infer_omega_limit(self, run: BlockRun) -> TraceEntry:
        """Turn a certified block into the next limit stage and record it."""
        bid = self._intern(run.block)
        word = canonical(concat(self.word, Letter(bid)))
        stage = self.stage + OMEGA
        snapshot, ruled_by = self._limit_snapshot(word)
        if run.output_changes:
            self.last_output_change = self.stage + run.output_changes[-1]
        if run.output_cofinal or snapshot.tapes[OUTPUT] != run.final_output:
            self.last_output_change = stage
        flag = None
        if self.program.limit == self.program.halt:
            flag = "halt-at-limit"
        entry = TraceEntry(stage, snapshot, word, ruled_by=ruled_by, flag=flag)
        self._add_entry(entry)
        if flag is not None:
            self.outcome = Halted(stage, at_limit=True)
        return entry

    # -- higher limits ------------------------------------------------------

    def _vetoed(self, alpha: Ordinal, target: Ordinal) -> bool:
        rule = getattr(self.op, "rule", None)
        return isinstance(rule, Tick) and rule.next_tick_after(alpha) < target

    def infer_higher_limit(self) -> Optional[TraceEntry]:
        """Jump from stage a+b to a+b*w when stages a and a+b share a snapshot.

        Among the earlier stages with the current snapshot, the one giving the
        largest target within the horizon is used. Returns None when no jump
        is possible or allowed.
        """
        if not self.op.capabilities.asymptotic or self.limit_events >= self.settings.max_limits:
            return None
        current = self.trace.entries[-1]
        best = None
        for earlier in self.trace.entries[:-1]:
            if earlier.snapshot != current.snapshot:
                continue
            alpha = earlier.stage
            beta = ord_sub(current.stage, alpha)
            target = alpha + beta * OMEGA
            if target > self.horizon or self._vetoed(alpha, target):
                continue
            if best is None or target > best[2]:
                best = (earlier, beta, target)
        if best is None:
            return None
        earlier, beta, target = best
        segment = suffix_at(current.word, earlier.word.length)
        word = canonical(concat(earlier.word, power(segment, OMEGA)))
        snapshot, ruled_by = self._limit_snapshot(word)
        if self.last_output_change > earlier.stage or snapshot.tapes[OUTPUT] != current.snapshot.tapes[OUTPUT]:
            self.last_output_change = target
        entry = TraceEntry(target, snapshot, word, ruled_by=ruled_by, accelerated_from=(earlier.stage, beta))
        logger.info(f"accelerated from {earlier.stage} with period {beta} to {target}")
        self._add_entry(entry)
        return entry

    def _after_limit(self):
        while self.outcome is None:
            entry = self.trace.entries[-1]
            caps = self.op.capabilities
            if entry.accelerated_from is not None and caps.looping_stable:
                found = general_criterion(self.trace.entries) or segment_criterion(self.trace.entries)
                if found is not None:
                    self._certify(found)
                    return
            if self.infer_higher_limit() is not None:
                continue
            found = detect_looping(self.trace.entries, self.blocks, self.op)
            if found is not None:
                self._certify(found)
            return

    def _certify(self, found: LoopCertified):
        logger.info(f"loop certified: entry {found.entry}, period {found.period}, seen at {found.seen_at}")
        self.outcome = found

    # -- driving ------------------------------------------------------------

    def advance(self) -> Optional[RunOutcome]:
        """Run up to the next limit stage (and any jumps it allows)."""
        if self.outcome is not None:
            return self.outcome
        used = self.steps + self.limit_events
        if used >= self.fuel or self.limit_events >= self.settings.max_limits:
            self.outcome = FuelExhausted(self.stage)
            return self.outcome
        if self.stage + OMEGA > self.horizon:
            self.outcome = HorizonReached(self.stage)
            return self.outcome
        run = run_block(self.program, self.config, self.settings, budget=self.fuel - used)
        self.steps += run.steps
        for time, tape, content in run.appearances:
            self._record(tape, content, self.stage + time)
        if run.kind == "halted":
            if run.output_changes:
                self.last_output_change = self.stage + run.output_changes[-1]
            self.final = run.final
            self._record_tapes(run.final, self.stage + run.halted_after)
            self.outcome = Halted(self.stage + run.halted_after)
            logger.info(f"halted at stage {self.outcome.clocked}")
        elif run.kind == "fuel":
            self.outcome = FuelExhausted(self.stage)
        elif run.kind == "stuck":
            self.outcome = LimitNotInferable(self.stage, run.certificate)
            logger.warning(f"limit after stage {self.stage} not inferable: {run.certificate}")
        else:
            self.infer_omega_limit(run)
            self._after_limit()
        return self.outcome

    def result(self) -> RunResult:
        if self.outcome is None:
            raise EngineError("run has not finished")
        stable = None
        if isinstance(self.outcome, Halted):
            stable = self.last_output_change
        elif isinstance(self.outcome, LoopCertified) and self.last_output_change <= self.outcome.entry:
            stable = self.last_output_change
        return RunResult(
            outcome=self.outcome,
            trace=self.trace,
            final=self.final,
            appearances=dict(self.appearances),
            output_stable_since=stable,
            steps=self.steps,
            last_new_snapshot=self.last_new_snapshot,
            search_bound=self.last_new_snapshot * OMEGA_OMEGA,
        )

    def run(self) -> RunResult:
        while self.advance() is None:
            pass
        return self.result()


def run(program: Program, op: LimitOperator, input_tape: Optional[SymbolicTape] = None,
        fuel: Optional[int] = None, horizon=None, settings: Settings = DEFAULT_SETTINGS) -> RunResult:
    """Run ``program`` under ``op`` until it halts, is seen looping, or runs out of fuel or horizon."""
    return Engine(program, op, input_tape, fuel, horizon, settings).run()
