"""Running many machines side by side on one stage clock."""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import pandas as pd

from gammasim.arithmetic.ordinal import Ordinal
from gammasim.config import DEFAULT_SETTINGS, Settings
from gammasim.errors import GammaError
from gammasim.machine.engine import Engine
from gammasim.machine.outcome import RunResult, describe_outcome
from gammasim.machine.program import INPUT, TAPE_NAMES, Program
from gammasim.operators.operator import LimitOperator
from gammasim.tape import SymbolicTape

logger = logging.getLogger(__name__)


@dataclass
class FirstAppearanceLog:
    """Stages at which tape contents first appeared, per machine and overall.

    ``overall`` maps a content to ``(stage, machine, tape)`` for its earliest
    appearance, ties going to the lower machine index and then the lower tape.
    """

    per_machine: List[Dict[Tuple[int, SymbolicTape], Ordinal]] = field(default_factory=list)
    overall: Dict[SymbolicTape, Tuple[Ordinal, int, int]] = field(default_factory=dict)
    tapes_seen: Dict[SymbolicTape, set] = field(default_factory=dict)

    def add_machine(self, appearances: Dict[Tuple[int, SymbolicTape], Ordinal]):
        index = len(self.per_machine)
        ordered = sorted(appearances.items(), key=lambda item: (item[1], item[0][0]))
        self.per_machine.append(dict(ordered))
        for (tape, content), stage in ordered:
            self.tapes_seen.setdefault(content, set()).add(tape)
            previous = self.overall.get(content)
            if previous is None or (stage, index, tape) < previous:
                self.overall[content] = (stage, index, tape)

    def input_only(self) -> List[SymbolicTape]:
        """Contents that were never on the work or output tape."""
        return [c for c, tapes in self.tapes_seen.items() if tapes == {INPUT}]

    def entries(self) -> List[Tuple[Ordinal, int, int, SymbolicTape]]:
        rows = [(stage, machine, tape, content) for content, (stage, machine, tape) in self.overall.items()]
        return sorted(rows, key=lambda row: (row[0], row[1], row[2], row[3].render()))


@dataclass
class DovetailRun:
    """Per-machine results (None where the run failed) with the failures and the log."""

    results: List[Optional[RunResult]]
    errors: Dict[int, str]
    log: FirstAppearanceLog
    rounds: int


def dovetail(programs: Sequence[Program], op: LimitOperator, horizon=None, fuel: Optional[int] = None,
             settings: Settings = DEFAULT_SETTINGS,
             inputs: Optional[Sequence[Optional[SymbolicTape]]] = None) -> DovetailRun:
    """Advance every machine one omega-block per round, machine ``r`` joining at round ``r``.

    A machine whose run raises a domain error is recorded as failed and the
    others go on.
    """
    inputs = list(inputs) if inputs is not None else [None] * len(programs)
    engines: List[Optional[Engine]] = [None] * len(programs)
    errors: Dict[int, str] = {}
    finished = [False] * len(programs)
    rounds = 0
    while not all(finished):
        for r in range(min(rounds + 1, len(programs))):
            if finished[r]:
                continue
            try:
                if engines[r] is None:
                    engines[r] = Engine(programs[r], op, inputs[r], fuel, horizon, settings)
                if engines[r].advance() is not None:
                    finished[r] = True
                    logger.info(f"machine {r} ({programs[r].name}) finished in round {rounds}")
            except GammaError as e:
                errors[r] = str(e)
                finished[r] = True
                logger.warning(f"machine {r} ({programs[r].name}) failed: {e}")
        rounds += 1

    log = FirstAppearanceLog()
    results: List[Optional[RunResult]] = []
    for r, engine in enumerate(engines):
        if r in errors or engine is None:
            results.append(None)
            log.add_machine({})
            continue
        result = engine.result()
        results.append(result)
        log.add_machine(result.appearances)
    return DovetailRun(results, errors, log, rounds)


def outcome_frame(programs: Sequence[Program], run: DovetailRun) -> pd.DataFrame:
    """One row per machine: name, outcome kind, stage and steps."""
    rows = []
    for r, (program, result) in enumerate(zip(programs, run.results)):
        if result is None:
            rows.append({"machine": r, "program": program.name, "outcome": "error",
                         "stage": "-", "steps": 0, "detail": run.errors.get(r, "")})
            continue
        rows.append({"machine": r, "program": program.name, "outcome": result.outcome.kind,
                     "stage": str(result.outcome.stage), "steps": result.steps,
                     "detail": describe_outcome(result.outcome)})
    return pd.DataFrame(rows, columns=["machine", "program", "outcome", "stage", "steps", "detail"])


def appearance_frame(log: FirstAppearanceLog) -> pd.DataFrame:
    """First appearances of every tape content, earliest first."""
    rows = [{"stage": str(stage), "machine": machine, "tape": TAPE_NAMES[tape], "content": content.render()}
            for stage, machine, tape, content in log.entries()]
    return pd.DataFrame(rows, columns=["stage", "machine", "tape", "content"])
