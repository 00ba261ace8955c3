"""Machines over three tapes, their transfinite runs and loop detection."""

from .certificate import BlockRun, BlockSimulator, run_block
from .engine import Engine, run
from .looping import (
    detect_looping,
    escaping_criterion,
    general_criterion,
    seen_looping_stage,
    segment_criterion,
    supn_criterion,
)
from .outcome import (
    FuelExhausted,
    Halted,
    HorizonReached,
    LimitNotInferable,
    LoopCertified,
    RunOutcome,
    RunResult,
    Trace,
    TraceEntry,
    describe_outcome,
)
from .program import (
    INPUT,
    OUTPUT,
    TAPE_NAMES,
    WORK,
    Configuration,
    Move,
    Program,
    Transition,
    load_program,
    parse_program,
    step,
)

__all__ = [
    "BlockRun",
    "BlockSimulator",
    "Configuration",
    "Engine",
    "FuelExhausted",
    "Halted",
    "HorizonReached",
    "INPUT",
    "LimitNotInferable",
    "LoopCertified",
    "Move",
    "OUTPUT",
    "Program",
    "RunOutcome",
    "RunResult",
    "TAPE_NAMES",
    "Trace",
    "TraceEntry",
    "Transition",
    "WORK",
    "describe_outcome",
    "detect_looping",
    "escaping_criterion",
    "general_criterion",
    "load_program",
    "parse_program",
    "run",
    "run_block",
    "seen_looping_stage",
    "segment_criterion",
    "step",
    "supn_criterion",
]
