"""Run outcomes, trace entries and run results."""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple, Union

from gammasim.arithmetic.ordinal import Ordinal
from gammasim.arithmetic.word import WordExpr, render_word
from gammasim.machine.program import Configuration
from gammasim.tape import SymbolicTape


@dataclass(frozen=True)
class Halted:
    """Reached the halt state; ``clocked`` counts the steps before the halting transition."""

    clocked: Ordinal
    at_limit: bool = False

    kind = "halted"

    @property
    def stage(self) -> Ordinal:
        return self.clocked


@dataclass(frozen=True)
class LoopCertified:
    """The snapshot at ``entry`` recurs with period ``period``; first seen at ``seen_at``."""

    entry: Ordinal
    period: Ordinal
    seen_at: Ordinal
    criterion: str = "general"

    kind = "looping"

    @property
    def stage(self) -> Ordinal:
        return self.seen_at


@dataclass(frozen=True)
class FuelExhausted:
    stage: Ordinal

    kind = "fuel-exhausted"


@dataclass(frozen=True)
class LimitNotInferable:
    stage: Ordinal
    diagnostic: str

    kind = "limit-not-inferable"


@dataclass(frozen=True)
class HorizonReached:
    """The next limit stage lies beyond the horizon."""

    stage: Ordinal

    kind = "horizon"


RunOutcome = Union[Halted, LoopCertified, FuelExhausted, LimitNotInferable, HorizonReached]


def describe_outcome(outcome: RunOutcome) -> str:
    if isinstance(outcome, Halted):
        note = " at-limit" if outcome.at_limit else ""
        return f"halted clocked={outcome.clocked}{note}"
    if isinstance(outcome, LoopCertified):
        return (f"looping entry={outcome.entry} period={outcome.period} "
                f"seen_at={outcome.seen_at} criterion={outcome.criterion}")
    if isinstance(outcome, LimitNotInferable):
        return f"limit-not-inferable stage={outcome.stage} ({outcome.diagnostic})"
    return f"{outcome.kind} stage={outcome.stage}"


@dataclass(frozen=True)
class TraceEntry:
    """One limit stage of a run."""

    stage: Ordinal
    snapshot: Configuration
    word: WordExpr
    ruled_by: Optional[str] = None
    accelerated_from: Optional[Tuple[Ordinal, Ordinal]] = None
    flag: Optional[str] = None

    def render(self) -> str:
        tapes = ",".join(t.render() for t in self.snapshot.tapes)
        line = f"stage={self.stage} state={self.snapshot.state} tapes={tapes}"
        if self.accelerated_from is not None:
            alpha, beta = self.accelerated_from
            line += f" accelerated-from={alpha}+({beta})*w"
        if self.ruled_by is not None:
            line += f" ruled-by={self.ruled_by}"
        if self.flag is not None:
            line += f" {self.flag}"
        return line


@dataclass
class Trace:
    """Limit snapshots of a run together with the blocks its histories are made of."""

    entries: List[TraceEntry] = field(default_factory=list)
    blocks: List = field(default_factory=list)

    def stages(self) -> List[Ordinal]:
        return [e.stage for e in self.entries]

    def snapshot_at(self, stage) -> Optional[Configuration]:
        for entry in self.entries:
            if entry.stage == stage:
                return entry.snapshot
        return None

    def render(self) -> str:
        return "\n".join(e.render() for e in self.entries)

    def block_word(self) -> str:
        return render_word(self.entries[-1].word) if self.entries else ""


@dataclass
class RunResult:
    outcome: RunOutcome
    trace: Trace
    final: Configuration
    appearances: Dict[Tuple[int, SymbolicTape], Ordinal]
    output_stable_since: Optional[Ordinal]
    steps: int
    last_new_snapshot: Ordinal
    search_bound: Ordinal

    def output(self) -> SymbolicTape:
        return self.final.tapes[2]
