"""Co-simulation of a program and its emulation."""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from gammasim.arithmetic.ordinal import ZERO, Ordinal
from gammasim.config import DEFAULT_SETTINGS, Settings
from gammasim.machine.engine import run
from gammasim.machine.outcome import Halted, RunResult, describe_outcome
from gammasim.machine.program import Configuration, Program, step
from gammasim.operators.operator import LimitOperator
from gammasim.tape import SymbolicTape

logger = logging.getLogger(__name__)

MAX_GAP = 1000


@dataclass
class EmulationReport:
    """Outcome of comparing two runs stage by stage.

    ``marker_ok`` is None when the emulation has no spare symbols to mark
    the steps in between. A check that compared no limit stage, where the
    runs did not both halt, is INCONCLUSIVE rather than a PASS.
    """

    horizon: Ordinal
    limit_snapshot_matches: List[Tuple[Ordinal, bool]] = field(default_factory=list)
    interleaving_ok: bool = True
    marker_ok: Optional[bool] = True
    outcome_ok: bool = True
    divergence: Optional[str] = None
    reference_outcome: str = ""
    emulator_outcome: str = ""
    both_halted: bool = False

    @property
    def verdict(self) -> str:
        if not (all(ok for _, ok in self.limit_snapshot_matches) and self.interleaving_ok
                and self.marker_ok is not False and self.outcome_ok):
            return "FAIL"
        if not self.limit_snapshot_matches and not self.both_halted:
            return "INCONCLUSIVE"
        return "PASS"

    @property
    def passed(self) -> bool:
        return self.verdict == "PASS"

    def diverge(self, message: str):
        if self.divergence is None:
            self.divergence = message
            logger.info(f"emulation diverges: {message}")

    def render(self) -> str:
        lines = [f"horizon={self.horizon}",
                 f"reference: {self.reference_outcome}",
                 f"emulator: {self.emulator_outcome}"]
        for stage, ok in self.limit_snapshot_matches:
            lines.append(f"limit stage={stage} {'match' if ok else 'MISMATCH'}")
        marker = "n/a" if self.marker_ok is None else ("ok" if self.marker_ok else "FAIL")
        lines.append(f"interleaving={'ok' if self.interleaving_ok else 'FAIL'} markers={marker} "
                     f"outcome={'ok' if self.outcome_ok else 'FAIL'}")
        if self.divergence:
            lines.append(f"first divergence: {self.divergence}")
        lines.append(self.verdict)
        return "\n".join(lines)


def _decoded_snapshot(decoder, config: Configuration) -> Tuple[str, Tuple[SymbolicTape, ...]]:
    return config.state, tuple(decoder.decode_tape(t) for t in config.tapes)


def _compare_limits(report: EmulationReport, reference: RunResult, emulator: RunResult, decoder):
    ours = {e.stage: e.snapshot for e in reference.trace.entries}
    theirs = {e.stage: e.snapshot for e in emulator.trace.entries}
    if not ours or not theirs:
        if ours or theirs:
            report.diverge("only one run reached a limit stage")
            report.limit_snapshot_matches.append((max(list(ours) + list(theirs)), False))
        return
    upper = min(max(ours), max(theirs))
    for stage in sorted(set(ours) | set(theirs)):
        if stage > upper:
            continue
        if stage not in ours or stage not in theirs:
            report.limit_snapshot_matches.append((stage, False))
            report.diverge(f"limit stage {stage} reached by only one run")
            continue
        expected = (ours[stage].state, ours[stage].tapes)
        ok = _decoded_snapshot(decoder, theirs[stage]) == expected
        report.limit_snapshot_matches.append((stage, ok))
        if not ok:
            report.diverge(f"limit snapshots differ at stage {stage}")


def _interleave(report: EmulationReport, reference: Program, emulator: Program, decoder,
                start: Configuration, mirror: Configuration, steps: int, max_gap: int, stage: Ordinal):
    """Step both programs from matching configurations, checking every reference step is reproduced."""
    current, other = start, mirror
    for k in range(steps):
        if current.state == reference.halt:
            return
        current, halted = step(reference, current)
        for gap in range(max_gap):
            other, other_halted = step(emulator, other)
            decoded = decoder.decode_configuration(other)
            if halted and other_halted:
                if _decoded_snapshot(decoder, other) != (current.state, current.tapes):
                    report.interleaving_ok = False
                    report.diverge(f"halting configurations differ after stage {stage}+{k + 1}")
                return
            if other_halted:
                report.interleaving_ok = False
                report.diverge(f"emulator halted early after stage {stage}+{k}")
                return
            if decoded is not None:
                if decoded != current:
                    report.interleaving_ok = False
                    report.diverge(f"step {k + 1} after stage {stage} reproduced wrongly")
                    return
                break
            if decoder.markers and not decoder.marked(other):
                report.marker_ok = False
                report.diverge(f"unmarked in-between configuration after stage {stage}+{k}")
        else:
            report.interleaving_ok = False
            report.diverge(f"step {k + 1} after stage {stage} not reproduced within {max_gap} steps")
            return


def verify_emulation(reference: Program, reference_op: LimitOperator, emulator: Program,
                     emulator_op: LimitOperator, horizon, decoder,
                     input_tape: Optional[SymbolicTape] = None, fuel: Optional[int] = None,
                     settings: Settings = DEFAULT_SETTINGS, successor_steps: int = 64,
                     max_gap: int = MAX_GAP) -> EmulationReport:
    """Check that ``emulator`` under ``emulator_op`` emulates ``reference`` under ``reference_op``.

    Limit snapshots must agree after decoding at every limit stage both runs
    reach. From stage 0 and from each matching limit stage, the first
    ``successor_steps`` reference steps must be reproduced in order with
    finitely many emulator steps in between, and when the decoder has marker
    symbols every in-between configuration must show one.

    Args:
        decoder: Maps emulator configurations and tapes back to the reference
            (``SymbolDecoder`` or ``BlockDecoder``)

    Returns:
        EmulationReport, whose last rendered line is PASS, FAIL or INCONCLUSIVE
    """
    horizon = Ordinal.of(horizon)
    emulated_input = decoder.encode_input(input_tape) if input_tape is not None else None
    ours = run(reference, reference_op, input_tape, fuel, horizon, settings)
    theirs = run(emulator, emulator_op, emulated_input, fuel, horizon, settings)
    report = EmulationReport(horizon, reference_outcome=describe_outcome(ours.outcome),
                             emulator_outcome=describe_outcome(theirs.outcome))
    report.marker_ok = True if decoder.markers else None

    _compare_limits(report, ours, theirs, decoder)

    if isinstance(ours.outcome, Halted) != isinstance(theirs.outcome, Halted):
        report.outcome_ok = False
        report.diverge("only one run halted")
    elif isinstance(ours.outcome, Halted):
        report.both_halted = True
        if decoder.decode_tape(theirs.output()) != ours.output():
            report.outcome_ok = False
            report.diverge("halting outputs differ")

    starts = [(ZERO, reference.initial(input_tape), emulator.initial(emulated_input))]
    theirs_at = {e.stage: e.snapshot for e in theirs.trace.entries}
    for entry in ours.trace.entries:
        if entry.stage in theirs_at and entry.snapshot.state != reference.halt:
            starts.append((entry.stage, entry.snapshot, theirs_at[entry.stage]))
    for stage, start, mirror in starts:
        if decoder.decode_configuration(mirror) != start:
            continue
        _interleave(report, reference, emulator, decoder, start, mirror, successor_steps, max_gap, stage)
    logger.info(f"emulation check to {horizon}: {report.verdict}")
    return report
