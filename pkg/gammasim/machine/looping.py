"""Criteria certifying that a run has entered a loop it never leaves."""

import logging
from math import lcm
from typing import Optional, Sequence

from gammasim.arithmetic.ordinal import OMEGA, ord_sub
from gammasim.arithmetic.word import letters, suffix_at
from gammasim.machine.outcome import LoopCertified, TraceEntry
from gammasim.operators.history import History
from gammasim.operators.operator import Escaping
from gammasim.operators.rules import GAMMA_210, SupN

logger = logging.getLogger(__name__)


def seen_looping_stage(alpha, beta):
    """The stage a+b*w at which a loop over [a, a+b) is seen."""
    return alpha + beta * OMEGA


def general_criterion(entries: Sequence[TraceEntry]) -> Optional[LoopCertified]:
    """Stages a, a+b and a+b*w share one snapshot, for the latest accelerated entry."""
    last = entries[-1]
    if last.accelerated_from is None:
        return None
    alpha, beta = last.accelerated_from
    for entry in entries:
        if entry.stage == alpha:
            if entry.snapshot == last.snapshot:
                return LoopCertified(alpha, beta, seen_looping_stage(alpha, beta), "general")
            break
    return None


def segment_criterion(entries: Sequence[TraceEntry]) -> Optional[LoopCertified]:
    """The snapshot at a+b*w already appeared at a limit stage between a and a+b."""
    last = entries[-1]
    if last.accelerated_from is None:
        return None
    alpha, beta = last.accelerated_from
    end = alpha + beta
    for entry in entries[:-1]:
        if alpha <= entry.stage <= end and entry.snapshot == last.snapshot:
            return LoopCertified(entry.stage, beta, seen_looping_stage(alpha, beta), "in-segment")
    return None


def segment_history(earlier: TraceEntry, later: TraceEntry, blocks) -> History:
    """History of the run between two limit stages."""
    return History.from_blocks(suffix_at(later.word, earlier.word.length), blocks)


def max_condition(segment: History, snapshot, rule: SupN) -> bool:
    """Every cell's preferred value over the segment equals its value in ``snapshot``."""
    for t, tape in enumerate(segment.tapes):
        target = snapshot.tapes[t]
        width = max(len(tape.prefix), len(target.prefix))
        for i in range(width + lcm(len(tape.tail), target.period)):
            if rule.maximum(letters(tape.cell(i))) != target.cell(i):
                return False
    return True


def supn_criterion(entries: Sequence[TraceEntry], blocks, rule: SupN) -> Optional[LoopCertified]:
    """Two limit stages share a snapshot and every cell's maximum over the gap is its value."""
    last = entries[-1]
    for earlier in reversed(entries[:-1]):
        if earlier.snapshot != last.snapshot:
            continue
        if max_condition(segment_history(earlier, last, blocks), last.snapshot, rule):
            beta = ord_sub(last.stage, earlier.stage)
            return LoopCertified(earlier.stage, beta, seen_looping_stage(earlier.stage, beta), "supn-max")
    return None


def escaping_criterion(entries: Sequence[TraceEntry], blocks) -> Optional[LoopCertified]:
    """Two limit stages with one snapshot, both ruled by the 210 rule, with the 210 maximum condition."""
    last = entries[-1]
    if last.ruled_by != "210":
        return None
    for earlier in reversed(entries[:-1]):
        if earlier.ruled_by != "210" or earlier.snapshot != last.snapshot:
            continue
        if max_condition(segment_history(earlier, last, blocks), last.snapshot, GAMMA_210):
            beta = ord_sub(last.stage, earlier.stage)
            return LoopCertified(earlier.stage, beta, seen_looping_stage(earlier.stage, beta), "escaping-210")
    return None


def detect_looping(entries: Sequence[TraceEntry], blocks, op) -> Optional[LoopCertified]:
    """Apply the criteria that are sound for ``op`` to the latest trace entry.

    The general and in-segment criteria need an asymptotic, looping-stable
    operator; the maximum condition applies to priority limsup operators and
    the 210 variant to the escaping operator.
    """
    if len(entries) < 2:
        return None
    caps = op.capabilities
    if caps.asymptotic and caps.looping_stable:
        found = general_criterion(entries) or segment_criterion(entries)
        if found is not None:
            return found
    rule = getattr(op, "rule", None)
    if isinstance(rule, SupN):
        found = supn_criterion(entries, blocks, rule)
    elif isinstance(op, Escaping):
        found = escaping_criterion(entries, blocks)
    else:
        found = None
    if found is not None:
        logger.info(f"loop certified by {found.criterion} at stage {found.seen_at}")
    return found
