"""Ordinals observed within a horizon for each kind of writability and clockability."""

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional

import pandas as pd

from gammasim.arithmetic.ordinal import Ordinal
from gammasim.codes.ordinal_codes import Indeterminate, NotWellOrder, decode_tape
from gammasim.config import DEFAULT_SETTINGS, Settings
from gammasim.errors import CodeError
from gammasim.harness.dovetail import DovetailRun
from gammasim.machine.outcome import Halted
from gammasim.tape import SymbolicTape

logger = logging.getLogger(__name__)

NAMES = (
    ("written", "halting outputs"),
    ("eventually_written", "stabilized outputs"),
    ("accidentally_written", "any tape, any stage"),
    ("clocked", "halting stages"),
    ("stabilized", "output stabilization stages"),
    ("appeared", "first appearance stages"),
)


def _sup(values: Iterable[Ordinal]) -> Optional[Ordinal]:
    values = list(values)
    return max(values) if values else None


@dataclass
class ObservedConstants:
    """Largest ordinals seen in each class within ``horizon``.

    These are observations of one bounded experiment. Each class includes
    the one before it (a halting output is a stabilized output, a halting
    stage is a stabilization stage, and so on), so the observed values are
    ordered the same way.
    """

    horizon: Ordinal
    written: Optional[Ordinal] = None
    eventually_written: Optional[Ordinal] = None
    accidentally_written: Optional[Ordinal] = None
    clocked: Optional[Ordinal] = None
    stabilized: Optional[Ordinal] = None
    appeared: Optional[Ordinal] = None
    undecodable: Dict[str, int] = field(default_factory=dict)
    input_only: int = 0

    def ordering_holds(self) -> bool:
        """Observed values never decrease along the two chains of classes."""
        for chain in (("written", "eventually_written", "accidentally_written"),
                      ("clocked", "stabilized", "appeared")):
            values = [getattr(self, name) for name in chain]
            for low, high in zip(values, values[1:]):
                if low is not None and (high is None or high < low):
                    return False
        return True

    def to_frame(self) -> pd.DataFrame:
        rows = []
        for name, meaning in NAMES:
            value = getattr(self, name)
            rows.append({"constant": name, "observed": "-" if value is None else str(value),
                         "from": meaning})
        return pd.DataFrame(rows, columns=["constant", "observed", "from"])

    def to_dict(self) -> dict:
        data = {name: None if getattr(self, name) is None else str(getattr(self, name)) for name, _ in NAMES}
        data["horizon"] = str(self.horizon)
        data["undecodable"] = dict(self.undecodable)
        data["input_only"] = self.input_only
        return data


class _Decoder:
    """Decodes tape contents once each, counting the failures by reason."""

    def __init__(self, settings: Settings):
        self.settings = settings
        self.cache: Dict[SymbolicTape, Optional[Ordinal]] = {}
        self.failures: Counter = Counter()

    def __call__(self, content: SymbolicTape) -> Optional[Ordinal]:
        if content in self.cache:
            return self.cache[content]
        try:
            decoded = decode_tape(content, self.settings)
        except CodeError:
            decoded = None
            self.failures["non-binary"] += 1
        else:
            if isinstance(decoded, NotWellOrder):
                self.failures["not-a-well-order"] += 1
                decoded = None
            elif isinstance(decoded, Indeterminate):
                self.failures["out-of-range" if decoded.out_of_range else "indeterminate"] += 1
                decoded = None
        if decoded is None:
            logger.debug(f"skipped undecodable content {content}")
        self.cache[content] = decoded
        return decoded


def harvest_constants(run: DovetailRun, horizon, settings: Settings = DEFAULT_SETTINGS) -> ObservedConstants:
    """Collect the observed constants of a dovetailed experiment.

    Contents that do not decode to an ordinal are skipped and counted by
    reason; contents seen only on the input tape still count as accidentally
    written and are also counted separately.
    """
    decode = _Decoder(settings)
    written: List[Ordinal] = []
    eventual: List[Ordinal] = []
    accidental: List[Ordinal] = []
    clocked: List[Ordinal] = []
    stabilized: List[Ordinal] = []
    appeared: List[Ordinal] = []

    for result in run.results:
        if result is None:
            continue
        halted = isinstance(result.outcome, Halted)
        if halted:
            clocked.append(result.outcome.clocked)
        if result.output_stable_since is not None:
            stabilized.append(result.output_stable_since)
            value = decode(result.output())
            if value is not None:
                eventual.append(value)
                if halted:
                    written.append(value)
        if halted:
            stabilized.append(result.outcome.clocked)

    for stage, _, _, content in run.log.entries():
        appeared.append(stage)
        value = decode(content)
        if value is not None:
            accidental.append(value)

    observed = ObservedConstants(
        horizon=Ordinal.of(horizon),
        written=_sup(written),
        eventually_written=_sup(written + eventual),
        accidentally_written=_sup(written + eventual + accidental),
        clocked=_sup(clocked),
        stabilized=_sup(clocked + stabilized),
        appeared=_sup(clocked + stabilized + appeared),
        undecodable=dict(sorted(decode.failures.items())),
        input_only=len(run.log.input_only()),
    )
    if decode.failures:
        logger.warning(f"skipped {sum(decode.failures.values())} undecodable tape contents")
    return observed
