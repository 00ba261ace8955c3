"""Checking operators for the properties a well-behaved limit rule has.

Each check runs over a generated corpus. A PASS means the corpus holds no
counterexample; a FAIL carries the histories that show it.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple

import pandas as pd

from gammasim.arithmetic.ordinal import OMEGA, Ordinal
from gammasim.arithmetic.word import (
    Letter,
    WordExpr,
    contract,
    eq_ctr,
    pad_limit,
    parse_word,
    power,
    render_word,
    substitute,
)
from gammasim.classify.corpus import Corpus, constant_history, single_cell
from gammasim.config import DEFAULT_SETTINGS, Settings
from gammasim.operators.history import History, TapeHistory
from gammasim.operators.operator import CellByCell, LimitOperator
from gammasim.operators.rules import cofinal_letters

logger = logging.getLogger(__name__)

PROPERTIES = ("stable", "asymptotic", "contraction_proof", "looping_stable", "cell_by_cell")
SUFFIX_POINTS = (Ordinal.of(1), Ordinal.of(2), OMEGA, OMEGA * 2, Ordinal.omega_power(2), Ordinal.omega_power(3))
PERTURBATION = parse_word("01^w")


def render_history(history: History) -> str:
    """Compact text of a history: the block word and blocks, or the cell words."""
    def tapes(h: History) -> str:
        parts = []
        for t, tape in enumerate(h.tapes):
            prefix = ",".join(render_word(w) for w in tape.prefix)
            tail = ",".join(render_word(w) for w in tape.tail)
            parts.append(f"t{t}:{prefix}|{tail}")
        return " ".join(parts)

    if history.structure is None:
        return tapes(history)
    blocks = "; ".join(f"#{k} {tapes(b)}" for k, b in enumerate(history.structure.blocks))
    return f"blocks {render_word(history.structure.word)} [{blocks}]"


@dataclass
class CheckResult:
    """Verdict of one property check; ``evidence`` holds the raw counterexample."""

    name: str
    passed: bool
    checked: int
    witness: Optional[str] = None
    evidence: Tuple = ()

    @property
    def verdict(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def render(self) -> str:
        line = f"{self.name}: {self.verdict} ({self.checked} checked)"
        if self.witness:
            line += f" witness: {self.witness}"
        return line


def _fail(name: str, checked: int, witness: str, *evidence) -> CheckResult:
    logger.info(f"{name} fails: {witness}")
    return CheckResult(name, False, checked, witness, tuple(evidence))


def _cell(op: LimitOperator, word: WordExpr) -> int:
    return op.apply(single_cell(word))[0].cell(0)


def check_stable(op: LimitOperator, corpus: Corpus) -> CheckResult:
    """A machine whose tapes never change keeps them at the limit."""
    checked = 0
    for tape in corpus.tapes:
        for exponent in corpus.exponents:
            checked += 1
            got = op.apply(constant_history(tape, exponent))
            if got != (tape, tape, tape):
                return _fail("stable", checked, f"x={tape.render()} held for {exponent} gives "
                             f"{','.join(t.render() for t in got)}", tape, exponent)
    return CheckResult("stable", True, checked)


def _suffix_points(history: History) -> Iterable[Ordinal]:
    for rho in SUFFIX_POINTS:
        if history.structure is not None and rho.is_finite:
            continue
        if rho < history.length:
            yield rho


def check_asymptotic(op: LimitOperator, corpus: Corpus) -> CheckResult:
    """Dropping an initial part of the history does not change the limit."""
    checked = 0
    for history in [single_cell(w) for w in corpus.words] + corpus.histories:
        whole = op.apply(history)
        for rho in _suffix_points(history):
            checked += 1
            if op.apply(history.suffix(rho)) != whole:
                return _fail("asymptotic", checked, f"{render_history(history)} from position {rho}",
                             history, rho)
    return CheckResult("asymptotic", True, checked)


def dilate(word: WordExpr, factor: int = 2) -> WordExpr:
    """Every letter repeated ``factor`` times."""
    return substitute(word, lambda a: power(Letter(a), factor))


def contraction_pairs(corpus: Corpus) -> List[Tuple[WordExpr, WordExpr]]:
    pairs = []
    for word in corpus.words:
        for other in (pad_limit(contract(word)), dilate(word)):
            if other.length.is_limit and eq_ctr(word, other):
                pairs.append((word, other))
    return pairs


def check_contraction_proof(op: LimitOperator, corpus: Corpus) -> CheckResult:
    """Contraction-equivalent histories have the same limit."""
    pairs = contraction_pairs(corpus)
    for checked, (word, other) in enumerate(pairs, start=1):
        if _cell(op, word) != _cell(op, other):
            return _fail("contraction_proof", checked, f"{render_word(word)} vs {render_word(other)}",
                         word, other)
    return CheckResult("contraction_proof", True, len(pairs))


def check_looping_stable(op: LimitOperator, corpus: Corpus) -> CheckResult:
    """A history repeated w times and repeated any longer limit number of times agree."""
    checked = 0
    pool = [single_cell(w) for w in corpus.words] + corpus.histories + [single_cell(w) for w in corpus.segments]
    for history in pool:
        base = op.apply(history.repeat(OMEGA))
        for exponent in corpus.exponents:
            if exponent == OMEGA:
                continue
            checked += 1
            if op.apply(history.repeat(exponent)) != base:
                return _fail("looping_stable", checked,
                             f"H={render_history(history)} repeated w vs {exponent}", history, exponent)
    return CheckResult("looping_stable", True, checked)


def check_strongly_looping_stable(op: LimitOperator, corpus: Corpus) -> CheckResult:
    """Like looping stability, with an arbitrary history before the repetition."""
    pool = [single_cell(w) for w in corpus.words[:max(len(corpus.words) // 8, 4)]] + corpus.histories[:16]
    checked = 0
    for head, body in zip(pool, pool[1:]):
        base = op.apply(head.then(body.repeat(OMEGA)))
        for exponent in corpus.exponents:
            if exponent == OMEGA:
                continue
            checked += 1
            if op.apply(head.then(body.repeat(exponent))) != base:
                return _fail("strongly_looping_stable", checked,
                             f"H0={render_history(head)} H={render_history(body)} repeated w vs {exponent}",
                             head, body, exponent)
    return CheckResult("strongly_looping_stable", True, checked)


def _perturbed(history: History) -> History:
    """The same history with the work tape of every block replaced by a non-looping cell."""
    blank = power(Letter(0), OMEGA)
    work = TapeHistory((PERTURBATION,), (blank,))
    blocks = [History([b.tapes[0], work] + list(b.tapes[2:])) for b in history.structure.blocks]
    return History.from_blocks(history.structure.word, blocks)


def check_cell_by_cell(op: LimitOperator, corpus: Corpus) -> CheckResult:
    """The limit of the input tape does not depend on what the work tape did."""
    checked = 0
    for history in corpus.histories:
        if history.structure is None:
            continue
        checked += 1
        other = _perturbed(history)
        if op.apply(history)[0] != op.apply(other)[0]:
            return _fail("cell_by_cell", checked,
                         f"{render_history(history)} vs {render_history(other)}", history, other)
    if not isinstance(op, CellByCell):
        logger.debug(f"{op.spec} is not built cell by cell; spot check found no difference")
    return CheckResult("cell_by_cell", True, checked)


CHECKS = {
    "stable": check_stable,
    "asymptotic": check_asymptotic,
    "contraction_proof": check_contraction_proof,
    "looping_stable": check_looping_stable,
    "cell_by_cell": check_cell_by_cell,
}


@dataclass
class DichotomyResult:
    """SUP, INF, NEITHER (with a witness) or N/A (with the reason)."""

    verdict: str
    witness: Optional[str] = None

    def render(self) -> str:
        return f"dichotomy: {self.verdict}" + (f" ({self.witness})" if self.witness else "")


def dichotomy_check(op: LimitOperator, corpus: Corpus,
                    results: Optional[Dict[str, CheckResult]] = None) -> DichotomyResult:
    """Sort a two-symbol operator passing every property into limsup or liminf.

    Eventually constant histories must give their constant and histories
    with both symbols cofinal must all give one common value, which is 1 for
    limsup and 0 for liminf.
    """
    if op.n != 2:
        return DichotomyResult("N/A", f"operator has {op.n} symbols")
    for name, result in (results or {}).items():
        if not result.passed:
            return DichotomyResult("N/A", f"fails {name}")
    common = None
    common_word = None
    for word in list(corpus.words) + [parse_word("(01)^w")]:
        value = _cell(op, word)
        cofinal = cofinal_letters(word)
        if len(cofinal) == 1:
            if value not in cofinal:
                return DichotomyResult("NEITHER", f"{render_word(word)} gives {value}")
            continue
        if common is None:
            common, common_word = value, word
        elif value != common:
            return DichotomyResult("NEITHER", f"{render_word(common_word)} gives {common}, "
                                              f"{render_word(word)} gives {value}")
    return DichotomyResult("SUP" if common == 1 else "INF")


@dataclass
class PropertyReport:
    """Every check for one operator on one corpus."""

    op_spec: str
    corpus: str
    results: Dict[str, CheckResult] = field(default_factory=dict)
    strong: Optional[CheckResult] = None
    dichotomy: Optional[DichotomyResult] = None

    def passed(self, name: str) -> bool:
        return self.results[name].passed

    def to_frame(self) -> pd.DataFrame:
        rows = []
        for result in list(self.results.values()) + ([self.strong] if self.strong else []):
            rows.append({"property": result.name, "verdict": result.verdict, "checked": result.checked,
                         "witness": result.witness or ""})
        return pd.DataFrame(rows, columns=["property", "verdict", "checked", "witness"])

    def to_dict(self) -> dict:
        data = {"operator": self.op_spec, "corpus": self.corpus,
                "properties": {r.name: {"verdict": r.verdict, "checked": r.checked, "witness": r.witness}
                               for r in list(self.results.values()) + ([self.strong] if self.strong else [])}}
        if self.dichotomy is not None:
            data["dichotomy"] = {"verdict": self.dichotomy.verdict, "witness": self.dichotomy.witness}
        return data

    def render(self) -> str:
        lines = [f"operator {self.op_spec}", f"corpus {self.corpus}", self.to_frame().to_string(index=False)]
        if self.dichotomy is not None:
            lines.append(self.dichotomy.render())
        lines.append("PASS means no counterexample was found in the corpus.")
        return "\n".join(lines)


def classify_operator(op: LimitOperator, settings: Settings = DEFAULT_SETTINGS, **corpus_options) -> PropertyReport:
    """Run every property check (and the dichotomy for two symbols) on a fresh corpus."""
    corpus = Corpus.from_settings(op.n, settings, **corpus_options)
    report = PropertyReport(op.spec, corpus.describe())
    for name, check in CHECKS.items():
        report.results[name] = check(op, corpus)
        logger.info(f"{op.spec} {name}: {report.results[name].verdict}")
    report.strong = check_strongly_looping_stable(op, corpus)
    if op.n == 2:
        report.dichotomy = dichotomy_check(op, corpus, report.results)
    return report
