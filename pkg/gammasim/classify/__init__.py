"""Property checks for limit operators over seeded corpora."""

from .checks import (
    CHECKS,
    PROPERTIES,
    CheckResult,
    DichotomyResult,
    PropertyReport,
    check_asymptotic,
    check_cell_by_cell,
    check_contraction_proof,
    check_looping_stable,
    check_stable,
    check_strongly_looping_stable,
    classify_operator,
    dichotomy_check,
    dilate,
    render_history,
)
from .corpus import Corpus, block, constant_history, single_cell
from .mutants import (
    ConstantRule,
    FirstLetterRule,
    LengthParityRule,
    LimitDepthRule,
    parse_any_operator,
    parse_mutant,
)

__all__ = [
    "CHECKS",
    "PROPERTIES",
    "CheckResult",
    "ConstantRule",
    "Corpus",
    "DichotomyResult",
    "FirstLetterRule",
    "LengthParityRule",
    "LimitDepthRule",
    "PropertyReport",
    "block",
    "check_asymptotic",
    "check_cell_by_cell",
    "check_contraction_proof",
    "check_looping_stable",
    "check_stable",
    "check_strongly_looping_stable",
    "classify_operator",
    "constant_history",
    "dichotomy_check",
    "dilate",
    "parse_any_operator",
    "parse_mutant",
    "render_history",
    "single_cell",
]
