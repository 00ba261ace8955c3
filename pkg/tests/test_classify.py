"""Tests for the operator property checks, the corpus and the mutants."""

import pytest

from gammasim.arithmetic.ordinal import Ordinal
from gammasim.arithmetic.word import letters, parse_word, words_equal
from gammasim.classify import (
    Corpus,
    FirstLetterRule,
    check_asymptotic,
    check_cell_by_cell,
    check_contraction_proof,
    check_looping_stable,
    check_stable,
    check_strongly_looping_stable,
    classify_operator,
    dichotomy_check,
    dilate,
    parse_any_operator,
    parse_mutant,
)
from gammasim.errors import OperatorError
from gammasim.operators import CellByCell, parse_operator
from gammasim.tape import SymbolicTape

W2 = Ordinal.omega_power(2)


@pytest.fixture
def binary():
    return Corpus(n=2, depth=2, size=60)


@pytest.fixture
def ternary():
    return Corpus(n=3, depth=2, size=60)


def test_corpus_is_reproducible():
    first = Corpus(n=2, size=30, seed=7)
    second = Corpus(n=2, size=30, seed=7)
    assert all(words_equal(a, b) for a, b in zip(first.words, second.words))
    assert all(w.length.is_limit for w in first.words)
    assert len(first.words) == 30


def test_corpus_respects_the_alphabet(binary):
    assert all(max(t.symbols()) < 2 for t in binary.tapes)
    assert binary.tapes[0] == SymbolicTape((), (1,))
    assert all(max(letters(w)) < 2 for w in binary.segments)


def test_dilate():
    assert words_equal(dilate(parse_word("(01)^w")), parse_word("(0011)^w"))


def test_constant_rule_is_not_stable(binary):
    result = check_stable(parse_any_operator("mutant:const:0"), binary)
    assert not result.passed
    assert result.evidence[0] == SymbolicTape((), (1,))
    assert result.witness.startswith("x=|1")


def test_first_letter_rule_is_not_asymptotic(binary):
    result = check_asymptotic(CellByCell(FirstLetterRule()), binary)
    assert not result.passed
    assert result.evidence[1] == 1


def test_parity_rule_is_not_contraction_proof(binary):
    result = check_contraction_proof(parse_any_operator("mutant:parity"), binary)
    assert not result.passed
    assert " vs " in result.witness


def test_depth_rule_is_not_looping_stable(binary):
    result = check_looping_stable(parse_any_operator("mutant:depth"), binary)
    assert not result.passed


def test_limsup_passes_everything(binary):
    op = parse_operator("sup")
    for check in (check_stable, check_asymptotic, check_contraction_proof,
                  check_looping_stable, check_cell_by_cell, check_strongly_looping_stable):
        assert check(op, binary).passed


def test_tick_is_stable_but_not_looping_stable(ternary):
    op = parse_operator("tick:w^3:210:102")
    assert check_stable(op, ternary).passed
    result = check_looping_stable(op, ternary)
    assert not result.passed
    assert result.witness.startswith("H=")
    assert result.evidence[1] in (W2, Ordinal.omega_power(3))


def test_escaping_is_not_cell_by_cell(ternary):
    result = check_cell_by_cell(parse_operator("esc"), ternary)
    assert not result.passed
    assert result.checked >= 1


def test_priority_rules_pass_on_three_symbols(ternary):
    op = parse_operator("supn:102")
    for check in (check_stable, check_asymptotic, check_looping_stable, check_cell_by_cell):
        assert check(op, ternary).passed


def test_dichotomy(binary):
    assert dichotomy_check(parse_operator("sup"), binary).verdict == "SUP"
    assert dichotomy_check(parse_operator("inf"), binary).verdict == "INF"
    assert dichotomy_check(parse_operator("supn:102"), binary).verdict == "N/A"
    neither = dichotomy_check(parse_any_operator("mutant:parity"), binary)
    assert neither.verdict == "NEITHER"


def test_classify_limsup(small_settings):
    report = classify_operator(parse_operator("sup"), small_settings)
    assert all(report.passed(name) for name in report.results)
    assert report.dichotomy.verdict == "SUP"
    assert report.render().endswith("PASS means no counterexample was found in the corpus.")
    assert set(report.to_frame()["verdict"]) == {"PASS"}


def test_classify_depth_mutant(small_settings):
    report = classify_operator(parse_any_operator("mutant:depth"), small_settings)
    assert not report.passed("looping_stable")
    assert report.dichotomy.verdict == "N/A"
    assert report.dichotomy.witness.startswith("fails ")
    data = report.to_dict()
    assert data["operator"] == "mutant:depth"
    assert data["properties"]["looping_stable"]["verdict"] == "FAIL"


def test_classify_uses_corpus_overrides(small_settings):
    report = classify_operator(parse_operator("inf"), small_settings, size=20, seed=3)
    assert "size=20" in report.corpus
    assert "seed=3" in report.corpus


@pytest.mark.parametrize("spec", ["mutant:nope", "mutant", "mutant:const:x"])
def test_unknown_mutants(spec):
    with pytest.raises(OperatorError):
        parse_mutant(spec)


def test_parse_any_operator_passes_through():
    assert parse_any_operator("supn:102").spec == parse_operator("supn:102").spec
    assert parse_any_operator("mutant:first").n == 2
