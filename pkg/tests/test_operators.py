"""Tests for cell rules, histories and the limit operators built from them."""

import pytest
from hypothesis import given, settings

from gammasim.arithmetic.ordinal import OMEGA, Ordinal
from gammasim.arithmetic.word import Letter, parse_word, power
from gammasim.errors import OperatorError
from gammasim.operators import (
    GAMMA_102,
    GAMMA_210,
    CellByCell,
    Escaping,
    History,
    Inf,
    LimitOfRepeating,
    Neither,
    Repeating,
    Sup,
    SupN,
    Tick,
    apply_cell_rule,
    apply_operator,
    cofinal_letters,
    escaping_decompose,
    is_looping_pattern,
    parse_operator,
    supn_looping_pattern,
)
from gammasim.tape import SymbolicTape
from tests.strategies import tapes

W2 = Ordinal.omega_power(2)
W3 = Ordinal.omega_power(3)


def w(text):
    return parse_word(text)


def cell(text):
    """Omega-long block whose only non-blank cell is input cell 0."""
    word = w(text)
    return History.from_cells([[word], [], []], length=word.length)


def test_cofinal_letters():
    assert cofinal_letters(w("(01)^w")) == {0, 1}
    assert cofinal_letters(w("1^w")) == {1}
    assert cofinal_letters(w("0^5(012)^w")) == {0, 1, 2}
    with pytest.raises(OperatorError):
        cofinal_letters(w("01"))


def test_sup_and_inf():
    assert Sup().apply(w("(01)^w")) == 1
    assert Inf().apply(w("(01)^w")) == 0


def test_priority_rules():
    assert GAMMA_102.apply(w("(12)^w")) == 1
    assert GAMMA_210.apply(w("(12)^w")) == 2


def test_tick_switches_on_multiples_of_tau():
    tick = Tick(W3)
    assert tick.apply(power(w("12"), W2)) == 1
    assert tick.apply(power(w("12"), W3)) == 2
    assert tick.next_tick_after(OMEGA) == W3
    assert tick.next_tick_after(W3) == W3 * 2


def test_tick_rejects_non_closed_period():
    with pytest.raises(OperatorError):
        Tick(OMEGA * 2)


def test_supn_rejects_non_permutation():
    with pytest.raises(OperatorError):
        SupN((0, 0, 1))


def test_rule_rejects_foreign_symbols():
    with pytest.raises(OperatorError):
        Sup().apply(w("(02)^w"))


def test_capabilities():
    assert Escaping.capabilities.cell_by_cell is False
    assert Tick(W3).capabilities.length_sensitive is True
    assert Sup().capabilities.looping_stable is True


@pytest.mark.parametrize("spec, n", [
    ("sup", 2),
    ("inf", 2),
    ("supn:102", 3),
    ("supn:3,2,1,0", 4),
    ("tick:w^3:210:102", 3),
    ("esc", 3),
])
def test_parse_operator(spec, n):
    op = parse_operator(spec)
    assert op.n == n
    assert parse_operator(op.spec).spec == op.spec


@pytest.mark.parametrize("spec", ["max", "supn:12", "tick:w*2", "tick:w^2:21"])
def test_parse_operator_rejects(spec):
    with pytest.raises(OperatorError):
        parse_operator(spec)


def test_blinking_cell_under_sup():
    history = History.from_cells([[w("0^3(10)^w")], [], []])
    limit = CellByCell(Sup()).apply(history)
    assert limit[0] == SymbolicTape([1])
    assert limit[1] == SymbolicTape.blank()


def test_non_limit_history_rejected():
    with pytest.raises(OperatorError):
        CellByCell(Sup()).apply(History.from_cells([[w("01")], [], []]))


@given(tapes(n=3))
@settings(max_examples=40)
def test_constant_histories_are_stable(tape):
    history = History.constant([tape, tape, tape], W2)
    for spec in ("supn:102", "supn:210", "tick:w^3:210:102"):
        assert parse_operator(spec).apply(history) == (tape, tape, tape)


def test_history_algebra_lengths():
    history = cell("(10)^w")
    assert history.repeat(OMEGA).length == W2
    assert history.then(history).length == OMEGA * 2
    assert history.then(history).suffix(OMEGA).length == OMEGA


def test_block_structure_survives_repetition():
    history = History.from_blocks(Letter(0), [cell("(12)^w")])
    repeated = history.repeat(OMEGA)
    assert repeated.structure is not None
    assert repeated.cell(0, 0).length == W2


def test_supn_looping_pattern():
    # the segment starts every cell at its preferred value
    assert supn_looping_pattern(cell("(12)^w"), GAMMA_102)
    # here cell 0 starts at 2 but later reads 1, which the rule prefers
    assert not supn_looping_pattern(cell("(21)^w"), GAMMA_102)


def test_constant_segment_is_looping_pattern():
    tape = SymbolicTape([1, 0, 1])
    segment = History.constant([tape, SymbolicTape.blank(), tape], OMEGA)
    assert is_looping_pattern(segment, parse_operator("esc"))
    assert is_looping_pattern(segment, parse_operator("sup"))


def test_escaping_switches_after_repetition():
    looping = History.from_blocks(w("0^w"), [cell("(12)^w")])
    assert isinstance(escaping_decompose(looping), Repeating)
    assert Escaping().apply_ruled(looping)[1] == "210"
    assert Escaping().apply(looping)[0].cell(0) == 2

    other = History.from_blocks(w("0^w"), [cell("(21)^w")])
    assert isinstance(escaping_decompose(other), Neither)
    assert Escaping().apply(other)[0].cell(0) == 1


def test_escaping_with_prefix_and_nested_repetitions():
    blocks = [cell("(21)^w"), cell("(02)^w")]
    prefixed = History.from_blocks(w("0 1^w"), blocks)
    assert isinstance(escaping_decompose(prefixed), Repeating)
    nested = History.from_blocks(w("(0 1^w)^w"), blocks)
    assert isinstance(escaping_decompose(nested), LimitOfRepeating)


def test_escaping_ignores_unstructured_histories():
    assert isinstance(escaping_decompose(cell("(12)^w")), Neither)


def test_apply_operator_per_tape():
    assert apply_cell_rule(GAMMA_210, w("(01)^w")) == 1
    history = History.from_cells([[w("(01)^w"), w("1^w")], [w("0^5(12)^w")], []])
    assert apply_operator(parse_operator("supn:102"), history) == (
        SymbolicTape([1, 1]),
        SymbolicTape([1]),
        SymbolicTape([]),
    )
