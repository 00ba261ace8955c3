"""Tests for tapes, settings and the error hierarchy."""

import dataclasses

import pytest
from hypothesis import given

from gammasim.config import DEFAULT_SETTINGS, Settings
from gammasim.errors import CodeError, ConfigError, GammaError, OrdinalError, ParseError, ProgramError
from gammasim.tape import SymbolicTape, parse_tape
from tests.strategies import tapes


def test_tapes_are_normalized():
    assert SymbolicTape([1, 0, 0]) == SymbolicTape([1])
    assert SymbolicTape([], [1, 1]) == SymbolicTape([], [1])
    assert SymbolicTape([0, 1], [0, 1]) == SymbolicTape([], [0, 1])
    assert hash(SymbolicTape([1, 0])) == hash(SymbolicTape([1]))


def test_tape_cells():
    tape = parse_tape("21|01")
    assert tape.cells(6) == (2, 1, 0, 1, 0, 1)
    assert tape.symbols() == {0, 1, 2}
    assert not tape.is_finite_support
    assert parse_tape("1").is_finite_support


def test_large_symbols_render_in_brackets():
    tape = SymbolicTape([12, 3])
    assert tape.render() == "<12>3|0"
    assert parse_tape(tape.render()) == tape


@given(tapes(n=3))
def test_tape_render_parses_back(tape):
    assert parse_tape(tape.render()) == tape


@pytest.mark.parametrize("text", ["1x|0", "1|", "<1|0"])
def test_bad_tapes(text):
    with pytest.raises(ParseError):
        parse_tape(text)


def test_settings_from_env():
    settings = Settings.from_env({"GAMMASIM_FUEL": "500", "GAMMASIM_HORIZON": "w^3", "OTHER": "x"})
    assert settings.fuel == 500
    assert settings.horizon == "w^3"
    assert settings.block_steps == DEFAULT_SETTINGS.block_steps


def test_settings_reject_non_integers():
    with pytest.raises(ConfigError, match="GAMMASIM_FUEL"):
        Settings.from_env({"GAMMASIM_FUEL": "lots"})


def test_settings_are_frozen():
    with pytest.raises(dataclasses.FrozenInstanceError):
        DEFAULT_SETTINGS.fuel = 1


def test_errors_share_a_base():
    for error in (CodeError, ConfigError, OrdinalError, ParseError, ProgramError):
        assert issubclass(error, GammaError)
    assert issubclass(ParseError, ValueError)
