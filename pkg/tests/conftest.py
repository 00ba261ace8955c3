"""Shared fixtures: the shipped example programs and small settings."""

from pathlib import Path

import pytest

from gammasim.config import Settings
from gammasim.machine import load_program

PROGRAMS = Path(__file__).resolve().parent.parent / "programs"


@pytest.fixture
def programs_dir():
    return PROGRAMS


@pytest.fixture
def load():
    """Load a shipped program by name."""
    def _load(name):
        return load_program(PROGRAMS / f"{name}.tm")
    return _load


@pytest.fixture
def blink(load):
    return load("blink")


@pytest.fixture
def blink_forever(load):
    return load("blink-forever")


@pytest.fixture
def sweeper(load):
    return load("sweeper")


@pytest.fixture
def tick_detector(load):
    return load("tick-detector")


@pytest.fixture
def counter3(load):
    return load("counter3")


@pytest.fixture
def small_settings():
    """Settings with a small corpus so property checks stay quick."""
    return Settings(corpus_size=80, corpus_depth=2)
