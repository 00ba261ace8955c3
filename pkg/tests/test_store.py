"""Tests for the SQLite run store."""

import pytest

from gammasim.database import RunStore
from gammasim.machine import run
from gammasim.operators import parse_operator


@pytest.fixture
def store(tmp_path):
    db = RunStore(tmp_path / "runs.db")
    yield db
    db.close()


def test_record_run(store, blink):
    result = run(blink, parse_operator("sup"))
    record = store.record_run("blink", "sup", result)
    assert record.id == 1
    runs = store.get_runs()
    assert len(runs) == 1
    assert runs[0].outcome == "halted"
    assert runs[0].stage == "w*1"
    assert runs[0].steps == result.steps


def test_appearances_are_stored_earliest_first(store, blink):
    result = run(blink, parse_operator("sup"))
    record = store.record_run("blink", "sup", result)
    rows = store.get_appearances(record.id)
    assert len(rows) == len(result.appearances)
    assert rows[0].stage == "0"
    assert {row.tape for row in rows} == {"input", "work", "output"}
    assert ("output", "1|0") in {(row.tape, row.content) for row in rows}


def test_runs_persist_across_sessions(tmp_path, blink_forever):
    path = tmp_path / "runs.db"
    first = RunStore(path)
    first.record_run("blink-forever", "sup", run(blink_forever, parse_operator("sup")))
    first.close()
    second = RunStore(path)
    assert [r.outcome for r in second.get_runs()] == ["looping"]
    assert second.get_appearances(99) == []
    second.close()
