"""Tests for programs, block certificates and the transfinite engine."""

import pytest
from hypothesis import assume, given, settings

from gammasim.arithmetic.ordinal import OMEGA, ONE, ZERO, Ordinal, parse_ordinal
from gammasim.arithmetic.word import parse_word, suffix_at, words_equal
from gammasim.config import Settings
from gammasim.errors import EngineError, ProgramError
from gammasim.machine import (
    WORK,
    Configuration,
    Engine,
    FuelExhausted,
    Halted,
    HorizonReached,
    LoopCertified,
    Move,
    describe_outcome,
    load_program,
    parse_program,
    run,
    run_block,
    seen_looping_stage,
    step,
)
from gammasim.operators import parse_operator
from gammasim.tape import SymbolicTape, parse_tape
from tests.conftest import PROGRAMS
from tests.strategies import program_texts

W2 = Ordinal.omega_power(2)
W3 = Ordinal.omega_power(3)
SUP = parse_operator("sup")

WRITER = """
# writes 1 on the input tape and moves right
symbols 2
states start limit halt
start start
limit limit
halt halt
start 0,*,* -> 1,*,* R start
start 1,*,* -> *,*,* L halt
limit *,*,* -> *,*,* S halt
"""


def test_parse_program_headers_and_comments():
    program = parse_program(WRITER, name="writer")
    assert program.n == 2
    assert program.states == ("start", "limit", "halt")
    assert program.comments == ["writes 1 on the input tape and moves right"]
    assert program.transition("start", (0, 1, 1)).write == (1, 1, 1)
    assert program.transition("start", (1, 0, 0)).move == Move.L


def test_wildcard_lines_yield_to_explicit_ones():
    text = WRITER + "start 0,1,1 -> 0,0,0 S halt\n"
    program = parse_program(text)
    assert program.transition("start", (0, 1, 1)).next_state == "halt"
    assert program.transition("start", (0, 1, 0)).next_state == "start"


def test_render_parses_back():
    program = parse_program(WRITER)
    again = parse_program(program.render())
    assert again.table == program.table


def test_decode_header():
    text = WRITER.replace("symbols 2", "symbols 2\ndecode 0 1")
    assert parse_program(text).decode == (0, 1)


@pytest.mark.parametrize("text, message", [
    (WRITER.replace("start 1,*,* -> *,*,* L halt\n", ""), "not total"),
    (WRITER + "halt *,*,* -> *,*,* S start\n", "out of halt"),
    (WRITER.replace("start start\n", ""), "missing header"),
    (WRITER.replace("R start", "X start"), "move must be"),
    (WRITER.replace("0,*,* -> 1", "0,*,* -> 2"), "outside alphabet"),
])
def test_malformed_programs(text, message):
    with pytest.raises(ProgramError, match=message):
        parse_program(text)


def test_missing_program_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_program(tmp_path / "nope.tm")


def test_step_writes_and_moves():
    program = parse_program(WRITER)
    config, halted = step(program, program.initial())
    assert not halted
    assert config.head == 1
    assert config.tapes[0].cell(0) == 1
    assert config.tapes[1].cell(0) == 0


def test_left_move_at_cell_zero_stays():
    program = parse_program(WRITER)
    start = Configuration("start", 0, (SymbolicTape([1]), SymbolicTape.blank(), SymbolicTape.blank()))
    config, halted = step(program, start)
    assert halted
    assert config.head == 0


def test_blink_block_history(blink):
    block = run_block(blink, blink.initial())
    assert block.certified
    # the output cell blinks from the first step on
    assert block.block.cell(2, 0).length == OMEGA
    assert SUP.apply(block.block)[2] == SymbolicTape([1])


def test_sweeper_block_is_a_lasso(sweeper):
    block = run_block(sweeper, sweeper.initial())
    assert block.kind == "lasso"
    assert SUP.apply(block.block)[1] == SymbolicTape([], [1])


def test_blink_halts_at_first_limit(blink):
    result = run(blink, SUP)
    assert result.outcome == Halted(OMEGA)
    assert result.output() == parse_tape("1|0")
    assert result.output_stable_since == OMEGA


def test_blink_under_liminf_leaves_blank_output(blink):
    result = run(blink, parse_operator("inf"))
    assert result.outcome == Halted(OMEGA)
    assert result.output() == SymbolicTape.blank()


def test_blink_forever_is_accelerated_and_certified(blink_forever):
    result = run(blink_forever, SUP, horizon=W2)
    assert result.outcome == LoopCertified(OMEGA, OMEGA, W2, "general")
    assert result.trace.stages() == [OMEGA, OMEGA * 2, W2]
    assert result.trace.entries[-1].accelerated_from == (OMEGA, OMEGA)


def test_blink_forever_certified_by_max_condition(blink_forever):
    result = run(blink_forever, SUP, horizon=OMEGA * 4)
    assert result.outcome == LoopCertified(OMEGA, OMEGA, W2, "supn-max")
    assert result.last_new_snapshot == OMEGA
    assert result.search_bound == Ordinal.omega_power(OMEGA)


def test_sweeper_limit_tape(sweeper):
    result = run(sweeper, SUP)
    first = result.trace.entries[0].snapshot
    assert first.state == "limit"
    assert first.head == 0
    assert first.tapes[1] == SymbolicTape([], [1])
    assert isinstance(result.outcome, LoopCertified)


def test_halting_at_a_limit(load):
    result = run(load("sweeper-halting-at-limit"), SUP)
    assert result.outcome == Halted(OMEGA, at_limit=True)
    assert result.trace.entries[-1].flag == "halt-at-limit"
    assert "at-limit" in describe_outcome(result.outcome)


def test_immediate_halt(load):
    result = run(load("immediate-halt"), SUP)
    assert result.outcome == Halted(ZERO)
    assert result.steps == 0


def test_writers_halt_with_codes(load):
    one = run(load("write-one"), SUP)
    assert one.outcome == Halted(ZERO)
    assert one.output() == parse_tape("1|0")
    two = run(load("write-two"), SUP)
    assert two.outcome == Halted(Ordinal.of(4))
    assert two.output() == parse_tape("11001|0")


def test_tick_detector_reads_two_at_ticks(tick_detector):
    op = parse_operator("tick:w^3:210:102")
    result = run(tick_detector, op, horizon=W3 * 2)
    assert result.trace.stages() == [
        OMEGA, OMEGA * 2, W2, W3, W3 + OMEGA, W3 + OMEGA * 2, W3 + W2, W3 * 2,
    ]
    assert result.trace.snapshot_at(OMEGA).tapes[1].cell(0) == 1
    assert result.trace.snapshot_at(W3).tapes[1].cell(0) == 2
    assert result.trace.snapshot_at(W3 * 2).tapes[1].cell(0) == 2
    assert result.trace.snapshot_at(W3 * 2).tapes[2].cell(0) == 1
    assert result.outcome == HorizonReached(W3 * 2)


def test_horizon_stops_before_next_limit(blink_forever):
    result = run(blink_forever, parse_operator("supn:01"), horizon=OMEGA)
    assert isinstance(result.outcome, (HorizonReached, LoopCertified))
    assert all(stage <= OMEGA for stage in result.trace.stages())


def test_fuel_runs_out(counter3):
    result = run(counter3, parse_operator("supn:210"), fuel=50)
    assert result.outcome == FuelExhausted(ZERO)


def test_engine_advances_one_limit_at_a_time(blink_forever):
    engine = Engine(blink_forever, SUP, horizon=OMEGA * 4)
    assert engine.advance() is None
    assert engine.stage == OMEGA
    assert engine.advance() is not None
    assert engine.done
    with pytest.raises(EngineError):
        Engine(blink_forever, SUP, horizon=OMEGA).result()


def test_engine_rejects_wider_programs(counter3):
    with pytest.raises(EngineError):
        Engine(counter3, SUP)


def test_engine_rejects_foreign_input(blink):
    with pytest.raises(EngineError):
        Engine(blink, SUP, input_tape=parse_tape("2|0"))


def test_settings_horizon_is_default(blink_forever):
    result = run(blink_forever, SUP, settings=Settings(horizon="w*3"))
    assert max(result.trace.stages()) <= parse_ordinal("w*3")


def test_appearances_recorded(blink):
    result = run(blink, SUP)
    assert (2, SymbolicTape([1])) in result.appearances
    assert result.appearances[(2, SymbolicTape.blank())] == 0


@pytest.mark.parametrize("path", sorted(PROGRAMS.glob("*.tm")), ids=lambda p: p.stem)
def test_shipped_programs_load(path):
    program = load_program(path)
    assert program.name == path.stem
    assert {program.start, program.limit, program.halt} <= set(program.states)


def blinker(i):
    """Program that walks to cell ``i`` and then flips work cell ``i`` at every step."""
    walkers = [f"w{k}" for k in range(i)]
    lines = [
        "symbols 2",
        f"states {' '.join(walkers + ['blink', 'limit', 'halt'])}",
        f"start {walkers[0] if walkers else 'blink'}",
        "limit limit",
        "halt halt",
    ]
    for k, name in enumerate(walkers):
        lines.append(f"{name} *,*,* -> *,*,* R {walkers[k + 1] if k + 1 < i else 'blink'}")
    lines += [
        "blink *,0,* -> *,1,* S blink",
        "blink *,1,* -> *,0,* S blink",
        "limit *,*,* -> *,*,* S halt",
    ]
    return "\n".join(lines) + "\n"


@pytest.mark.parametrize("i", range(5))
def test_blink_cell_history(i):
    program = parse_program(blinker(i))
    block = run_block(program, program.initial())
    assert block.kind == "cycle"
    # values after steps 1, 2, ...: blank for i steps, then 1, 0, 1, 0, ...
    history = suffix_at(block.block.cell(WORK, i), ONE)
    assert words_equal(history, parse_word("0" * i + "(10)^w"))
    assert SUP.apply(block.block)[WORK] == SymbolicTape([0] * i + [1])
    assert parse_operator("inf").apply(block.block)[WORK] == SymbolicTape.blank()


def plain_run_window(program, steps, cells):
    """Values of the first ``cells`` cells of every tape over the second half of a plain run."""
    tapes = [[0] * (steps + cells + 1) for _ in range(3)]
    state, head = program.start, 0
    window = []
    for time in range(1, steps + 1):
        rule = program.transition(state, tuple(t[head] for t in tapes))
        for t in range(3):
            tapes[t][head] = rule.write[t]
        head = max(0, head + rule.move.value)
        state = rule.next_state
        if time > steps // 2:
            window.append([t[:cells] for t in tapes])
    return window


@settings(max_examples=10, deadline=None)
@given(program_texts())
def test_certified_limits_match_long_runs(text):
    program = parse_program(text)
    block = run_block(program, program.initial())
    assume(block.certified)
    # the certificate is found after at least one full cycle
    window = plain_run_window(program, max(3000, 20 * block.steps), cells=6)
    for op, pick in ((SUP, max), (parse_operator("inf"), min)):
        limit = op.apply(block.block)
        for t in range(3):
            for i in range(6):
                assert limit[t].cell(i) == pick(values[t][i] for values in window)


ALTERNATOR = """
# blinks output cell 0 and flips work cell 0 at every limit
symbols 2
states start limit halt
start start
limit limit
halt halt
start *,*,0 -> *,*,1 S start
start *,*,1 -> *,*,0 S start
limit *,0,* -> *,1,* S start
limit *,1,* -> *,0,* S start
"""


@pytest.mark.parametrize("name, period", [
    ("blink-forever", OMEGA),
    ("sweeper", OMEGA),
    ("alternator", OMEGA * 2),
])
def test_acceleration_matches_replay(load, name, period):
    program = parse_program(ALTERNATOR, name) if name == "alternator" else load(name)
    jumps = [e for e in run(program, SUP, horizon=W2).trace.entries if e.accelerated_from]
    assert jumps
    alpha, beta = jumps[0].accelerated_from
    assert beta == period
    assert jumps[0].stage == seen_looping_stage(alpha, beta)
    # step through the limit stages one omega-block at a time, without jumps
    replay = Engine(program, SUP)
    snapshots = {}
    while replay.stage < alpha + beta * 3:
        block = run_block(program, replay.config, replay.settings)
        assert block.certified
        entry = replay.infer_omega_limit(block)
        snapshots[entry.stage] = entry.snapshot
    for k in (1, 2, 3):
        assert snapshots[alpha + beta * k] == snapshots[alpha]


def test_seen_looping_stage():
    assert seen_looping_stage(OMEGA, OMEGA) == W2
    assert seen_looping_stage(OMEGA * 2, OMEGA) == W2
    assert seen_looping_stage(W2, W2) == W3
