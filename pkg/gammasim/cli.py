"""Command-line interface for gammasim."""

import json
import logging
from contextlib import contextmanager
from pathlib import Path

import click

from gammasim import __version__
from gammasim.arithmetic.ordinal import parse_ordinal
from gammasim.arithmetic.word import contract, eq_ctr, is_stutter_free, pad_limit, parse_word, render_word
from gammasim.classify import classify_operator, parse_any_operator
from gammasim.codes import Indeterminate, NotWellOrder, OrdinalCode, decode_order_type, encode_ordinal, parse_real
from gammasim.config import Settings
from gammasim.database import RunStore
from gammasim.errors import GammaError, TransformError
from gammasim.harness import appearance_frame, dovetail, harvest_constants, outcome_frame
from gammasim.machine import describe_outcome, load_program, run
from gammasim.operators import CellByCell, Sup, SupN
from gammasim.tape import parse_tape
from gammasim.transform import (
    BlockDecoder,
    SymbolDecoder,
    emulate_limsup_in_n,
    encode_n_in_2,
    symbol_map_for,
    verify_emulation,
)


@contextmanager
def domain_errors():
    """Turn domain errors and missing files into a clean exit code 1."""
    try:
        yield
    except (GammaError, FileNotFoundError) as e:
        raise click.ClickException(str(e)) from e


def _emit_json(data):
    click.echo(json.dumps(data, sort_keys=True, indent=2))


def _horizon(settings: Settings, text):
    return parse_ordinal(text if text is not None else settings.horizon)


def _chain(text):
    if text is None:
        return None
    try:
        return tuple(int(s) for s in text.split(","))
    except ValueError:
        raise click.BadParameter(f"expected comma-separated symbols, got {text!r}", param_hint="--chain")


def _write_program(text, output):
    if output is None:
        click.echo(text, nl=False)
    else:
        Path(output).write_text(text)
        click.echo(f"Wrote {output}")


@click.group()
@click.version_option(version=__version__)
@click.option('--verbose', '-v', is_flag=True, help='Log engine progress to stderr')
@click.pass_context
def cli(ctx, verbose):
    """gammasim - transfinite machines under generalized limit rules.

    Run programs past omega under limsup, liminf, priority and escaping
    limit operators, compare what they can write and clock, and check
    limit operators for the properties a good limit rule has.
    """
    logging.basicConfig(level=logging.DEBUG if verbose else logging.WARNING,
                        format='%(levelname)s %(name)s: %(message)s')
    with domain_errors():
        ctx.obj = Settings.from_env()


@cli.command('run')
@click.option('--program', 'program_path', required=True, help='Program file')
@click.option('--op', 'op_spec', default='sup', show_default=True, help='Limit operator spec')
@click.option('--horizon', help='Largest limit stage to compute (CNF, e.g. w^2*3)')
@click.option('--fuel', type=int, help='Step budget across all blocks')
@click.option('--input', 'input_text', help='Input tape, e.g. 101|0')
@click.option('--trace/--no-trace', default=True, help='Print the limit snapshots')
@click.option('--json', 'as_json', is_flag=True, help='Emit the result as JSON')
@click.option('--store', type=click.Path(dir_okay=False), help='Record the run in this SQLite file')
@click.pass_obj
def run_command(settings, program_path, op_spec, horizon, fuel, input_text, trace, as_json, store):
    """Run one program and report its limit stages and outcome."""
    with domain_errors():
        program = load_program(program_path)
        op = parse_any_operator(op_spec)
        input_tape = parse_tape(input_text) if input_text is not None else None
        result = run(program, op, input_tape, fuel, _horizon(settings, horizon), settings)

    if store:
        db = RunStore(store)
        record = db.record_run(program.name, op.spec, result)
        db.close()
        if not as_json:
            click.echo(f"Stored as run {record.id} in {store}")

    if as_json:
        _emit_json({
            "program": program.name,
            "operator": op.spec,
            "outcome": result.outcome.kind,
            "stage": str(result.outcome.stage),
            "detail": describe_outcome(result.outcome),
            "steps": result.steps,
            "output": result.output().render(),
            "output_stable_since": None if result.output_stable_since is None else str(result.output_stable_since),
            "last_new_snapshot": str(result.last_new_snapshot),
            "search_bound": str(result.search_bound),
            "trace": [entry.render() for entry in result.trace.entries],
        })
        return

    if trace:
        click.echo(f"\n=== Limit stages of {program.name} under {op_spec} ===\n")
        for entry in result.trace.entries:
            click.echo(entry.render())
    click.echo("\n=== Outcome ===\n")
    click.echo(describe_outcome(result.outcome))
    click.echo(f"steps: {result.steps}")
    click.echo(f"output: {result.output().render()}")
    if result.output_stable_since is not None:
        click.echo(f"output stable since: {result.output_stable_since}")
    click.echo(f"last new snapshot: {result.last_new_snapshot} (search bound hint {result.search_bound})")


@cli.command('dovetail')
@click.option('--programs', 'programs_dir', required=True, help='Directory of *.tm program files')
@click.option('--op', 'op_spec', default='sup', show_default=True, help='Limit operator spec')
@click.option('--horizon', help='Largest limit stage to compute (CNF)')
@click.option('--fuel', type=int, help='Step budget per machine')
@click.option('--appearances', is_flag=True, help='Also list first appearances')
@click.option('--json', 'as_json', is_flag=True, help='Emit the reports as JSON')
@click.option('--store', type=click.Path(dir_okay=False), help='Record every finished run in this SQLite file')
@click.pass_obj
def dovetail_command(settings, programs_dir, op_spec, horizon, fuel, appearances, as_json, store):
    """Run every program in a directory side by side and report the observed constants."""
    with domain_errors():
        if not Path(programs_dir).is_dir():
            raise FileNotFoundError(f"no such directory: {programs_dir}")
        paths = sorted(Path(programs_dir).glob('*.tm'))
        if not paths:
            raise GammaError(f"no *.tm programs in {programs_dir}")
        programs = [load_program(p) for p in paths]
        op = parse_any_operator(op_spec)
        limit = _horizon(settings, horizon)
        experiment = dovetail(programs, op, limit, fuel, settings)
        constants = harvest_constants(experiment, limit, settings)

    if store:
        db = RunStore(store)
        for program, result in zip(programs, experiment.results):
            if result is not None:
                db.record_run(program.name, op.spec, result)
        db.close()

    outcomes = outcome_frame(programs, experiment)
    if as_json:
        data = {"operator": op.spec, "constants": constants.to_dict(),
                "ordering_holds": constants.ordering_holds(),
                "machines": outcomes.to_dict(orient='records')}
        if appearances:
            data["appearances"] = appearance_frame(experiment.log).to_dict(orient='records')
        _emit_json(data)
        return

    click.echo(f"\n=== Observed constants under {op_spec} (horizon {limit}) ===\n")
    click.echo(constants.to_frame().to_string(index=False))
    if constants.undecodable:
        skipped = ", ".join(f"{reason}={count}" for reason, count in constants.undecodable.items())
        click.echo(f"undecodable contents skipped: {skipped}")
    click.echo(f"contents seen only on the input tape: {constants.input_only}")
    click.echo(f"\n=== Machines ({experiment.rounds} rounds) ===\n")
    click.echo(outcomes.to_string(index=False))
    if appearances:
        click.echo("\n=== First appearances ===\n")
        click.echo(appearance_frame(experiment.log).to_string(index=False))


@cli.command('classify')
@click.option('--op', 'op_spec', required=True, help='Limit operator spec (mutant:... allowed)')
@click.option('--seed', type=int, help='Corpus seed')
@click.option('--depth', type=int, help='Corpus word depth')
@click.option('--size', type=int, help='Number of corpus words')
@click.option('--json', 'as_json', is_flag=True, help='Emit the report as JSON')
@click.pass_obj
def classify_command(settings, op_spec, seed, depth, size, as_json):
    """Check an operator for stability, asymptoticity, contraction-proofness and looping stability."""
    overrides = {k: v for k, v in (("seed", seed), ("depth", depth), ("size", size)) if v is not None}
    with domain_errors():
        op = parse_any_operator(op_spec)
        report = classify_operator(op, settings, **overrides)
    if as_json:
        _emit_json(report.to_dict())
        return
    click.echo(f"\n=== Properties of {op_spec} ===\n")
    click.echo(report.render())


@cli.command('emulate')
@click.option('--program', 'program_path', required=True, help='Two-symbol program file')
@click.option('--to-n', 'n', type=int, required=True, help='Number of symbols of the target operator')
@click.option('--op', 'op_spec', required=True, help='Target operator spec over n symbols')
@click.option('--chain', help='Overwrite chain, e.g. 2,0')
@click.option('--output', type=click.Path(dir_okay=False), help='Write the program here instead of stdout')
@click.option('--verify', is_flag=True, help='Check the emulation against the limsup run')
@click.option('--horizon', help='Horizon for --verify (CNF)')
@click.pass_obj
def emulate_command(settings, program_path, n, op_spec, chain, output, verify, horizon):
    """Rewrite a limsup program so that an n-symbol operator runs it the same way."""
    with domain_errors():
        program = load_program(program_path)
        op = parse_any_operator(op_spec)
        if op.n != n:
            raise TransformError(f"operator {op.spec} has {op.n} symbols, not {n}")
        chain = _chain(chain)
        emulated = emulate_limsup_in_n(program, op, chain)
        _write_program(emulated.render(), output)
        if verify:
            decoder = SymbolDecoder(program, symbol_map_for(op, chain))
            report = verify_emulation(program, CellByCell(Sup()), emulated, op,
                                      _horizon(settings, horizon), decoder, settings=settings)
            click.echo(report.render())


@cli.command('encode2')
@click.option('--program', 'program_path', required=True, help='Program file over three or more symbols')
@click.option('--output', type=click.Path(dir_okay=False), help='Write the program here instead of stdout')
@click.option('--verify', is_flag=True, help='Check the encoding against the original run')
@click.option('--op', 'op_spec', help='Operator the original runs under (default: largest symbol wins)')
@click.option('--horizon', help='Horizon for --verify (CNF)')
@click.pass_obj
def encode2_command(settings, program_path, output, verify, op_spec, horizon):
    """Encode an n-symbol program over two symbols, one block of n-1 cells per symbol."""
    with domain_errors():
        program = load_program(program_path)
        encoded = encode_n_in_2(program)
        _write_program(encoded.render(), output)
        if verify:
            reference_op = (parse_any_operator(op_spec) if op_spec
                            else CellByCell(SupN(tuple(range(program.n - 1, -1, -1)))))
            report = verify_emulation(program, reference_op, encoded, CellByCell(Sup()),
                                      _horizon(settings, horizon), BlockDecoder(program), settings=settings)
            click.echo(report.render())


@cli.command('contract')
@click.argument('word')
@click.option('--against', help='Second word to compare up to contraction')
@click.option('--json', 'as_json', is_flag=True, help='Emit the result as JSON')
def contract_command(word, against, as_json):
    """Contract a word: collapse every run of one repeated symbol to a single letter."""
    with domain_errors():
        parsed = parse_word(word)
        contracted = contract(parsed)
        data = {
            "word": render_word(parsed),
            "length": str(parsed.length),
            "contracted": render_word(contracted),
            "stutter_free": is_stutter_free(parsed),
            "padded": render_word(pad_limit(contracted)) if not contracted.length.is_zero else "",
        }
        if against is not None:
            other = parse_word(against)
            data["against"] = render_word(other)
            data["eq_ctr"] = eq_ctr(parsed, other)
    if as_json:
        _emit_json(data)
        return
    click.echo(f"word:         {data['word']}")
    click.echo(f"length:       {data['length']}")
    click.echo(f"contracted:   {data['contracted']}")
    click.echo(f"limit form:   {data['padded']}")
    click.echo(f"stutter-free: {'yes' if data['stutter_free'] else 'no'}")
    if against is not None:
        click.echo(f"equal up to contraction with {data['against']}: {'yes' if data['eq_ctr'] else 'no'}")


@cli.command('encode')
@click.argument('ordinal')
@click.option('--json', 'as_json', is_flag=True, help='Emit the code as JSON')
@click.pass_obj
def encode_command(settings, ordinal, as_json):
    """Print the real coding an ordinal below w^rank."""
    with domain_errors():
        alpha = parse_ordinal(ordinal)
        code = encode_ordinal(alpha, settings)
    if as_json:
        _emit_json({"ordinal": str(alpha), "real": code.real.render(), "bound": code.bound,
                    "rank": code.rank, "width": code.width})
        return
    click.echo(code.real.render())
    click.echo(f"bound={code.bound} rank={code.rank} width={code.width}")


@cli.command('decode')
@click.argument('real')
@click.option('--width', type=int, help='Digit width of the region (default from settings)')
@click.option('--json', 'as_json', is_flag=True, help='Emit the result as JSON')
@click.pass_obj
def decode_command(settings, real, width, as_json):
    """Decode a real bits:<prefix>|<pattern> to the ordinal it codes."""
    width = width if width is not None else settings.code_width
    with domain_errors():
        parsed = parse_real(real)
        decoded = decode_order_type(OrdinalCode(parsed, width ** settings.code_rank, settings.code_rank))
    if isinstance(decoded, NotWellOrder):
        data = {"result": "not-a-well-order", "reason": decoded.reason, "witness": list(decoded.witness)}
        text = decoded.render()
    elif isinstance(decoded, Indeterminate):
        data = {"result": "indeterminate", "reason": decoded.reason, "bound": decoded.bound}
        text = decoded.render()
    else:
        data = {"result": "ordinal", "value": str(decoded)}
        text = str(decoded)
    data["real"] = parsed.render()
    if as_json:
        _emit_json(data)
        return
    click.echo(text)


if __name__ == '__main__':
    cli()
