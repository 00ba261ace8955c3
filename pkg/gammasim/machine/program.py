"""Machine programs: three tapes under one head, plus the program file format."""

import enum
import itertools
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Tuple

from gammasim.errors import ProgramError
from gammasim.tape import SymbolicTape

logger = logging.getLogger(__name__)

Triple = Tuple[int, int, int]

INPUT, WORK, OUTPUT = 0, 1, 2
TAPE_NAMES = ("input", "work", "output")


class Move(enum.Enum):
    L = -1
    S = 0
    R = 1


@dataclass(frozen=True)
class Transition:
    write: Triple
    move: Move
    next_state: str


@dataclass(frozen=True)
class Configuration:
    """Snapshot of a machine: state, head position and the three tapes."""

    state: str
    head: int
    tapes: Tuple[SymbolicTape, SymbolicTape, SymbolicTape]

    def render(self) -> str:
        tapes = ",".join(t.render() for t in self.tapes)
        return f"state={self.state} head={self.head} tapes={tapes}"


@dataclass
class Program:
    """A machine over ``n`` symbols with distinguished start, limit and halt states.

    ``decode`` optionally maps physical symbols to the logical symbols they
    stand for (set by program transformations).
    """

    n: int
    states: Tuple[str, ...]
    start: str
    limit: str
    halt: str
    table: Dict[Tuple[str, Triple], Transition]
    decode: Optional[Tuple[int, ...]] = None
    name: str = ""
    comments: List[str] = field(default_factory=list)

    def transition(self, state: str, read: Triple) -> Transition:
        try:
            return self.table[(state, read)]
        except KeyError:
            raise ProgramError(f"no transition for state {state!r} reading {read}") from None

    def triples(self) -> Iterator[Triple]:
        return itertools.product(range(self.n), repeat=3)

    def initial(self, input_tape: Optional[SymbolicTape] = None) -> Configuration:
        tape = input_tape if input_tape is not None else SymbolicTape.blank()
        return Configuration(self.start, 0, (tape, SymbolicTape.blank(), SymbolicTape.blank()))

    def validate(self) -> None:
        """Check the program is well formed and total.

        Raises:
            ProgramError: on the first problem found
        """
        if self.n < 2:
            raise ProgramError(f"alphabet size must be at least 2, got {self.n}")
        if self.n > 256:
            raise ProgramError(f"alphabet size {self.n} exceeds 256")
        known = set(self.states)
        if len(known) != len(self.states):
            raise ProgramError("duplicate state names")
        for role, state in (("start", self.start), ("limit", self.limit), ("halt", self.halt)):
            if state not in known:
                raise ProgramError(f"{role} state {state!r} is not declared")
        if self.decode is not None and len(self.decode) != self.n:
            raise ProgramError(f"decode table has {len(self.decode)} entries for {self.n} symbols")
        for (state, read), rule in self.table.items():
            if state == self.halt:
                raise ProgramError(f"transition out of halt state {state!r}")
            if state not in known or rule.next_state not in known:
                raise ProgramError(f"transition {state!r} -> {rule.next_state!r} uses an undeclared state")
            for symbol in read + rule.write:
                if not 0 <= symbol < self.n:
                    raise ProgramError(f"symbol {symbol} outside alphabet of size {self.n}")
        for state in self.states:
            if state == self.halt:
                continue
            for read in self.triples():
                if (state, read) not in self.table:
                    raise ProgramError(f"program is not total: state {state!r} reading {read}")

    def render(self) -> str:
        """Program text in the standard file format, one transition per line."""
        lines = [f"# {c}" for c in self.comments]
        lines += [
            f"symbols {self.n}",
            f"states {' '.join(self.states)}",
            f"start {self.start}",
            f"limit {self.limit}",
            f"halt {self.halt}",
        ]
        if self.decode is not None:
            lines.append("decode " + " ".join(str(s) for s in self.decode))
        for state in self.states:
            for read in self.triples():
                rule = self.table.get((state, read))
                if rule is None:
                    continue
                lines.append(f"{state} {_triple(read)} -> {_triple(rule.write)} {rule.move.name} {rule.next_state}")
        return "\n".join(lines) + "\n"


def _triple(values: Triple) -> str:
    return ",".join(str(v) for v in values)


def step(program: Program, config: Configuration) -> Tuple[Configuration, bool]:
    """One successor step; returns the new configuration and whether it halted.

    A left move at cell 0 keeps the head in place. The writes of the halting
    transition are applied.

    Raises:
        ProgramError: if ``config`` is already halted or no transition applies
    """
    if config.state == program.halt:
        raise ProgramError("cannot step a halted configuration")
    head = config.head
    read = tuple(t.cell(head) for t in config.tapes)
    rule = program.transition(config.state, read)
    tapes = []
    for tape, symbol in zip(config.tapes, rule.write):
        if tape.cell(head) == symbol:
            tapes.append(tape)
            continue
        width = max(head + 1, len(tape.prefix))
        cells = list(tape.cells(width))
        cells[head] = symbol
        tapes.append(SymbolicTape(cells, _rotated(tape, width)))
    head = max(0, head + rule.move.value)
    return Configuration(rule.next_state, head, tuple(tapes)), rule.next_state == program.halt


def _rotated(tape: SymbolicTape, width: int) -> Tuple[int, ...]:
    return tuple(tape.cell(width + k) for k in range(tape.period))


def _parse_symbol(token: str, n: int, wildcard: bool, line_no: int) -> Optional[int]:
    if token == "*" and wildcard:
        return None
    if not token.isdigit():
        raise ProgramError(f"line {line_no}: bad symbol {token!r}")
    value = int(token)
    if value >= n:
        raise ProgramError(f"line {line_no}: symbol {value} outside alphabet of size {n}")
    return value


def parse_program(text: str, name: str = "") -> Program:
    """Parse the line-based program format.

    Headers are ``symbols``, ``states``, ``start``, ``limit``, ``halt`` and
    the optional ``decode``; every other non-comment line is a transition
    ``q a,b,c -> a',b',c' M q'``. A ``*`` in the read triple matches any
    symbol and in the write triple keeps the symbol read. When several lines
    match, the one with fewer wildcards wins.

    Raises:
        ProgramError: on malformed or non-total programs
    """
    headers: Dict[str, List[str]] = {}
    rules = []
    comments = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line, _, comment = raw.partition("#")
        if comment.strip() and not line.strip():
            comments.append(comment.strip())
        line = line.strip()
        if not line:
            continue
        words = line.split()
        if "->" not in words and words[0] in ("symbols", "states", "start", "limit", "halt", "decode"):
            if words[0] in headers:
                raise ProgramError(f"line {line_no}: duplicate header {words[0]!r}")
            headers[words[0]] = words[1:]
            continue
        if len(words) != 6 or words[2] != "->":
            raise ProgramError(f"line {line_no}: expected 'q a,b,c -> a,b,c M q', got {line!r}")
        rules.append((line_no, words))

    for required in ("symbols", "states", "start", "limit", "halt"):
        if required not in headers:
            raise ProgramError(f"missing header {required!r}")
    try:
        n = int(headers["symbols"][0])
    except (IndexError, ValueError):
        raise ProgramError("header 'symbols' needs an integer") from None
    states = tuple(headers["states"])
    single = {}
    for key in ("start", "limit", "halt"):
        if len(headers[key]) != 1:
            raise ProgramError(f"header {key!r} needs exactly one state")
        single[key] = headers[key][0]
    decode = None
    if "decode" in headers:
        try:
            decode = tuple(int(s) for s in headers["decode"])
        except ValueError:
            raise ProgramError("header 'decode' needs integers") from None

    chosen: Dict[Tuple[str, Triple], Tuple[int, Transition, int]] = {}
    for line_no, (state, reads, _, writes, move, target) in rules:
        read_tokens = reads.split(",")
        write_tokens = writes.split(",")
        if len(read_tokens) != 3 or len(write_tokens) != 3:
            raise ProgramError(f"line {line_no}: triples need three symbols")
        pattern = [_parse_symbol(t, n, True, line_no) for t in read_tokens]
        outputs = [_parse_symbol(t, n, True, line_no) for t in write_tokens]
        try:
            direction = Move[move]
        except KeyError:
            raise ProgramError(f"line {line_no}: move must be L, R or S, got {move!r}") from None
        specificity = sum(p is not None for p in pattern)
        choices = [range(n) if p is None else (p,) for p in pattern]
        for read in itertools.product(*choices):
            write = tuple(r if w is None else w for r, w in zip(read, outputs))
            rule = Transition(write, direction, target)
            key = (state, read)
            previous = chosen.get(key)
            if previous is None or previous[0] < specificity:
                chosen[key] = (specificity, rule, line_no)
            elif previous[0] == specificity and previous[1] != rule:
                raise ProgramError(f"line {line_no}: conflicts with line {previous[2]} for {state} {read}")

    program = Program(
        n=n,
        states=states,
        start=single["start"],
        limit=single["limit"],
        halt=single["halt"],
        table={key: value[1] for key, value in chosen.items()},
        decode=decode,
        name=name,
        comments=comments,
    )
    program.validate()
    logger.debug(f"parsed program {name!r}: {len(states)} states, {len(program.table)} transitions")
    return program


def load_program(path) -> Program:
    """Read and parse a program file.

    Raises:
        FileNotFoundError: if ``path`` does not exist
        ProgramError: on malformed content
    """
    path = Path(path)
    return parse_program(path.read_text(), name=path.stem)
