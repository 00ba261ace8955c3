"""Hypothesis strategies shared by the test modules."""

import itertools

from hypothesis import strategies as st

from gammasim.arithmetic.ordinal import OMEGA, Ordinal
from gammasim.arithmetic.word import Letter, concat, power
from gammasim.tape import SymbolicTape

EXPONENTS = (Ordinal.of(2), Ordinal.of(3), OMEGA, OMEGA * 2, Ordinal.omega_power(2))


@st.composite
def ordinals(draw, max_exponent=2, max_terms=3, max_coefficient=5):
    """Ordinals below w^(max_exponent+1) in Cantor normal form."""
    exponents = draw(st.lists(st.integers(0, max_exponent), unique=True, max_size=max_terms))
    terms = [(Ordinal.of(e), draw(st.integers(1, max_coefficient))) for e in sorted(exponents, reverse=True)]
    return Ordinal(terms)


def letters(n=2):
    return st.integers(0, n - 1).map(Letter)


def words(n=2, max_leaves=8):
    """Word expressions built from letters by concatenation and powers."""
    return st.recursive(
        letters(n),
        lambda children: st.one_of(
            st.lists(children, min_size=2, max_size=3).map(lambda parts: concat(*parts)),
            st.tuples(children, st.sampled_from(EXPONENTS)).map(lambda pair: power(*pair)),
        ),
        max_leaves=max_leaves,
    )


def limit_words(n=2, max_leaves=8):
    """Words of limit length: a word followed by an omega-power of another."""
    return st.tuples(words(n, max_leaves), words(n, max_leaves // 2)).map(
        lambda pair: concat(pair[0], power(pair[1], OMEGA)))


def tapes(n=2, max_prefix=4, max_period=3):
    return st.builds(
        SymbolicTape,
        st.lists(st.integers(0, n - 1), max_size=max_prefix),
        st.lists(st.integers(0, n - 1), min_size=1, max_size=max_period),
    )


@st.composite
def program_texts(draw, n=2):
    """Never-halting programs with two working states that read the work and output tapes.

    The limit state hands control back to a working state, so runs go on
    through every limit stage.
    """
    workers = ("start", "a")
    lines = [f"symbols {n}", "states start a limit halt", "start start", "limit limit", "halt halt"]
    for state in workers + ("limit",):
        for work, out in itertools.product(range(n), repeat=2):
            new_work = draw(st.integers(0, n - 1))
            new_out = draw(st.integers(0, n - 1))
            move = draw(st.sampled_from("LRS"))
            target = draw(st.sampled_from(workers))
            lines.append(f"{state} *,{work},{out} -> *,{new_work},{new_out} {move} {target}")
    return "\n".join(lines) + "\n"
