"""Tests for reals and the ordinal codes they carry."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gammasim.arithmetic.ordinal import OMEGA, Ordinal
from gammasim.codes import (
    Indeterminate,
    NotWellOrder,
    OrdinalCode,
    Real,
    decode_order_type,
    decode_tape,
    digits_of,
    encode_ordinal,
    natural_of,
    pair,
    parse_real,
    tuple_of,
    unpair,
)
from gammasim.config import Settings
from gammasim.errors import CodeError, ParseError
from gammasim.tape import parse_tape


def test_pairing_examples():
    assert pair(0, 0) == 0
    assert pair(1, 0) == 2
    assert pair(0, 2) == 3


@given(st.integers(0, 200), st.integers(0, 200))
def test_unpair_inverts_pair(i, j):
    assert unpair(pair(i, j)) == (i, j)


def test_digit_tuples():
    assert tuple_of(0, 3) == (0, 0, 0)
    assert tuple_of(1, 3) == (0, 0, 1)
    assert natural_of((0, 0, 1)) == 1
    assert digits_of(OMEGA * 2 + 1, 3) == (0, 2, 1)
    with pytest.raises(CodeError):
        digits_of(Ordinal.omega_power(3), 3)


@pytest.mark.parametrize("alpha", [Ordinal.of(0), Ordinal.of(3), OMEGA * 2 + 1, Ordinal.omega_power(2)])
def test_codes_decode_to_their_ordinal(alpha):
    code = encode_ordinal(alpha)
    assert decode_order_type(code) == alpha


def test_zero_codes_the_empty_relation():
    assert encode_ordinal(0).real.positions() == []


def test_code_widens_for_large_digits():
    code = encode_ordinal(Ordinal.of(6))
    assert code.width == 7
    assert decode_order_type(code) == 6


def test_writer_outputs_decode():
    assert decode_tape(parse_tape("1|0")) == 1
    assert decode_tape(parse_tape("11001|0")) == 2


def test_cycle_is_not_a_well_order():
    real = Real.from_positions([pair(0, 0), pair(1, 1), pair(0, 1), pair(1, 0)])
    decoded = decode_order_type(OrdinalCode(real, 64, 3))
    assert isinstance(decoded, NotWellOrder)
    assert decoded.reason == "cycle"


def test_relation_outside_field():
    decoded = decode_tape(parse_tape("101|0"))
    assert isinstance(decoded, NotWellOrder)


def test_infinite_support_is_indeterminate():
    decoded = decode_tape(parse_tape("|1"))
    assert isinstance(decoded, Indeterminate)
    assert not decoded.out_of_range


def test_out_of_region_bits():
    real = Real.from_positions([pair(70, 70)])
    decoded = decode_order_type(OrdinalCode(real, 64, 3))
    assert isinstance(decoded, Indeterminate)
    assert decoded.out_of_range


def test_non_binary_tape_rejected():
    with pytest.raises(CodeError):
        Real(parse_tape("012|0"))
    with pytest.raises(CodeError):
        decode_tape(parse_tape("2|0"))


def test_parse_real():
    real = parse_real("bits:101|0")
    assert real.bit(2) == 1
    assert real.bit(1) == 0
    assert real.render() == "bits:101|0"
    with pytest.raises(ParseError):
        parse_real("101|0")
    with pytest.raises(ParseError):
        parse_real("bits:2|0")


def test_rank_from_settings():
    code = encode_ordinal(OMEGA, Settings(code_rank=2, code_width=3))
    assert code.bound == 9
    assert decode_order_type(code) == OMEGA
