"""Reals and the codes of ordinals they carry."""

from .ordinal_codes import (
    Decoded,
    Indeterminate,
    NotWellOrder,
    OrdinalCode,
    decode_order_type,
    decode_tape,
    digits_of,
    encode_ordinal,
    natural_of,
    ordinal_of,
    pair,
    tuple_of,
    unpair,
)
from .real import Real, parse_real

__all__ = [
    "Decoded",
    "Indeterminate",
    "NotWellOrder",
    "OrdinalCode",
    "Real",
    "decode_order_type",
    "decode_tape",
    "digits_of",
    "encode_ordinal",
    "natural_of",
    "ordinal_of",
    "pair",
    "parse_real",
    "tuple_of",
    "unpair",
]
