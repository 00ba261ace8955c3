"""Program transformations between alphabets and the emulation checker."""

from .emulation import SymbolDecoder, SymbolMap, cycle_word, emulate_limsup_in_n, symbol_map_for
from .encoding import (
    BlockDecoder,
    block_of,
    decode_tape_blocks,
    encode_n_in_2,
    encode_tape_blocks,
)
from .enhancement import EnhancementResult, check_enhancement
from .verify import EmulationReport, verify_emulation

__all__ = [
    "BlockDecoder",
    "EmulationReport",
    "EnhancementResult",
    "SymbolDecoder",
    "SymbolMap",
    "block_of",
    "check_enhancement",
    "cycle_word",
    "decode_tape_blocks",
    "emulate_limsup_in_n",
    "encode_n_in_2",
    "encode_tape_blocks",
    "symbol_map_for",
    "verify_emulation",
]
