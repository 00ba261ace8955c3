"""Codes of ordinals below w^rank as reals.

Naturals stand for digit tuples ``(c_{rank-1}, ..., c_0)``, that is for the
ordinals ``w^(rank-1)*c_{rank-1} + ... + c_0``, ranked first by their
largest digit and then lexicographically. A code of ``a`` sets bit
``pair(i, j)`` when the ordinals of ``i`` and ``j`` satisfy ``i < j < a``,
and the diagonal bit ``pair(i, i)`` when ``i`` belongs to the field. Only
tuples with digits below the code's width are written, so a code describes
the order inside a finite region of ``width**rank`` naturals.
"""

import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from math import isqrt
from typing import Dict, List, Optional, Tuple, Union

from gammasim.arithmetic.ordinal import Ordinal
from gammasim.codes.real import Real
from gammasim.config import DEFAULT_SETTINGS, Settings
from gammasim.errors import CodeError
from gammasim.tape import SymbolicTape

logger = logging.getLogger(__name__)

Digits = Tuple[int, ...]


def pair(i: int, j: int) -> int:
    """Cantor pairing of two naturals."""
    if i < 0 or j < 0:
        raise CodeError(f"cannot pair negative numbers ({i}, {j})")
    return (i + j) * (i + j + 1) // 2 + i


def unpair(z: int) -> Tuple[int, int]:
    """Inverse of ``pair``."""
    if z < 0:
        raise CodeError(f"cannot unpair {z}")
    w = (isqrt(8 * z + 1) - 1) // 2
    i = z - w * (w + 1) // 2
    return i, w - i


@lru_cache(maxsize=None)
def _shell(largest: int, rank: int) -> Tuple[Digits, ...]:
    return tuple(t for t in itertools.product(range(largest + 1), repeat=rank) if max(t) == largest)


def tuple_of(natural: int, rank: int) -> Digits:
    """Digit tuple standing for ``natural``."""
    largest = 0
    while (largest + 1) ** rank <= natural:
        largest += 1
    return _shell(largest, rank)[natural - largest ** rank]


def natural_of(digits: Digits) -> int:
    """Natural standing for ``digits``."""
    rank = len(digits)
    largest = max(digits)
    return largest ** rank + _shell(largest, rank).index(tuple(digits))


def digits_of(alpha: Ordinal, rank: int) -> Digits:
    """CNF digits of ``alpha`` from ``w^(rank-1)`` down to ``w^0``.

    Raises:
        CodeError: if ``alpha`` is at least ``w^rank``
    """
    alpha = Ordinal.of(alpha)
    digits = [0] * rank
    for exponent, coefficient in alpha.terms:
        if not exponent.is_finite or int(exponent) >= rank:
            raise CodeError(f"{alpha} is outside the coding range below w^{rank}")
        digits[rank - 1 - int(exponent)] = coefficient
    return tuple(digits)


def ordinal_of(digits: Digits) -> Ordinal:
    rank = len(digits)
    return Ordinal((Ordinal.of(rank - 1 - k), c) for k, c in enumerate(digits) if c)


@dataclass(frozen=True)
class OrdinalCode:
    """A real read as a relation on the naturals below ``bound``."""

    real: Real
    bound: int
    rank: int = DEFAULT_SETTINGS.code_rank

    @property
    def width(self) -> int:
        return round(self.bound ** (1 / self.rank))

    def related(self, i: int, j: int) -> bool:
        return bool(self.real.bit(pair(i, j)))

    def render(self) -> str:
        return f"{self.real.render()} bound={self.bound} rank={self.rank}"


@dataclass(frozen=True)
class NotWellOrder:
    """The relation is not a strict linear order; ``witness`` shows why."""

    witness: Tuple[int, ...]
    reason: str

    def render(self) -> str:
        return f"not a well order: {self.reason} {self.witness}"


@dataclass(frozen=True)
class Indeterminate:
    """The region of the code does not fix an order type."""

    bound: int
    reason: str
    out_of_range: bool = False

    def render(self) -> str:
        return f"indeterminate within bound {self.bound}: {self.reason}"


Decoded = Union[Ordinal, NotWellOrder, Indeterminate]


def encode_ordinal(alpha, settings: Settings = DEFAULT_SETTINGS) -> OrdinalCode:
    """Code of ``alpha``, widened when a digit of ``alpha`` reaches the configured width.

    Raises:
        CodeError: if ``alpha`` is not below ``w^rank``
    """
    rank = settings.code_rank
    target = digits_of(alpha, rank)
    width = max(settings.code_width, max(target) + 1)
    field = [natural_of(t) for t in itertools.product(range(width), repeat=rank) if t < target]
    positions = [pair(i, i) for i in field]
    for i, j in itertools.permutations(field, 2):
        if tuple_of(i, rank) < tuple_of(j, rank):
            positions.append(pair(i, j))
    code = OrdinalCode(Real.from_positions(positions), width ** rank, rank)
    logger.debug(f"encoded {Ordinal.of(alpha)} with {len(field)} field elements in bound {code.bound}")
    return code


def _field(code: OrdinalCode) -> Tuple[List[int], Optional[Decoded]]:
    if not code.real.is_finite_support:
        return [], Indeterminate(code.bound, "infinitely many bits set")
    field = []
    for z in code.real.positions():
        i, j = unpair(z)
        if i >= code.bound or j >= code.bound:
            return [], Indeterminate(code.bound, f"bit {z} relates {i} and {j} outside the region", True)
        if i == j:
            field.append(i)
    return field, None


def _predecessors(code: OrdinalCode, field: List[int]) -> Dict[int, int]:
    return {i: sum(code.related(j, i) for j in field if j != i) for i in field}


def _linear_order(code: OrdinalCode, field: List[int]) -> Optional[NotWellOrder]:
    members = set(field)
    for z in code.real.positions():
        i, j = unpair(z)
        if i != j and (i not in members or j not in members):
            return NotWellOrder((i, j), "relates a number outside the field")
    for i, j in itertools.combinations(field, 2):
        forward, backward = code.related(i, j), code.related(j, i)
        if forward and backward:
            return NotWellOrder((i, j, i), "cycle")
        if not forward and not backward:
            return NotWellOrder((i, j), "incomparable")
    # a total antisymmetric relation is transitive iff predecessor counts are distinct
    counts = _predecessors(code, field)
    if sorted(counts.values()) == list(range(len(field))):
        return None
    for i, j, k in itertools.permutations(field, 3):
        if code.related(i, j) and code.related(j, k) and code.related(k, i):
            return NotWellOrder((i, j, k, i), "cycle")
    return NotWellOrder(tuple(field), "not transitive")


def decode_order_type(code: OrdinalCode) -> Decoded:
    """Order type of the relation coded by ``code``.

    The field is listed least element first; the resulting tuples must form
    an initial segment of the region in the coding layout, and the order
    type is then the least tuple of the region left out of it.
    """
    field, failure = _field(code)
    if failure is not None:
        return failure
    broken = _linear_order(code, field)
    if broken is not None:
        return broken
    counts = _predecessors(code, field)
    ordered = sorted(field, key=counts.__getitem__)
    tuples = [tuple_of(i, code.rank) for i in ordered]
    if tuples != sorted(tuples):
        return Indeterminate(code.bound, "order differs from the coding layout")
    region = sorted(itertools.product(range(code.width), repeat=code.rank))
    if tuples != region[:len(tuples)]:
        return Indeterminate(code.bound, "field is not an initial segment of the region")
    if len(tuples) == len(region):
        return Indeterminate(code.bound, "field fills the whole region")
    return ordinal_of(region[len(tuples)])


def decode_tape(tape: SymbolicTape, settings: Settings = DEFAULT_SETTINGS) -> Decoded:
    """Decode the contents of a machine tape with the configured region.

    Raises:
        CodeError: if the tape is not binary
    """
    rank = settings.code_rank
    code = OrdinalCode(Real(tape), settings.code_width ** rank, rank)
    return decode_order_type(code)
