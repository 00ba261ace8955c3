"""Ordinal arithmetic in Cantor normal form below epsilon_0."""

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Tuple, Union

from gammasim.errors import OrdinalError, ParseError


class Ordinal:
    """An ordinal below epsilon_0 written in Cantor normal form.

    ``terms`` holds ``(exponent, coefficient)`` pairs with strictly decreasing
    exponents and positive integer coefficients; the empty tuple is 0.
    Instances are immutable and hashable, and compare equal to ``int`` values
    when finite.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Iterable[Tuple["Ordinal", int]] = ()):
        terms = tuple(terms)
        previous = None
        for exponent, coefficient in terms:
            if not isinstance(exponent, Ordinal):
                raise OrdinalError(f"exponent must be an Ordinal, got {exponent!r}")
            if not isinstance(coefficient, int) or coefficient < 1:
                raise OrdinalError(f"coefficient must be a positive integer, got {coefficient!r}")
            if previous is not None and not _compare(exponent, previous) < 0:
                raise OrdinalError("exponents must be strictly decreasing")
            previous = exponent
        self._terms = terms
        self._hash = None

    @classmethod
    def _raw(cls, terms: Tuple[Tuple["Ordinal", int], ...]) -> "Ordinal":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @staticmethod
    def of(value: Union["Ordinal", int]) -> "Ordinal":
        """Coerce a natural number (or an Ordinal) to an Ordinal."""
        if isinstance(value, Ordinal):
            return value
        if isinstance(value, bool) or not isinstance(value, int):
            raise OrdinalError(f"cannot make an ordinal from {value!r}")
        if value < 0:
            raise OrdinalError(f"negative ordinal {value}")
        return _finite(value)

    @staticmethod
    def omega_power(exponent: Union["Ordinal", int], coefficient: int = 1) -> "Ordinal":
        """Return ``w^exponent * coefficient``."""
        if coefficient < 0:
            raise OrdinalError(f"negative coefficient {coefficient}")
        if coefficient == 0:
            return ZERO
        return Ordinal._raw(((Ordinal.of(exponent), coefficient),))

    @property
    def terms(self) -> Tuple[Tuple["Ordinal", int], ...]:
        return self._terms

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_finite(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and not self._terms[0][0]._terms)

    @property
    def is_successor(self) -> bool:
        return bool(self._terms) and not self._terms[-1][0]._terms

    @property
    def is_limit(self) -> bool:
        return bool(self._terms) and bool(self._terms[-1][0]._terms)

    @property
    def leading_exponent(self) -> "Ordinal":
        if not self._terms:
            raise OrdinalError("0 has no leading exponent")
        return self._terms[0][0]

    def __int__(self) -> int:
        if not self.is_finite:
            raise OrdinalError(f"{self} is not finite")
        return self._terms[0][1] if self._terms else 0

    def __eq__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return self.is_finite and int(self) == other
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self is other or self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(int(self)) if self.is_finite else hash(self._terms)
        return self._hash

    def __lt__(self, other):
        return _compare(self, _coerce(other)) < 0

    def __le__(self, other):
        return _compare(self, _coerce(other)) <= 0

    def __gt__(self, other):
        return _compare(self, _coerce(other)) > 0

    def __ge__(self, other):
        return _compare(self, _coerce(other)) >= 0

    def __add__(self, other):
        return ord_add(self, _coerce(other))

    def __radd__(self, other):
        return ord_add(_coerce(other), self)

    def __mul__(self, other):
        return ord_mul(self, _coerce(other))

    def __rmul__(self, other):
        return ord_mul(_coerce(other), self)

    def __divmod__(self, other):
        return ord_divmod(self, _coerce(other))

    def __str__(self):
        return render_ordinal(self)

    def __repr__(self):
        return f"Ordinal({render_ordinal(self)!r})"


def _coerce(value) -> Ordinal:
    if isinstance(value, Ordinal):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return Ordinal.of(value)
    raise TypeError(f"unsupported operand {value!r}")


@lru_cache(maxsize=1024)
def _finite(value: int) -> Ordinal:
    if value == 0:
        return Ordinal._raw(())
    return Ordinal._raw(((ZERO, value),))


ZERO = Ordinal._raw(())
ONE = Ordinal._raw(((ZERO, 1),))
OMEGA = Ordinal._raw(((ONE, 1),))


class Order(enum.Enum):
    LT = -1
    EQ = 0
    GT = 1


def _compare(a: Ordinal, b: Ordinal) -> int:
    if a is b:
        return 0
    for (ea, ca), (eb, cb) in zip(a._terms, b._terms):
        cmp = _compare(ea, eb)
        if cmp:
            return cmp
        if ca != cb:
            return -1 if ca < cb else 1
    return (len(a._terms) > len(b._terms)) - (len(a._terms) < len(b._terms))


def ord_cmp(a: Ordinal, b: Ordinal) -> Order:
    """Compare two ordinals.

    Args:
        a: Left operand
        b: Right operand

    Returns:
        ``Order.LT``, ``Order.EQ`` or ``Order.GT``
    """
    return Order(_compare(_coerce(a), _coerce(b)))


def ord_add(a: Ordinal, b: Ordinal) -> Ordinal:
    """Ordinal sum ``a + b``; terms of ``a`` below the leading term of ``b`` are absorbed."""
    a, b = _coerce(a), _coerce(b)
    if not b._terms:
        return a
    if not a._terms:
        return b
    head_exponent, head_coefficient = b._terms[0]
    kept = []
    for exponent, coefficient in a._terms:
        cmp = _compare(exponent, head_exponent)
        if cmp > 0:
            kept.append((exponent, coefficient))
        elif cmp == 0:
            kept.append((exponent, coefficient + head_coefficient))
            return Ordinal._raw(tuple(kept) + b._terms[1:])
        else:
            break
    return Ordinal._raw(tuple(kept) + b._terms)


def ord_mul(a: Ordinal, b: Ordinal) -> Ordinal:
    """Ordinal product ``a * b``, distributing over the terms of ``b``."""
    a, b = _coerce(a), _coerce(b)
    if not a._terms or not b._terms:
        return ZERO
    lead_exponent, lead_coefficient = a._terms[0]
    result = ZERO
    for exponent, coefficient in b._terms:
        if not exponent._terms:
            piece = Ordinal._raw(((lead_exponent, lead_coefficient * coefficient),) + a._terms[1:])
        else:
            piece = Ordinal._raw(((ord_add(lead_exponent, exponent), coefficient),))
        result = ord_add(result, piece)
    return result


def ord_sub(a: Ordinal, b: Ordinal) -> Ordinal:
    """Left subtraction: the unique ``r`` with ``b + r = a``.

    Raises:
        OrdinalError: if ``b > a``
    """
    a, b = _coerce(a), _coerce(b)
    if _compare(b, a) > 0:
        raise OrdinalError(f"cannot subtract {b} from {a}")
    for i, (term_a, term_b) in enumerate(zip(a._terms, b._terms)):
        if term_a == term_b:
            continue
        exponent_a, coefficient_a = term_a
        exponent_b, coefficient_b = term_b
        if _compare(exponent_a, exponent_b) > 0:
            return Ordinal._raw(a._terms[i:])
        return Ordinal._raw(((exponent_a, coefficient_a - coefficient_b),) + a._terms[i + 1:])
    return Ordinal._raw(a._terms[len(b._terms):])


def ord_divmod(a: Ordinal, b: Ordinal) -> Tuple[Ordinal, Ordinal]:
    """Left division: ``b * q + r = a`` with ``r < b`` and ``q`` maximal.

    Raises:
        ZeroDivisionError: if ``b`` is 0
    """
    a, b = _coerce(a), _coerce(b)
    if not b._terms:
        raise ZeroDivisionError("ordinal division by zero")
    quotient = ZERO
    remainder = a
    lead_exponent, lead_coefficient = b._terms[0]
    while _compare(remainder, b) >= 0:
        exponent, coefficient = remainder._terms[0]
        if _compare(exponent, lead_exponent) > 0:
            gap = ord_sub(exponent, lead_exponent)
            quotient = ord_add(quotient, Ordinal._raw(((gap, coefficient),)))
            remainder = Ordinal._raw(remainder._terms[1:])
        else:
            k = coefficient // lead_coefficient
            if _compare(ord_mul(b, _finite(k)), remainder) > 0:
                k -= 1
            quotient = ord_add(quotient, _finite(k))
            remainder = ord_sub(remainder, ord_mul(b, _finite(k)))
    return quotient, remainder


class OrdinalKind(enum.Enum):
    ZERO = "zero"
    SUCCESSOR = "successor"
    LIMIT = "limit"


@dataclass(frozen=True)
class OrdinalClass:
    kind: OrdinalKind
    is_additively_closed: bool
    is_multiplicatively_closed: bool


def classify_ordinal(a: Ordinal) -> OrdinalClass:
    """Classify ``a`` as zero, successor or limit, with its closure flags."""
    a = _coerce(a)
    if a.is_zero:
        kind = OrdinalKind.ZERO
    elif a.is_successor:
        kind = OrdinalKind.SUCCESSOR
    else:
        kind = OrdinalKind.LIMIT
    additive = is_additively_closed(a)
    multiplicative = additive and (a.leading_exponent.is_zero or is_additively_closed(a.leading_exponent))
    return OrdinalClass(kind, additive, multiplicative)


def is_additively_closed(a: Ordinal) -> bool:
    return len(a.terms) == 1 and a.terms[0][1] == 1


def render_ordinal(a: Ordinal) -> str:
    """Render ``a`` in the CNF text syntax, e.g. ``w^2*3+w*1+5``."""
    if not a.terms:
        return "0"
    parts = []
    for exponent, coefficient in a.terms:
        if exponent.is_zero:
            parts.append(str(coefficient))
        elif exponent == 1:
            parts.append(f"w*{coefficient}")
        elif exponent.is_finite:
            parts.append(f"w^{int(exponent)}*{coefficient}")
        else:
            parts.append(f"w^({render_ordinal(exponent)})*{coefficient}")
    return "+".join(parts)


def parse_ordinal(text: str) -> Ordinal:
    """Parse the CNF text syntax.

    Terms may omit ``*1``, exponents may be naturals, ``w`` or a
    parenthesised ordinal, and sums need not be in normal form
    (``w+w`` parses as ``w*2``).

    Raises:
        ParseError: on malformed text
    """
    parser = _OrdinalParser(text)
    value = parser.ordinal()
    parser.expect_end()
    return value


class _OrdinalParser:

    def __init__(self, text: str):
        self.text = "".join(str(text).split())
        self.pos = 0

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def fail(self, message: str):
        raise ParseError(f"{message} at position {self.pos} in ordinal {self.text!r}")

    def expect_end(self):
        if self.pos != len(self.text):
            self.fail("unexpected trailing text")

    def natural(self) -> int:
        start = self.pos
        while self.peek().isdigit():
            self.pos += 1
        if start == self.pos:
            self.fail("expected a natural number")
        return int(self.text[start:self.pos])

    def ordinal(self) -> Ordinal:
        value = self.term()
        while self.peek() == "+":
            self.pos += 1
            value = ord_add(value, self.term())
        return value

    def term(self) -> Ordinal:
        char = self.peek()
        if char.isdigit():
            return _finite(self.natural())
        if char != "w":
            self.fail("expected a term")
        self.pos += 1
        exponent = ONE
        if self.peek() == "^":
            self.pos += 1
            exponent = self.exponent()
        coefficient = 1
        if self.peek() == "*":
            self.pos += 1
            coefficient = self.natural()
        return Ordinal.omega_power(exponent, coefficient)

    def exponent(self) -> Ordinal:
        char = self.peek()
        if char.isdigit():
            return _finite(self.natural())
        if char == "w":
            self.pos += 1
            # w^w^2 reads as w^(w^2)
            if self.peek() == "^":
                self.pos += 1
                return Ordinal.omega_power(self.exponent())
            return OMEGA
        if char == "(":
            self.pos += 1
            value = self.ordinal()
            if self.peek() != ")":
                self.fail("expected ')'")
            self.pos += 1
            return value
        self.fail("expected an exponent")
