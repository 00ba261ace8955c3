"""Finitely representable ordinal words.

A word is a tree of ``Letter``, ``Concat`` and ``Power`` nodes whose length is
an ``Ordinal``. Two normal forms are provided: ``canonical`` (same word,
structural normal form) and ``contract`` (each maximal block of one repeated
symbol collapsed to a single letter).
"""

from functools import lru_cache
from typing import Callable, FrozenSet, List, Optional, Sequence, Tuple

from gammasim.arithmetic.ordinal import (
    ONE,
    OMEGA,
    ZERO,
    Ordinal,
    ord_add,
    ord_divmod,
    ord_mul,
    ord_sub,
    parse_ordinal,
    render_ordinal,
)
from gammasim.errors import ParseError, WordError

# longest finite repetition written out letter by letter in normal forms
UNFOLD_LIMIT = 64
_MAX_REWRITES = 100_000


class WordExpr:
    """Base class of word expressions; see ``Letter``, ``Concat`` and ``Power``."""

    __slots__ = ("length", "_hash")

    def __repr__(self):
        return f"{type(self).__name__}({render_word(self)!r})"

    def __str__(self):
        return render_word(self)


class Letter(WordExpr):
    __slots__ = ("symbol",)

    def __init__(self, symbol: int):
        if not isinstance(symbol, int) or symbol < 0:
            raise WordError(f"invalid letter {symbol!r}")
        self.symbol = symbol
        self.length = ONE
        self._hash = hash(("L", symbol))

    def __eq__(self, other):
        return isinstance(other, Letter) and other.symbol == self.symbol

    def __hash__(self):
        return self._hash


class Concat(WordExpr):
    __slots__ = ("parts",)

    def __init__(self, parts: Sequence[WordExpr]):
        self.parts = tuple(parts)
        total = ZERO
        for part in self.parts:
            total = ord_add(total, part.length)
        self.length = total
        self._hash = hash(("C", self.parts))

    def __eq__(self, other):
        return (isinstance(other, Concat) and other._hash == self._hash
                and other.parts == self.parts)

    def __hash__(self):
        return self._hash


class Power(WordExpr):
    __slots__ = ("base", "exponent")

    def __init__(self, base: WordExpr, exponent: Ordinal):
        exponent = Ordinal.of(exponent)
        if exponent.is_zero:
            raise WordError("power exponent must be at least 1")
        if base.length.is_zero:
            raise WordError("power of the empty word")
        self.base = base
        self.exponent = exponent
        self.length = ord_mul(base.length, exponent)
        self._hash = hash(("P", base, exponent))

    def __eq__(self, other):
        return (isinstance(other, Power) and other._hash == self._hash
                and other.exponent == self.exponent and other.base == self.base)

    def __hash__(self):
        return self._hash


EMPTY = Concat(())


def letter(symbol: int) -> Letter:
    return Letter(symbol)


def length(w: WordExpr) -> Ordinal:
    return w.length


def concat(*words: WordExpr) -> WordExpr:
    """Concatenate words, flattening nested concatenations and dropping empty parts."""
    parts: List[WordExpr] = []
    for word in words:
        if isinstance(word, Concat):
            parts.extend(p for p in word.parts if not p.length.is_zero)
        elif not word.length.is_zero:
            parts.append(word)
    if not parts:
        return EMPTY
    if len(parts) == 1:
        return parts[0]
    return Concat(parts)


def power(w: WordExpr, exponent) -> WordExpr:
    """Return ``w`` repeated ``exponent`` times.

    Raises:
        WordError: for a zero exponent or an empty base
    """
    exponent = Ordinal.of(exponent)
    if exponent.is_zero:
        raise WordError("zero exponent rejected")
    if w.length.is_zero:
        raise WordError("power of the empty word")
    if exponent == 1:
        return w
    return Power(w, exponent)


def index(w: WordExpr, position) -> int:
    """Return the letter of ``w`` at ``position``.

    Raises:
        WordError: if ``position`` is not below the length of ``w``
    """
    position = Ordinal.of(position)
    if not position < w.length:
        raise WordError(f"index {position} out of range for length {w.length}")
    node = w
    while True:
        if isinstance(node, Letter):
            return node.symbol
        if isinstance(node, Concat):
            for part in node.parts:
                if position < part.length:
                    node = part
                    break
                position = ord_sub(position, part.length)
            continue
        _, position = ord_divmod(position, node.base.length)
        node = node.base


def suffix_at(w: WordExpr, rho) -> WordExpr:
    """Return the final segment of ``w`` starting at position ``rho``.

    The result ``s`` satisfies ``rho + |s| = |w|``.

    Raises:
        WordError: if ``rho`` exceeds the length of ``w``
    """
    rho = Ordinal.of(rho)
    if rho > w.length:
        raise WordError(f"suffix position {rho} beyond length {w.length}")
    if rho.is_zero:
        return w
    if rho == w.length:
        return EMPTY
    if isinstance(w, Concat):
        for k, part in enumerate(w.parts):
            if rho < part.length:
                return concat(suffix_at(part, rho), *w.parts[k + 1:])
            rho = ord_sub(rho, part.length)
            if rho.is_zero:
                return concat(*w.parts[k + 1:])
        return EMPTY
    # a Letter has no proper non-empty suffix other than itself
    quotient, remainder = ord_divmod(rho, w.base.length)
    if remainder.is_zero:
        return power(w.base, ord_sub(w.exponent, quotient))
    head = suffix_at(w.base, remainder)
    rest = ord_sub(w.exponent, ord_add(quotient, ONE))
    if rest.is_zero:
        return head
    return concat(head, power(w.base, rest))


def first_letter(w: WordExpr) -> int:
    node = w
    while True:
        if isinstance(node, Letter):
            return node.symbol
        if isinstance(node, Power):
            node = node.base
            continue
        parts = [p for p in node.parts if not p.length.is_zero]
        if not parts:
            raise WordError("the empty word has no first letter")
        node = parts[0]


def last_letter(w: WordExpr) -> Optional[int]:
    """Last letter of ``w``, or ``None`` when ``w`` has limit length."""
    node = w
    while True:
        if isinstance(node, Letter):
            return node.symbol
        if isinstance(node, Power):
            if node.exponent.is_limit:
                return None
            node = node.base
            continue
        parts = [p for p in node.parts if not p.length.is_zero]
        if not parts:
            raise WordError("the empty word has no last letter")
        node = parts[-1]


@lru_cache(maxsize=65536)
def letters(w: WordExpr) -> FrozenSet[int]:
    """Set of symbols occurring in ``w``."""
    if isinstance(w, Letter):
        return frozenset((w.symbol,))
    if isinstance(w, Power):
        return letters(w.base)
    result = frozenset()
    for part in w.parts:
        result = result | letters(part)
    return result


def check_alphabet(w: WordExpr, n: int) -> None:
    """Raise ``WordError`` if ``w`` uses a symbol outside ``0..n-1``."""
    bad = sorted(s for s in letters(w) if s >= n)
    if bad:
        raise WordError(f"symbols {bad} outside alphabet of size {n}")


def substitute(w: WordExpr, mapping: Callable[[int], WordExpr]) -> WordExpr:
    """Replace every letter ``s`` of ``w`` by the word ``mapping(s)``."""
    memo = {}

    def walk(node):
        if node in memo:
            return memo[node]
        if isinstance(node, Letter):
            result = mapping(node.symbol)
        elif isinstance(node, Concat):
            result = concat(*(walk(p) for p in node.parts))
        else:
            result = power(walk(node.base), node.exponent)
        memo[node] = result
        return result

    return walk(w)


# ---------------------------------------------------------------------------
# normal forms
# ---------------------------------------------------------------------------

def _base_items(base: WordExpr) -> List[WordExpr]:
    return list(base.parts) if isinstance(base, Concat) else [base]


def _build(items: Sequence[WordExpr]) -> WordExpr:
    if not items:
        return EMPTY
    if len(items) == 1:
        return items[0]
    return Concat(items)


def _primitive_root(items: List[WordExpr]) -> Tuple[List[WordExpr], int]:
    size = len(items)
    for period in range(1, size // 2 + 1):
        if size % period == 0 and items == items[:period] * (size // period):
            return items[:period], size // period
    return items, 1


def _power_items(base: List[WordExpr], exponent: Ordinal) -> List[WordExpr]:
    if not base:
        return []
    if exponent == 1:
        return list(base)
    if len(base) == 1 and isinstance(base[0], Power):
        inner = base[0]
        return _power_items(_base_items(inner.base), ord_mul(inner.exponent, exponent))
    root, k = _primitive_root(list(base))
    if k > 1:
        return _power_items(root, ord_mul(Ordinal.of(k), exponent))
    if exponent.is_finite and len(base) > 1 and len(base) * int(exponent) <= UNFOLD_LIMIT:
        return list(base) * int(exponent)
    return [Power(_build(base), exponent)]


def _peel_last(item: WordExpr, last: WordExpr) -> Optional[List[WordExpr]]:
    """``item`` without its final ``last``, when it is ``last`` or a finite power of it."""
    if item == last:
        return []
    if (isinstance(item, Power) and item.exponent.is_finite
            and _base_items(item.base) == [last]):
        return _power_items([last], Ordinal.of(int(item.exponent) - 1))
    return None


def _rewrite_at(items: List[WordExpr], i: int, contracted: bool) -> bool:
    """Apply the first matching rule at position ``i``; report whether one fired."""
    item = items[i]
    following = items[i + 1] if i + 1 < len(items) else None

    if not contracted and isinstance(item, Letter) and item == following:
        items[i:i + 2] = [Power(item, Ordinal.of(2))]
        return True

    if isinstance(item, Power):
        base = _base_items(item.base)
        if isinstance(following, Power) and following.base == item.base:
            items[i:i + 2] = [Power(item.base, ord_add(item.exponent, following.exponent))]
            return True
        if items[i + 1:i + 1 + len(base)] == base:
            items[i:i + 1 + len(base)] = [Power(item.base, ord_add(item.exponent, ONE))]
            return True
        left = _peel_last(items[i - 1], base[-1]) if i > 0 and len(base) >= 2 and item.exponent >= OMEGA else None
        if left is not None:
            rotated = _normalize([base[-1]] + base[:-1], contracted)
            rest = ord_sub(item.exponent, OMEGA)
            replacement = left + _power_items(rotated, OMEGA)
            if not rest.is_zero:
                replacement += _power_items(base, rest)
            items[i - 1:i + 1] = replacement
            return True

    for j in range(i + 1, min(len(items), i + 1 + UNFOLD_LIMIT)):
        candidate = items[j]
        if isinstance(candidate, Power) and items[i:j] == _base_items(candidate.base):
            items[i:j + 1] = [Power(candidate.base, ord_add(ONE, candidate.exponent))]
            return True
    return False


def _normalize(items: List[WordExpr], contracted: bool = False) -> List[WordExpr]:
    items = list(items)
    rewrites = 0
    changed = True
    while changed:
        changed = False
        i = 0
        while i < len(items):
            if _rewrite_at(items, i, contracted):
                changed = True
                rewrites += 1
                if rewrites > _MAX_REWRITES:
                    raise WordError("normalization did not terminate")
                i = max(i - 1, 0)
            else:
                i += 1
    return items


@lru_cache(maxsize=65536)
def _canonical_items(w: WordExpr) -> Tuple[WordExpr, ...]:
    if isinstance(w, Letter):
        return (w,)
    if isinstance(w, Concat):
        out: List[WordExpr] = []
        for part in w.parts:
            out.extend(_canonical_items(part))
        return tuple(_normalize(out))
    base = list(_canonical_items(w.base))
    return tuple(_normalize(_power_items(base, w.exponent)))


def canonical(w: WordExpr) -> WordExpr:
    """Structural normal form of ``w`` denoting the same word."""
    return _build(_canonical_items(w))


def words_equal(u: WordExpr, v: WordExpr) -> bool:
    return _canonical_items(u) == _canonical_items(v)


def _items_first_letter(items: Sequence[WordExpr]) -> int:
    return first_letter(items[0])


def _items_last_letter(items: Sequence[WordExpr]) -> Optional[int]:
    return last_letter(items[-1])


def _drop_first(items: Sequence[WordExpr]) -> List[WordExpr]:
    head = items[0]
    if isinstance(head, Letter):
        rest: List[WordExpr] = []
    else:
        base = _base_items(head.base)
        remaining = ord_sub(head.exponent, ONE)
        rest = _drop_first(base)
        if not remaining.is_zero:
            rest += _power_items(base, remaining)
    return rest + list(items[1:])


def _join(left: List[WordExpr], right: List[WordExpr]) -> List[WordExpr]:
    if not left:
        return list(right)
    if not right:
        return list(left)
    tail = _items_last_letter(left)
    if tail is not None and tail == _items_first_letter(right):
        right = _drop_first(right)
    return _normalize(left + right, contracted=True)


def _contract_power(body: List[WordExpr], exponent: Ordinal) -> List[WordExpr]:
    if not body:
        return []
    if len(body) == 1 and isinstance(body[0], Letter):
        return list(body)
    head = _items_first_letter(body)
    tail = _items_last_letter(body)
    if tail is None or tail != head:
        return _normalize(_power_items(body, exponent), contracted=True)
    # body = x.d with d ending in x: body^(w*g + k) contracts to (x.d^w)^g . x.d^k
    rest = _normalize(_drop_first(body), contracted=True)
    blocks, extra = ord_divmod(exponent, OMEGA)
    out: List[WordExpr] = []
    if not blocks.is_zero:
        cycle = _normalize([Letter(head)] + _power_items(rest, OMEGA), contracted=True)
        out += _power_items(cycle, blocks)
    if not extra.is_zero:
        out += [Letter(head)] + _power_items(rest, extra)
    return _normalize(out, contracted=True)


@lru_cache(maxsize=65536)
def _contracted_items(w: WordExpr) -> Tuple[WordExpr, ...]:
    if isinstance(w, Letter):
        return (w,)
    if isinstance(w, Concat):
        acc: List[WordExpr] = []
        for part in w.parts:
            acc = _join(acc, list(_contracted_items(part)))
        return tuple(acc)
    return tuple(_contract_power(list(_contracted_items(w.base)), w.exponent))


def contract(w: WordExpr) -> WordExpr:
    """Stutter-free contraction of ``w`` in canonical form."""
    return _build(_contracted_items(w))


def eq_ctr(u: WordExpr, v: WordExpr) -> bool:
    """True iff ``u`` and ``v`` are equal after contraction."""
    return _contracted_items(u) == _contracted_items(v)


def _item_stutter_free(item: WordExpr) -> bool:
    if isinstance(item, Letter):
        return True
    base = _base_items(item.base)
    if not _items_stutter_free(base):
        return False
    if item.exponent >= 2:
        tail = last_letter(item.base)
        if tail is not None and tail == first_letter(item.base):
            return False
    return True


def _items_stutter_free(items: Sequence[WordExpr]) -> bool:
    for i, item in enumerate(items):
        if not _item_stutter_free(item):
            return False
        if i:
            tail = last_letter(items[i - 1])
            if tail is not None and tail == first_letter(item):
                return False
    return True


def is_stutter_free(w: WordExpr) -> bool:
    """True iff no letter is immediately followed by the same letter."""
    return _items_stutter_free(_canonical_items(w))


def pad_limit(w: WordExpr) -> WordExpr:
    """Limit-length word equal up to contraction to ``w``.

    A word of successor length ending in ``a`` becomes ``w . a^w``; limit
    words are returned unchanged.

    Raises:
        WordError: for the empty word
    """
    if w.length.is_zero:
        raise WordError("cannot pad the empty word")
    if w.length.is_limit:
        return w
    return canonical(concat(w, Power(Letter(last_letter(w)), OMEGA)))


# ---------------------------------------------------------------------------
# text syntax
# ---------------------------------------------------------------------------

def _render_letter(symbol: int) -> str:
    return str(symbol) if symbol < 10 else f"<{symbol}>"


def _render_exponent(exponent: Ordinal) -> str:
    if exponent == OMEGA:
        return "w"
    if exponent.is_finite:
        return str(int(exponent))
    return "{" + render_ordinal(exponent) + "}"


def _render(w: WordExpr) -> str:
    if isinstance(w, Letter):
        return _render_letter(w.symbol)
    if isinstance(w, Power):
        body = _render(w.base)
        if not isinstance(w.base, Letter):
            body = f"({body})"
        return f"{body}^{_render_exponent(w.exponent)}"
    pieces = []
    previous = None
    for part in w.parts:
        text = _render(part)
        if (pieces and isinstance(previous, Power) and previous.exponent.is_finite
                and (text[0].isdigit() or text[0] == "<")):
            pieces.append(" ")
        pieces.append(text)
        previous = part
    return "".join(pieces)


def render_word(w: WordExpr) -> str:
    """Render ``w`` in word syntax, e.g. ``0^3(10)^w``; the empty word renders as ``""``."""
    if w.length.is_zero:
        return ""
    return _render(w)


def parse_word(text: str) -> WordExpr:
    """Parse word syntax.

    Letters are digits (or ``<k>``), ``^`` takes a natural, ``w`` or a
    braced ordinal, parentheses group and whitespace separates.

    Raises:
        ParseError: on malformed text
    """
    parser = _WordParser(text)
    word = parser.word()
    if parser.pos != len(parser.text):
        parser.fail("unexpected ')'")
    return word


class _WordParser:

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def fail(self, message: str):
        raise ParseError(f"{message} at position {self.pos} in word {self.text!r}")

    def peek(self) -> str:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def word(self) -> WordExpr:
        items = []
        while self.peek() not in ("", ")"):
            items.append(self.item())
        return concat(*items)

    def item(self) -> WordExpr:
        node = self.atom()
        while self.peek() == "^":
            self.pos += 1
            exponent = self.exponent()
            try:
                node = power(node, exponent)
            except WordError as e:
                self.fail(str(e))
        return node

    def atom(self) -> WordExpr:
        char = self.peek()
        if char.isdigit():
            self.pos += 1
            return Letter(int(char))
        if char == "<":
            end = self.text.find(">", self.pos)
            if end < 0 or not self.text[self.pos + 1:end].isdigit():
                self.fail("malformed letter")
            symbol = int(self.text[self.pos + 1:end])
            self.pos = end + 1
            return Letter(symbol)
        if char == "(":
            self.pos += 1
            inner = self.word()
            if self.peek() != ")":
                self.fail("expected ')'")
            self.pos += 1
            if inner.length.is_zero:
                self.fail("empty group")
            return inner
        self.fail("expected a letter or '('")

    def exponent(self) -> Ordinal:
        char = self.peek()
        if char == "w":
            self.pos += 1
            return OMEGA
        if char.isdigit():
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            return Ordinal.of(int(self.text[start:self.pos]))
        if char == "{":
            end = self.text.find("}", self.pos)
            if end < 0:
                self.fail("unclosed '{'")
            value = parse_ordinal(self.text[self.pos + 1:end])
            self.pos = end + 1
            return value
        self.fail("expected an exponent")
