"""Tests for ordinal arithmetic and the word algebra."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gammasim.arithmetic.ordinal import (
    OMEGA,
    ONE,
    ZERO,
    Order,
    Ordinal,
    OrdinalKind,
    classify_ordinal,
    ord_add,
    ord_cmp,
    ord_divmod,
    ord_mul,
    ord_sub,
    parse_ordinal,
    render_ordinal,
)
from gammasim.arithmetic.word import (
    UNFOLD_LIMIT,
    Letter,
    Power,
    canonical,
    check_alphabet,
    concat,
    contract,
    eq_ctr,
    first_letter,
    index,
    is_stutter_free,
    last_letter,
    letters,
    pad_limit,
    parse_word,
    power,
    render_word,
    substitute,
    suffix_at,
    words_equal,
)
from gammasim.errors import OrdinalError, ParseError, WordError
from tests.strategies import limit_words, ordinals, words

W = OMEGA
W2 = Ordinal.omega_power(2)
W3 = Ordinal.omega_power(3)


def w(text):
    return parse_word(text)


# -- ordinals -----------------------------------------------------------------


def test_compare_examples():
    assert ord_cmp(W, W) == Order.EQ
    assert ord_cmp(W + 1, W * 2) == Order.LT
    assert ord_cmp(W3 * 5, Ordinal.omega_power(W)) == Order.LT


def test_addition_examples():
    assert ord_add(Ordinal.of(1), W) == W
    assert ord_add(W, Ordinal.of(1)) == W + 1
    assert ord_add(W * 2 + 3, W) == W * 3


def test_multiplication_examples():
    assert ord_mul(Ordinal.of(2), W) == W
    assert ord_mul(W * 2, W) == W2
    assert ord_mul(W + 1, Ordinal.of(2)) == W * 2 + 1


def test_divmod_examples():
    assert ord_divmod(W2, W) == (W, ZERO)
    assert ord_divmod(W * 3 + 2, W) == (Ordinal.of(3), Ordinal.of(2))
    assert ord_divmod(Ordinal.of(5), W) == (ZERO, Ordinal.of(5))


def test_divmod_by_zero_rejected():
    with pytest.raises(ZeroDivisionError):
        ord_divmod(W, ZERO)


def test_subtraction_of_larger_rejected():
    with pytest.raises(OrdinalError):
        ord_sub(Ordinal.of(3), W)


def test_classify():
    square = classify_ordinal(W2)
    assert square.kind == OrdinalKind.LIMIT
    assert square.is_additively_closed
    assert not square.is_multiplicatively_closed
    double = classify_ordinal(W * 2)
    assert double.kind == OrdinalKind.LIMIT
    assert not double.is_additively_closed
    assert classify_ordinal(Ordinal.omega_power(W)).is_multiplicatively_closed
    assert classify_ordinal(W + 1).kind == OrdinalKind.SUCCESSOR
    assert classify_ordinal(ZERO).kind == OrdinalKind.ZERO


def test_finite_ordinals_compare_with_ints():
    assert Ordinal.of(3) == 3
    assert ONE < W
    assert int(Ordinal.of(7)) == 7


@pytest.mark.parametrize("text, expected", [
    ("0", ZERO),
    ("w", W),
    ("w*2+3", W * 2 + 3),
    ("w^2", W2),
    ("w^w", Ordinal.omega_power(W)),
    ("w^w^2", Ordinal.omega_power(W2)),
    ("w^w^2*3+1", Ordinal.omega_power(W2, 3) + 1),
    ("w+w", W * 2),
    ("w^(w+1)*2", Ordinal.omega_power(W + 1, 2)),
])
def test_parse_ordinal(text, expected):
    assert parse_ordinal(text) == expected


def test_parse_ordinal_rejects_garbage():
    with pytest.raises(ParseError):
        parse_ordinal("w*")


@given(ordinals())
def test_render_parses_back(a):
    assert parse_ordinal(render_ordinal(a)) == a


@given(ordinals(), ordinals(), ordinals())
@settings(max_examples=60)
def test_addition_is_associative(a, b, c):
    assert (a + b) + c == a + (b + c)


@given(ordinals(), ordinals(), ordinals(max_exponent=1))
@settings(max_examples=60)
def test_left_distributivity(a, b, c):
    assert c * (a + b) == c * a + c * b


@given(ordinals(), ordinals())
def test_subtraction_inverts_addition(a, b):
    assert ord_sub(a + b, a) == b


@given(ordinals(), ordinals().filter(lambda b: not b.is_zero))
def test_divmod_reconstructs(a, b):
    quotient, remainder = ord_divmod(a, b)
    assert b * quotient + remainder == a
    assert remainder < b


# -- order types below w^3 ----------------------------------------------------
#
# w^2*a + w*b + c is the order type of the triples lexicographically below
# (a, b, c); the helpers below compute sums and products on those triples.

TRIPLES = list(itertools.product(range(5), range(5), range(8)))


def from_triple(t):
    return Ordinal([(Ordinal.of(2 - k), c) for k, c in enumerate(t) if c])


def to_triple(a):
    assert a < W3
    coefficients = [0, 0, 0]
    for exponent, coefficient in a.terms:
        coefficients[2 - int(exponent)] = coefficient
    return tuple(coefficients)


def triple_add(x, y):
    # the leading term of y swallows every smaller term of x
    for k in range(3):
        if y[k]:
            return x[:k] + (x[k] + y[k],) + y[k + 1:]
    return x


def triple_mul(x, y):
    """Product of two triples, or None when it reaches w^3."""
    if not any(x) or not any(y):
        return (0, 0, 0)
    lead = next(k for k in range(3) if x[k])
    total = (0, 0, 0)
    for k in range(3):
        if not y[k]:
            continue
        if k == 2:
            part = x[:lead] + (x[lead] * y[k],) + x[lead + 1:]
        else:
            exponent = (2 - lead) + (2 - k)
            if exponent > 2:
                return None
            part = tuple(y[k] if 2 - j == exponent else 0 for j in range(3))
        total = triple_add(total, part)
    return total


def test_arithmetic_matches_order_types():
    assert len(TRIPLES) == 200
    pairs = {t: from_triple(t) for t in TRIPLES}
    for x, a in pairs.items():
        assert to_triple(a) == x
        for y, b in pairs.items():
            assert (ord_cmp(a, b) == Order.LT) == (x < y)
            assert to_triple(ord_add(a, b)) == triple_add(x, y)
            product = triple_mul(x, y)
            if product is None:
                assert ord_mul(a, b) >= W3
            else:
                assert to_triple(ord_mul(a, b)) == product
            if any(y):
                quotient, remainder = ord_divmod(a, b)
                q, r = to_triple(quotient), to_triple(remainder)
                assert r < y
                assert triple_add(triple_mul(y, q), r) == x


# -- words --------------------------------------------------------------------


def test_lengths():
    assert w("(10)^w").length == W
    assert concat(power(Letter(0), W), power(Letter(1), W)).length == W * 2
    assert w("0^3(10)^w").length == W


def test_index_examples():
    assert index(concat(power(w("01"), W), Letter(2)), W) == 2
    word = w("0^3(10)^w")
    assert index(word, 2) == 0
    assert index(word, 3) == 1
    assert index(word, 4) == 0


def test_index_out_of_range():
    with pytest.raises(WordError):
        index(w("01"), 2)


def test_suffix_examples():
    assert words_equal(suffix_at(w("0^w 1^w"), W), w("1^w"))
    assert words_equal(suffix_at(w("(01)^w"), 2), w("(01)^w"))
    assert words_equal(suffix_at(w("0^3(10)^w"), 3), w("(10)^w"))


def test_power_flattening():
    nested = power(power(w("01"), W), W)
    assert nested.length == W2
    assert words_equal(nested, w("(01)^{w^2}"))


def test_power_rejects_zero_exponent():
    with pytest.raises(WordError):
        power(Letter(0), 0)


def test_first_and_last_letters():
    assert first_letter(w("0^3(10)^w")) == 0
    assert last_letter(w("(10)^w")) is None
    assert last_letter(w("(10)^w 2")) == 2


def test_letters_and_alphabet():
    assert letters(w("0^5(012)^w")) == {0, 1, 2}
    with pytest.raises(WordError):
        check_alphabet(w("(012)^w"), 2)


def test_contraction_examples():
    assert eq_ctr(w("00012222"), w("01112"))
    assert render_word(contract(w("00012222"))) == "012"
    assert render_word(contract(w("1^w"))) == "1"
    for beta in ("2", "w"):
        for alpha in ("2", "w"):
            for delta in ("w", "{w^2}"):
                assert eq_ctr(w(f"(1^{beta} 0^{alpha})^{delta}"), w(f"(10)^{delta}"))


def test_eq_ctr_examples():
    assert eq_ctr(w("(1^2 0^3)^w"), w("(10)^w"))
    assert not eq_ctr(w("1^w"), w("2"))
    assert eq_ctr(w("0(10)^w"), w("(01)^w"))


def test_stutter_free_examples():
    assert is_stutter_free(w("(01)^w"))
    assert not is_stutter_free(w("001"))
    assert not is_stutter_free(w("(010)^w"))


def test_pad_limit():
    assert words_equal(pad_limit(w("01")), w("0 1^w"))
    assert words_equal(pad_limit(w("(01)^w")), w("(01)^w"))
    assert pad_limit(w("01")).length.is_limit
    with pytest.raises(WordError):
        pad_limit(concat())


def test_long_repetitions_stay_powers():
    long = canonical(power(w("01"), UNFOLD_LIMIT))
    assert isinstance(long, Power)
    half = power(w("01"), UNFOLD_LIMIT // 2)
    assert words_equal(concat(half, half), long)
    assert words_equal(concat(power(w("01"), 3), Letter(0), power(w("10"), W)), w("(01)^w"))


def test_rotation_through_letter_powers():
    assert words_equal(w("0^2(10)^w"), w("0(01)^w"))
    assert words_equal(w("1 0^3(10)^w"), w("1 0^2(01)^w"))
    assert not words_equal(w("0^2(10)^w"), w("(01)^w"))


def test_substitute():
    doubled = substitute(w("(01)^w"), lambda a: power(Letter(a), 2))
    assert words_equal(doubled, w("(0011)^w"))


def test_word_syntax_extensions():
    assert words_equal(w("<12>^w"), power(Letter(12), W))
    assert w("0^{w*2}").length == W * 2
    assert render_word(w("0^3 1")) == "0^3 1"


def test_parse_word_rejects_garbage():
    with pytest.raises(ParseError):
        parse_word("(01")
    with pytest.raises(ParseError):
        parse_word("0^0")


@given(words())
def test_word_render_parses_back(word):
    assert words_equal(parse_word(render_word(word)), word)


@given(words())
@settings(max_examples=80)
def test_canonical_preserves_denotation(word):
    normal = canonical(word)
    assert normal.length == word.length
    for position in range(min(int(word.length) if word.length.is_finite else 12, 12)):
        assert index(normal, position) == index(word, position)


@given(words(n=3))
@settings(max_examples=80)
def test_contraction_idempotent_and_stutter_free(word):
    contracted = contract(word)
    assert words_equal(contract(contracted), contracted)
    assert is_stutter_free(contracted)
    assert eq_ctr(word, contracted)


@given(limit_words(), st.sampled_from([1, 2, W]))
@settings(max_examples=60)
def test_suffix_lengths_add_up(word, rho):
    rho = Ordinal.of(rho)
    if rho <= word.length:
        assert rho + suffix_at(word, rho).length == word.length
