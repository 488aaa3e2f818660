import pytest
from hypothesis import given

from arbora.words import (
    Letter,
    Word,
    WordSyntaxError,
    commutator,
    cyclic_reduce,
    format_word,
    free_reduce,
    parse_word,
)

from conftest import words

ABC = ["m1", "m2", "m3"]


def w(text):
    return parse_word(text, ABC)


def test_free_reduce_cancels():
    assert free_reduce([Letter(0, 1), Letter(0, -1)]) == Word()
    assert free_reduce([1, 2, -2, 1]) == Word([1, 1])


def test_free_reduce_idempotent():
    x = free_reduce([1, 2, -1, 3])
    assert free_reduce(x) == x


def test_parse_commutator():
    assert w("[m1,m2]") == Word([-1, -2, 1, 2])


def test_parse_power_and_conjugation():
    assert w("m1^3") == Word([1, 1, 1])
    assert w("(m2^3)^(m1)") == Word([-1, 2, 2, 2, 1])
    assert w("m2^m1") == w("m2^(m1)")
    assert w("m1^-2") == Word([-1, -1])
    assert w("1") == Word()
    assert w("[m1^2, m2]^(m1^2)") == (~Word([1, 1])) * commutator(Word([1, 1]), Word([2])) * Word([1, 1])


def test_parse_errors_carry_position():
    with pytest.raises(WordSyntaxError) as exc:
        w("m1*")
    assert exc.value.pos == 3
    with pytest.raises(WordSyntaxError, match="unknown generator"):
        w("m1*x")
    with pytest.raises(WordSyntaxError):
        w("[m1 m2]")
    with pytest.raises(WordSyntaxError):
        w("m1 $")
    with pytest.raises(ValueError):
        parse_word("m1", [])


def test_power_of_non_cyclically_reduced_word():
    x = Word([2, 1, -2])
    assert x**3 == Word([2, 1, 1, 1, -2])
    assert x**-2 == Word([2, -1, -1, -2])
    assert cyclic_reduce(x) == Word([1])


@given(words(3, 12))
def test_round_trip(x):
    assert parse_word(format_word(x, ABC), ABC) == x


@given(words(3, 12))
def test_times_inverse_is_empty(x):
    assert x * ~x == Word()
    assert free_reduce(list(x) + list(~x)) == Word()


@given(words(3), words(3))
def test_product_length_bound(x, y):
    assert len(x * y) <= len(x) + len(y)
    assert x * y == free_reduce(list(x) + list(y))


@given(words(3), words(3))
def test_exponent_sums_additive(x, y):
    s = [a + b for a, b in zip(x.exponent_sums(3), y.exponent_sums(3))]
    assert list((x * y).exponent_sums(3)) == s
