import pytest
from hypothesis import given, strategies as st

from protop.words import (Word, commutator, concat_reduce, exponent_vector, format_word, invert,
                          parse_word, parse_word_list, word_from_json, word_to_json)

RANK = 3
letters = st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), max_size=20)


def test_parse_examples():
    assert parse_word("abA", 2).letters == (1, 2, -1)
    assert parse_word("aA", 2).letters == ()
    assert parse_word("1", 2).is_identity()
    with pytest.raises(ValueError):
        parse_word("abc", 2)
    with pytest.raises(ValueError):
        parse_word("a-b", 2)


def test_concat_examples():
    assert concat_reduce(parse_word("ab", 2), parse_word("BA", 2)).is_identity()
    assert format_word(concat_reduce(parse_word("ab", 2), parse_word("ba", 2))) == "abba"
    assert format_word(concat_reduce(parse_word("aB", 2), parse_word("ba", 2))) == "aa"
    with pytest.raises(ValueError):
        concat_reduce(parse_word("a", 1), parse_word("a", 2))


def test_invert_and_exponents():
    assert format_word(invert(parse_word("abA", 2))) == "aBA"
    assert invert(parse_word("1", 2)).is_identity()
    assert exponent_vector(parse_word("abAb", 2)) == (0, 2)
    assert exponent_vector(parse_word("aBAb", 2)) == (0, 0)


def test_word_validation():
    with pytest.raises(ValueError):
        Word(2, (3,))
    with pytest.raises(ValueError):
        Word(2, (0,))
    assert Word(2, (1, -1, 2)).letters == (2,)


def test_commutator_convention():
    a, b = parse_word("a", 2), parse_word("b", 2)
    assert format_word(commutator(a, b)) == "ABab"


def test_word_list_and_json():
    ws = parse_word_list("aa, b", 2)
    assert [format_word(x) for x in ws] == ["aa", "b"]
    u = Word(30, (30, -1, 2))
    assert word_from_json(word_to_json(u), 30) == u


@given(letters)
def test_reduction_is_idempotent(ls):
    u = Word(RANK, ls)
    assert all(x != -y for x, y in zip(u.letters, u.letters[1:]))
    assert Word(RANK, u.letters) == u


@given(letters, letters)
def test_exponent_vector_is_a_homomorphism(l1, l2):
    u, v = Word(RANK, l1), Word(RANK, l2)
    uv = exponent_vector(concat_reduce(u, v))
    assert uv == tuple(a + b for a, b in zip(exponent_vector(u), exponent_vector(v)))
    assert exponent_vector(invert(u)) == tuple(-a for a in exponent_vector(u))


@given(letters)
def test_inverse_and_round_trip(ls):
    u = Word(RANK, ls)
    assert invert(invert(u)) == u
    assert (u * ~u).is_identity()
    assert parse_word(format_word(u), RANK) == u
