import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nilideal.squarefree import gen_morphism
from nilideal.words import (
    ALPHABET,
    EMPTY,
    ZERO,
    Word,
    WordParseError,
    find_factor,
    find_squares,
    format_word,
    is_a,
    is_s,
    is_squarefree,
    is_t,
    parse_word,
    w,
)
from oracles import naive_squares

words = st.lists(st.sampled_from(ALPHABET), min_size=1, max_size=6).map(lambda xs: Word(tuple(xs)))


def test_parse_examples():
    assert parse_word("L a1 a2") == Word(("L", "a1", "a2"))
    assert parse_word("0") is ZERO or parse_word("0") == ZERO
    assert parse_word("s1 Q a2") == Word(("s1", "Q", "a2"))


@pytest.mark.parametrize(
    "text, fragment",
    [("L x a1", "'x' at position 1"), ("", "empty"), ("L 0", "alone"), ("a4", "'a4' at position 0")],
)
def test_parse_errors(text, fragment):
    with pytest.raises(WordParseError, match=fragment):
        parse_word(text)


def test_format_examples():
    assert format_word(w("M P g")) == "M P g"
    assert format_word(ZERO) == "0"
    assert format_word(Word(("a1",))) == "a1"


def test_alphabet_and_predicates():
    assert len(ALPHABET) == 14
    assert [x for x in ALPHABET if is_a(x)] == ["a1", "a2", "a3"]
    assert [x for x in ALPHABET if is_s(x)] == ["s1", "s2"]
    assert [x for x in ALPHABET if is_t(x)] == ["t1", "t2", "t3"]


def test_zero_is_absorbing():
    assert ZERO * w("L a1") == ZERO
    assert w("L a1") * ZERO == ZERO
    assert EMPTY * w("a1") == w("a1")
    with pytest.raises(ValueError):
        Word(("a1",), zero=True)


def test_round_trip_exhaustive_short():
    for n in (1, 2):
        for letters in itertools.product(ALPHABET, repeat=n):
            word = Word(letters)
            assert parse_word(format_word(word)) == word
    assert parse_word(format_word(ZERO)) == ZERO


@given(words)
def test_round_trip_random(word):
    assert parse_word(format_word(word)) == word


def test_find_factor_examples():
    assert find_factor(w("P R s1 Q"), w("P R s1")) == [0]
    assert find_factor(w("a1 a2"), w("a3")) == []
    assert find_factor(w("a1 a1 a1"), w("a1 a1")) == [0, 1]
    assert find_factor(ZERO, w("a1")) == []


@given(words, st.lists(st.sampled_from(ALPHABET), min_size=1, max_size=3))
def test_find_factor_positions(word, factor):
    f = Word(tuple(factor))
    hits = find_factor(word, f)
    assert hits == sorted(set(hits))
    for p in hits:
        assert word.letters[p:p + len(f)] == f.letters
    expected = [p for p in range(len(word)) if word.letters[p:p + len(f)] == f.letters]
    assert hits == expected


def test_find_squares_examples():
    assert (0, 2) in find_squares(w("a1 a2 a1 a2"))
    assert find_squares(w("a1 a2 a3")) == []
    prefix = gen_morphism(100)
    assert find_squares(prefix) == naive_squares(prefix.letters) == []


def test_find_squares_matches_triple_loop():
    rng = random.Random(20261019)
    for _ in range(1000):
        n = rng.randint(1, 30)
        alphabet = rng.choice([("a1", "a2"), ("a1", "a2", "a3"), ALPHABET])
        word = Word(tuple(rng.choice(alphabet) for _ in range(n)))
        expected = naive_squares(word.letters)
        assert find_squares(word) == expected
        assert is_squarefree(word) == (not expected)


def test_find_squares_rejects_zero():
    with pytest.raises(ValueError):
        find_squares(ZERO)


@settings(max_examples=50)
@given(words)
def test_sort_key_total(word):
    assert word.sort_key() == Word(word.letters).sort_key()
