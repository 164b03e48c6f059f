import pytest
from hypothesis import given
from hypothesis import strategies as st

from markedgroups.words import (
    NormalClosureEnumerator,
    Word,
    WordError,
    count_reduced,
    enumerate_reduced,
    free_reduce,
    iter_reduced_letters,
    ncl_enumerate,
    parse_letters,
    replay_certificate,
    shortlex_key,
)
from oracles import naive_reduce, reduced_words_bruteforce


def raw_words(m=3, max_size=14):
    letter = st.integers(1, m).flatmap(lambda i: st.sampled_from([i, -i]))
    return st.lists(letter, max_size=max_size)


@pytest.mark.parametrize("text, expected", [("aA", ""), ("abBA", ""), ("abAB", "abAB"), ("1", "")])
def test_free_reduce_examples(text, expected):
    w = Word.parse(text, 2)
    assert w.letters == Word.parse(expected or "1", 2).letters
    assert str(w) == (expected or "1")


@given(raw_words())
def test_free_reduce_matches_naive(raw):
    assert free_reduce(raw, 3).letters == naive_reduce(raw)


@given(raw_words(), raw_words())
def test_product_is_associative_and_inverse_cancels(u, v):
    a, b = free_reduce(u, 3), free_reduce(v, 3)
    assert (a * b) * a.inverse() == a * (b * a.inverse())
    assert (a * a.inverse()).letters == ()
    assert (a * b).inverse() == b.inverse() * a.inverse()


@given(raw_words(m=30))
def test_text_round_trip_large_rank(raw):
    w = free_reduce(raw, 30)
    assert Word.parse(str(w), 30) == w


@given(raw_words(m=5))
def test_text_round_trip(raw):
    w = free_reduce(raw, 5)
    assert Word.parse(str(w), 5) == w


def test_numeric_syntax():
    assert parse_letters("g3^-1 g1^2", 3) == (-3, 1, 1)
    assert str(Word((27, -2), 27)) == "g27*g2^-1"


@pytest.mark.parametrize("bad", [("c", 2), ("g0", 3), ("g4", 3), ("a?", 2)])
def test_parse_rejects(bad):
    with pytest.raises(WordError):
        Word.parse(*bad)


def test_word_must_be_reduced():
    with pytest.raises(WordError):
        Word((1, -1), 2)


@pytest.mark.parametrize("m, max_len, count", [(2, 1, 4), (2, 2, 16), (1, 3, 6)])
def test_enumerate_counts(m, max_len, count):
    assert len(list(enumerate_reduced(m, max_len))) == count


@pytest.mark.parametrize("m, length", [(1, 4), (2, 3), (2, 4), (3, 3)])
def test_enumeration_matches_bruteforce(m, length):
    ours = list(iter_reduced_letters(m, length))
    assert sorted(ours) == sorted(reduced_words_bruteforce(m, length))
    assert len(ours) == count_reduced(m, length)


def test_enumeration_is_shortlex_sorted():
    words = list(enumerate_reduced(2, 4))
    assert words == sorted(words)
    assert [str(w) for w in words[:4]] == ["a", "A", "b", "B"]
    assert shortlex_key((1,)) < shortlex_key((-1,)) < shortlex_key((2,)) < shortlex_key((1, 1))


def test_ncl_empty_relators_stream_is_empty():
    assert list(ncl_enumerate([], 100)) == []


def test_ncl_contains_relator_inverse_and_conjugate():
    r = Word.parse("abAB", 2)
    small = {str(w) for w in ncl_enumerate([r], 3)}
    assert {"abAB", "baBA"} <= small
    big = {str(w) for w in ncl_enumerate([r], 400)}
    assert "aabABA" in big
    assert "1" not in big


def test_ncl_certificates_replay():
    rels = [Word.parse("aa", 2), Word.parse("bbb", 2)]
    en = NormalClosureEnumerator(rels)
    found = []
    while en.spent < 300:
        w = en.step()
        if w is not None:
            found.append(w)
    assert found
    for w in found:
        assert replay_certificate(en.certificate(w), rels).letters == w


def test_ncl_elements_die_in_quotient():
    # every element of ncl(a^2, b^2, (ab)^2) is trivial in C2 x C2
    rels = [Word.parse(t, 2) for t in ("aa", "bb", "abab")]
    for w in ncl_enumerate(rels, 500):
        a, b = w.abelianization()
        assert a % 2 == 0 and b % 2 == 0
