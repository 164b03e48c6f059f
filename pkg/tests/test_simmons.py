import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from markedgroups.families import finite_marked, free_abelian, lamplighter
from markedgroups.finite import FiniteGroup, minimal_normal_subgroups
from markedgroups.marked import MarkedGroup, OracleIncomplete, relation_ball
from markedgroups.presentation import parse_presentation
from markedgroups.simmons import (
    NONTRIVIAL,
    TRIVIAL,
    UNKNOWN,
    SoundnessError,
    check_verdict,
    cross_validate,
    make_discriminator,
    presented_group,
    simmons_decide,
)
from markedgroups.words import Word, WordError, free_reduce, replay_certificate
from oracles import exponent_sums

Z2P = parse_presentation("a,b|[a,b]")
NZAB = make_discriminator("nzab", 2)
A5P = parse_presentation("a,b|a^2,b^3,(ab)^5")
A5 = FiniteGroup.from_permutations("(1,2)(3,4);(1,3,5)")


def test_examples():
    x = Word.parse("abAB", 2)
    v = simmons_decide(Z2P, NZAB, x, 100_000)
    assert v.status == TRIVIAL and v.spent == 1
    assert replay_certificate(v.certificate, list(Z2P.relators)) == x
    v = simmons_decide(Z2P, NZAB, Word.parse("ab", 2), 100_000)
    assert v.status == NONTRIVIAL and str(v.witness) == "ab"
    assert str(simmons_decide(Z2P, NZAB, x, 0)) == "Unknown(0)"


def test_empty_word():
    e = Word.identity(2)
    assert simmons_decide(Z2P, NZAB, e, 1).status == TRIVIAL
    assert simmons_decide(Z2P, NZAB, e, 0).status == UNKNOWN


def test_rank_mismatch():
    with pytest.raises(WordError):
        simmons_decide(Z2P, NZAB, Word.parse("a", 3), 10)


def test_discriminator_heads():
    assert [str(w) for w in NZAB.head(5)] == ["a", "A", "b", "B", "aa"]
    L = lamplighter(2)
    head = [L.format(w) for w in make_discriminator("oracle_backed", 2, L).head(8)]
    assert "ss" not in head and {"s", "t"} <= set(head)
    assert head[:6] == ["s", "S", "t", "T", "st", "sT"]


def test_constant_discriminator_is_sound_for_a5():
    # A5 is simple and a != 1, so const:a is a valid discriminating sequence
    assert len(minimal_normal_subgroups(A5)) == 1 and minimal_normal_subgroups(A5)[0].order == 60
    D = make_discriminator("constant", 2, "a")
    G = finite_marked(A5)
    for text in ["a", "aa", "b", "bbb", "ab", "ababababab", "abAB"]:
        x = Word.parse(text, 2)
        v = simmons_decide(A5P, D, x, 300)
        if v.decided:
            assert (v.status == TRIVIAL) == G.is_trivial(x)
            assert check_verdict(A5P, x, v)


def test_user_sequence_is_conditional():
    D = make_discriminator("sequence", 2, ["a", "b"])
    v = simmons_decide(Z2P, D, Word.parse("ab", 2), 1000)
    assert v.conditional
    assert v.status in (NONTRIVIAL, UNKNOWN)


@settings(max_examples=40)
@given(st.lists(st.sampled_from([1, -1, 2, -2]), max_size=8))
def test_z2_verdicts_are_sound(raw):
    x = free_reduce(raw, 2)
    v = simmons_decide(Z2P, NZAB, x, 2000)
    assert v.decided
    assert (v.status == TRIVIAL) == (exponent_sums(x.letters, 2) == (0, 0))
    assert check_verdict(Z2P, x, v)


def test_cross_validate_z2():
    r = cross_validate(Z2P, NZAB, free_abelian(2), 4, 10_000)
    assert r.unknown == 0 and r.words == 160 and r.agree_trivial == 8


def test_cross_validate_budget_zero():
    r = cross_validate(Z2P, NZAB, free_abelian(2), 3, 0)
    assert r.unknown == r.words == 52 and r.agree_trivial == r.agree_nontrivial == 0


def test_cross_validate_detects_wrong_oracle():
    everything_trivial = MarkedGroup(2, lambda w: True, label="trivial group")
    with pytest.raises(SoundnessError):
        cross_validate(Z2P, NZAB, everything_trivial, 2, 10_000)


def test_presented_group_budgets():
    G = presented_group(Z2P, NZAB, 10_000)
    assert G.is_trivial("abAB") and not G.is_trivial("ab")
    semi = presented_group(Z2P, None, 200)
    assert semi.is_trivial("abAB")
    assert semi.oracle(Word.parse("a", 2).letters) is None
    with pytest.raises(OracleIncomplete):
        relation_ball(semi, 2)
