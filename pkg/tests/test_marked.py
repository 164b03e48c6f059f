import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from markedgroups.families import bn_mod_hk, bn_mod_poly, free_abelian, free_group, lamplighter
from markedgroups.marked import (
    Agreement,
    MarkedGroup,
    OracleIncomplete,
    RankMismatch,
    RelationBall,
    agreement_radius,
    ball_size,
    check_oracle_symmetry,
    converge_table,
    relation_ball,
)
from markedgroups.words import Word, count_reduced, invert_letters, iter_reduced_letters
from oracles import z2_relations

Z2, F2, L2 = free_abelian(2), free_group(2), lamplighter(2)


def test_free_group_has_no_relations():
    ball = relation_ball(F2, 5)
    assert not ball.relations
    assert list(ball.counts_by_length) == [0] * 5


def test_z2_ball_matches_bruteforce():
    ball = relation_ball(Z2, 4)
    assert list(ball.counts_by_length) == [0, 0, 0, 8]
    assert sorted(w.letters for w in ball.relations) == sorted(z2_relations(4))
    assert len(relation_ball(Z2, 6).relations) == 8 + len(z2_relations(6))


def test_lamplighter_ball_contains_ss():
    ball = relation_ball(L2, 2)
    assert "ss" in {L2.format(w) for w in ball.relations}


@pytest.mark.parametrize("G", [Z2, L2], ids=["z2", "lamp2"])
def test_ball_invariants(G):
    ball = relation_ball(G, 5)
    rels = list(ball.relations)
    assert rels == sorted(rels)
    letters = {w.letters for w in rels}
    assert all(invert_letters(w) in letters for w in letters)
    assert all(0 < len(w) <= 5 for w in rels)
    small = relation_ball(G, 3)
    assert ball.restrict(3) == small
    assert ball.restrict(3).fingerprint == small.fingerprint


def test_ball_json_round_trip():
    ball = relation_ball(L2, 4)
    again = RelationBall.from_json(ball.as_json())
    assert again == ball and again.fingerprint == ball.fingerprint


def test_fingerprint_depends_on_radius():
    assert relation_ball(F2, 3).fingerprint != relation_ball(F2, 4).fingerprint


def test_ball_size():
    assert ball_size(2, 8) == sum(count_reduced(2, n) for n in range(1, 9)) == 13120


@pytest.mark.parametrize(
    "G1, G2, expected",
    [(Z2, F2, "exact 3"), (Z2, Z2, "at_least 6"), (Z2, L2, "exact 1"), (F2, L2, "exact 1")],
)
def test_agreement_examples(G1, G2, expected):
    a = agreement_radius(G1, G2, 6)
    assert str(a) == expected
    assert str(agreement_radius(G2, G1, 6)) == expected


def test_agreement_witness_and_distance():
    a = agreement_radius(Z2, F2, 6)
    assert a.exact and len(a.witness) == a.radius + 1
    assert Z2.is_trivial(a.witness) != F2.is_trivial(a.witness)
    assert math.isclose(a.distance, math.exp(-3))
    assert Agreement(6, False).distance <= math.exp(-6)


def test_rank_mismatch():
    with pytest.raises(RankMismatch):
        agreement_radius(Z2, free_abelian(3), 3)


def test_incomplete_oracle_raises():
    G = MarkedGroup(2, lambda w: None if len(w) == 2 else len(w) == 0, label="partial")
    with pytest.raises(OracleIncomplete):
        relation_ball(G, 3)


def test_converge_table_rows():
    rows = converge_table([Z2, Z2, Z2], Z2, 5)
    assert [str(a) for _, a in rows] == ["at_least 5"] * 3
    assert [str(a) for _, a in converge_table([F2], Z2, 6)] == ["exact 3"]


def test_bn_quotients_increase_agreement():
    target = bn_mod_poly(3, 2).marked()
    radii = [agreement_radius(bn_mod_hk(3, 2, k).marked(), target, 4) for k in range(0, 4)]
    assert str(radii[0]) == "exact 3" and str(radii[0].witness) == "abab"
    assert all(str(a) == "at_least 4" for a in radii[1:])


def test_nested_ball_agreement():
    # agreement radius equals the largest r with equal relation balls
    for G1, G2 in [(Z2, F2), (Z2, L2)]:
        a = agreement_radius(G1, G2, 5)
        for r in range(1, 6):
            same = relation_ball(G1, r).relations == relation_ball(G2, r).relations
            assert same == (r <= a.radius)


@given(st.lists(st.sampled_from([1, -1, 2, -2]), max_size=10))
def test_oracles_respect_inversion(raw):
    w = Word.parse("1", 2)
    for x in raw:
        w = w * Word((x,), 2)
    for G in (Z2, L2, F2):
        assert G.is_trivial(w) == G.is_trivial(w.inverse())


def test_check_oracle_symmetry():
    words = [w for n in range(1, 5) for w in iter_reduced_letters(2, n)]
    assert check_oracle_symmetry(L2, words) is None
    lopsided = MarkedGroup(2, lambda w: w == (1, 1), label="bad")
    assert check_oracle_symmetry(lopsided, words) is not None
