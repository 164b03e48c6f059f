import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from markedgroups.finite import (
    FiniteGroup,
    FiniteGroupError,
    OrderOverflow,
    PreconditionError,
    check_disjoint_normal_centralizes,
    check_hypercentral_socle,
    discriminating_set,
    format_cycles,
    lemma_rappel_check,
    max_avoiding_normal,
    minimal_normal_subgroups,
    normal_subgroups,
    parse_cycles,
    quotient_discriminated,
    verify_discriminating_set,
)
from markedgroups.finite import library as lib
import oracles

S4_TEXT = "(1,2);(1,2,3,4)"


def perm_tuples(G):
    """Permutations for G, or its right regular representation for table-only groups."""
    if G.perms is None:
        return [tuple(int(x) for x in G.table[:, g]) for g in range(G.order)]
    return [tuple(int(x) for x in row) for row in G.perms]


def index_of(G, cycles):
    target = parse_cycles(cycles, G.perms.shape[1])
    return perm_tuples(G).index(target)


@pytest.fixture(scope="module")
def S4():
    return FiniteGroup.from_permutations(S4_TEXT)


@pytest.mark.parametrize(
    "text, order", [("(1,2)", 2), (S4_TEXT, 24), ("(1,2,3,4,5);(1,2,3)", 60), ("(1,2)(3,4);(1,3,5)", 60)]
)
def test_closure_orders(text, order):
    G = FiniteGroup.from_permutations(text)
    assert G.order == order
    d = G.perms.shape[1]
    gens = [oracles.parse_cycle_string(p, d) for p in text.split(";")]
    assert set(perm_tuples(G)) == oracles.closure(gens)


def test_table_is_composition(S4):
    perms = perm_tuples(S4)
    rng = np.random.default_rng(3)
    for a, b in rng.integers(0, 24, size=(200, 2)):
        assert perms[S4.mul(a, b)] == oracles.compose(perms[a], perms[b])
    for a in range(24):
        assert S4.mul(a, S4.inv(a)) == 0


def test_cycle_format_round_trip():
    for text in ["(1,2,3)(4,5)", "(2,5)", "()"]:
        p = parse_cycles(text, 5)
        assert parse_cycles(format_cycles(p), 5) == p


def test_order_cap():
    with pytest.raises(OrderOverflow):
        FiniteGroup.from_permutations(S4_TEXT, cap=10)


def test_bad_permutation():
    with pytest.raises(FiniteGroupError):
        parse_cycles("(1,1)")


@pytest.mark.parametrize(
    "G, n_normal, n_minimal",
    [
        (lib.symmetric(4), 4, 1),
        (lib.alternating(5), 2, 1),
        (lib.elementary_abelian(2, 2), 5, 3),
        (lib.quaternion(8), 6, 1),
        (lib.dihedral(4), 6, 1),
        (lib.cyclic(6), 4, 2),
    ],
    ids=["S4", "A5", "C2xC2", "Q8", "D4", "C6"],
)
def test_lattice_counts(G, n_normal, n_minimal):
    subs = normal_subgroups(G)
    assert len(subs) == n_normal
    assert len(minimal_normal_subgroups(G)) == n_minimal
    assert len(discriminating_set(G)) == n_minimal
    assert verify_discriminating_set(G, discriminating_set(G))


@pytest.mark.parametrize("name", ["S4", "A4", "D6", "Q8", "C2xS3", "C2^3", "D5", "S3xS3"])
def test_lattice_matches_bruteforce(name):
    G = lib.by_name(name)
    perms = perm_tuples(G)
    expected = oracles.normal_subgroups_bruteforce(perms)
    got = {frozenset(perms[i] for i in N.elements) for N in normal_subgroups(G)}
    assert got == expected
    ident = perms[0]
    mins = {frozenset(perms[i] for i in N.elements) for N in minimal_normal_subgroups(G)}
    assert mins == set(oracles.minimal_normal_bruteforce(expected, ident))
    F = [perms[i] for i in discriminating_set(G)]
    assert oracles.is_discriminating(perms, expected, F)


def test_s4_examples(S4):
    dt = index_of(S4, "(1,2)(3,4)")
    three = index_of(S4, "(1,2,3)")
    assert verify_discriminating_set(S4, [dt])
    assert not verify_discriminating_set(S4, [three])
    assert verify_discriminating_set(S4, range(1, 24))
    assert max_avoiding_normal(S4, [three]).order == 4
    assert max_avoiding_normal(S4, [dt]).order == 1
    assert max_avoiding_normal(S4, []).order == 24
    F = discriminating_set(S4)
    assert len(F) == 1 and S4.element_order(F.elements[0]) == 2


def test_discriminating_set_of_s4_lies_in_v4(S4):
    (x,) = discriminating_set(S4).elements
    (v4,) = minimal_normal_subgroups(S4)
    assert x in v4


@pytest.mark.parametrize("name", ["S4", "D4", "Q8", "C2xS3", "A4"])
def test_max_avoiding_is_maximal(name):
    G = lib.by_name(name)
    perms = perm_tuples(G)
    for f in range(1, G.order):
        N = max_avoiding_normal(G, [f])
        elems = {perms[i] for i in N.elements}
        assert oracles.is_max_avoiding(perms, elems, [perms[f]])
        assert quotient_discriminated(G, N, [f])


@settings(max_examples=25)
@given(st.sampled_from(["S4", "D6", "Q8", "C2xA4", "D4"]), st.data())
def test_random_subsets_match_bruteforce(name, data):
    G = lib.by_name(name)
    perms = perm_tuples(G)
    F = data.draw(st.lists(st.integers(1, G.order - 1), max_size=3, unique=True))
    normals = oracles.normal_subgroups_bruteforce(perms)
    assert verify_discriminating_set(G, F) == oracles.is_discriminating(perms, normals, [perms[i] for i in F])


def test_disjoint_normal_centralizes_examples(S4):
    (v4,) = minimal_normal_subgroups(S4)
    assert check_disjoint_normal_centralizes(S4, v4)
    V = lib.elementary_abelian(2, 2)
    first = next(N for N in normal_subgroups(V) if N.order == 2)
    assert check_disjoint_normal_centralizes(V, first)
    Q8 = lib.quaternion(8)
    center = [i for i in range(8) if Q8.center_mask()[i]]
    assert check_disjoint_normal_centralizes(Q8, center)


def test_hypercentral_socle():
    D4 = lib.dihedral(4)
    assert check_hypercentral_socle(D4)
    (m,) = minimal_normal_subgroups(D4)
    assert set(m.elements) == set(np.flatnonzero(D4.center_mask()))
    assert check_hypercentral_socle(lib.quaternion(8))
    with pytest.raises(PreconditionError):
        check_hypercentral_socle(lib.symmetric(3))


def _subgroup(G, order):
    return next(N for N in normal_subgroups(G) if N.order == order)


def _quotient_all(G, K):
    Q, _ = G.quotient(K.mask(G.order))
    return list(range(Q.order))


def test_rappel_examples():
    V = lib.elementary_abelian(2, 2)
    K = _subgroup(V, 2)
    r = lemma_rappel_check(V, K, _quotient_all(V, K))
    assert (r.count_I, r.count_hom, r.consistent) == (2, 2, True)

    C4 = lib.cyclic(4)
    K = _subgroup(C4, 2)
    r = lemma_rappel_check(C4, K, _quotient_all(C4, K))
    assert (r.count_I, r.count_hom, r.consistent) == (0, 2, True)

    S3 = lib.symmetric(3)
    r = lemma_rappel_check(S3, _subgroup(S3, 3), [0])
    assert (r.count_I, r.count_hom, r.consistent) == (1, 1, True)


def test_wreath_group_order():
    W = lib.wreath_permutation_group(lib.symmetric(3), [(1, 2, 0)])
    assert W.order == 648
    assert len(normal_subgroups(W)) == 7
