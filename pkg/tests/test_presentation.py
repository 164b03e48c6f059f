import pytest
from hypothesis import given
from hypothesis import strategies as st

from markedgroups.groupspec import INT_KINDS, GroupSpec, SpecError, parse_group_spec
from markedgroups.presentation import PresentationError, RecursivePresentation, parse_presentation, parse_word_in
from markedgroups.words import Word


def rel_texts(P):
    return [str(r) for r in P.relators]


@pytest.mark.parametrize(
    "text, relators",
    [
        ("a,b|[a,b]", ["abAB"]),
        ("a,b | a^2, b^3, (ab)^5", ["aa", "bbb", "ababababab"]),
        ("a,b|a*b=b*a", ["abAB"]),
        ("a,b|(ab)^-2", ["BABA"]),
        ("a,b|[a^2,b]", ["aabAAB"]),
        ("<a,b | aA, b>", ["b"]),
        ("a|", []),
    ],
)
def test_parse_relators(text, relators):
    assert rel_texts(parse_presentation(text)) == relators


def test_long_generator_names():
    P = parse_presentation("x1, x2 | x1^2, [x1, x2]")
    assert P.m == 2 and P.generator_names == ("x1", "x2")
    assert rel_texts(P) == ["aa", "abAB"]
    assert parse_word_in(P, "x1 x2^-1") == Word.parse("aB", 2)


@pytest.mark.parametrize("bad", ["a,b", "|a", "a,a|a", "a,b|c", "a,b|(ab", "a,b|a^x", "a b|a"])
def test_parse_errors(bad):
    with pytest.raises(PresentationError):
        parse_presentation(bad)


def test_str_round_trip():
    P = parse_presentation("a,b|a^2,b^3,(ab)^5")
    again = RecursivePresentation.parse(str(P))
    assert again.relators == P.relators


@pytest.mark.parametrize("text", ["houghton:3", "abels:3:2", "abelsz:4:3", "bn:3:2", "bnhk:3:2:4", "bnpoly:3:5",
                                  "lamp:2", "zn:2", "free:3", 'pres:"a,b|[a,b]"', 'perm:"(1,2);(1,2,3,4)"'])
def test_groupspec_round_trip(text):
    spec = parse_group_spec(text)
    assert str(spec) == text
    assert GroupSpec.parse(str(spec)) == spec


@given(st.sampled_from(sorted(INT_KINDS)), st.data())
def test_groupspec_round_trip_generated(kind, data):
    bounds = {"n": (3, 6), "p": (2, 2), "k": (1, 9), "m": (1, 5)}
    params = tuple(data.draw(st.integers(*bounds[name])) for name in INT_KINDS[kind])
    spec = GroupSpec(kind, params)
    assert GroupSpec.parse(str(spec)) == spec


def test_unquoted_text_specs():
    assert GroupSpec.parse("perm:(1,2)") == GroupSpec.parse('perm:"(1,2)"')


@pytest.mark.parametrize("bad", ["nope:1", "houghton", "houghton:1", "abels:3:4", "bnhk:3:2", "zn:x", "free:0", "pres:"])
def test_groupspec_errors(bad):
    with pytest.raises(SpecError):
        GroupSpec.parse(bad)


def test_groupspec_marked_groups():
    assert GroupSpec.parse("zn:2").marked().is_trivial("abAB")
    assert GroupSpec.parse("houghton:3").marked().m == 3
    assert GroupSpec.parse("abels:3:2").marked().m == 3
    assert GroupSpec.parse("perm:(1,2,3)").finite_group().order == 3
    with pytest.raises(SpecError):
        GroupSpec.parse("zn:2").finite_group()
