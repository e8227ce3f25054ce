import pytest
from hypothesis import given, settings, strategies as st

from codekit.automata import (
    Language,
    compile_expression,
    complement,
    concat,
    determinize,
    difference,
    equivalent,
    factors,
    intersect,
    is_empty,
    is_universal,
    left_quotient,
    nfa_from_words,
    shortest_word,
    star,
    truncate,
    union,
    words_upto,
)
from codekit.errors import BudgetExceededError, ParseError
from codekit.words import Alphabet

from oracles import brute_factors

AB = Alphabet("ab")

finite_sets = st.frozensets(st.text(alphabet="ab", max_size=4), max_size=6)


def fin(words):
    return Language.finite(words, AB)


def test_compile_finite():
    lang = compile_expression("a|ab|ba", AB)
    assert lang.is_finite_repr
    assert lang.words() == {"a", "ab", "ba"}


def test_compile_eps():
    lang = compile_expression("eps|a", AB)
    assert lang.words() == {"", "a"}


def test_compile_concat_dot():
    lang = compile_expression("(a|b).(a|b)", AB)
    assert lang.words() == {"aa", "ab", "ba", "bb"}


def test_compile_regular():
    lang = compile_expression("(ba)*.(a|bb)", AB)
    assert not lang.is_finite_repr
    for w in ("a", "bb", "baa", "babb", "bababb"):
        assert lang.member(w)
    for w in ("", "ab", "ba", "aab"):
        assert not lang.member(w)


def test_parse_errors_have_positions():
    with pytest.raises(ParseError):
        compile_expression("(a|", AB)
    with pytest.raises(ParseError):
        compile_expression("a)", AB)
    with pytest.raises(ParseError):
        compile_expression("a||b", AB)
    with pytest.raises(ParseError):
        compile_expression("ac", AB)
    try:
        compile_expression("ab@", AB)
    except ParseError as e:
        assert e.position == 2


def test_star_membership():
    lang = star(fin({"aa"}))
    assert lang.member("")
    assert lang.member("aaaa")
    assert not lang.member("aaa")


def test_complement_universal_is_empty():
    universe = star(fin({"a", "b"}))
    assert is_universal(universe)
    assert is_empty(complement(universe))


def test_shortest_word():
    lang = complement(star(fin({"a"})))
    assert shortest_word(lang) == "b"
    assert shortest_word(fin(())) is None
    assert shortest_word(star(fin({"ab"}))) == ""


def test_left_quotient_example():
    got = left_quotient(fin({"a"}), fin({"a", "ab", "ba"}))
    assert got.words() == {"", "b"}
    got = left_quotient(fin({"a"}), fin({"a", "ab", "ba"}), exclude_epsilon=True)
    assert got.words() == {"b"}


def test_left_quotient_regular():
    x = compile_expression("(ba)*.(a|bb)", AB)
    got = left_quotient(fin({"ba"}), x)
    # ba^-1 of (ba)^n a | (ba)^n bb
    for w in ("a", "bb", "baa"):
        assert got.member(w)
    assert not got.member("b")


def test_factors_star():
    got = factors(star(fin({"aa"})))
    assert equivalent(got, compile_expression("a*", AB))


def test_factors_finite():
    got = factors(fin({"ab"}))
    assert got.words() == brute_factors("ab")
    assert factors(fin({""})).words() == {""}
    assert factors(fin(())).words() == frozenset()


def test_equivalence_classics():
    a = compile_expression("(a|b)*", AB)
    b = star(concat(star(fin({"a"})), star(fin({"b"}))))
    assert equivalent(a, b)
    assert not equivalent(a, compile_expression("a*", AB))


def test_words_upto():
    lang = compile_expression("(ba)*.(a|bb)", AB)
    assert words_upto(lang, 4) == {"a", "bb", "baa", "babb"}
    assert truncate(star(fin({"ab"})), 5).words() == {"", "ab", "abab"}


def test_to_finite():
    assert star(fin({"a"})).to_finite() is None
    lang = factors(fin({"ab", "ba"}))
    assert lang.to_finite() is not None
    got = union(fin({"a"}), fin({"b"}))
    assert got.words() == {"a", "b"}


def test_determinize_cap():
    nfa = nfa_from_words({"ab", "ba", "abab"}, AB)
    with pytest.raises(BudgetExceededError):
        determinize(nfa, state_cap=2)


def test_alphabet_mismatch():
    with pytest.raises(ValueError):
        union(fin({"a"}), Language.finite({"0"}, Alphabet("01")))


@given(finite_sets, finite_sets)
@settings(max_examples=60)
def test_boolean_ops_match_sets(xs, ys):
    lx, ly = fin(xs), fin(ys)
    assert union(lx, ly).words() == xs | ys
    assert intersect(lx, ly).words() == xs & ys
    assert difference(lx, ly).words() == xs - ys
    assert concat(lx, ly).words() == {u + v for u in xs for v in ys}


@given(finite_sets)
@settings(max_examples=40)
def test_complement_roundtrip(xs):
    lang = fin(xs)
    cc = complement(complement(lang))
    assert equivalent(cc, lang)
    assert is_empty(intersect(lang, complement(lang)))


@given(finite_sets)
@settings(max_examples=40)
def test_canonical_key_is_representation_independent(xs):
    as_set = fin(xs)
    as_nfa = Language.regular(nfa_from_words(xs, AB))
    assert as_set.canonical_key() == as_nfa.canonical_key()
    assert equivalent(as_set, as_nfa)


@given(finite_sets, st.text(alphabet="ab", max_size=6))
@settings(max_examples=60)
def test_membership_consistency(xs, w):
    lang = fin(xs)
    regular = Language.regular(nfa_from_words(xs, AB))
    assert lang.member(w) == regular.member(w) == regular.dfa().accepts(w)


@given(finite_sets, finite_sets)
@settings(max_examples=40)
def test_left_quotient_matches_enumeration(us, xs):
    got = left_quotient(fin(us), fin(xs))
    expected = {x[len(u):] for u in us for x in xs if x.startswith(u)}
    assert got.to_finite().words() == expected


@given(finite_sets)
@settings(max_examples=40)
def test_factors_match_enumeration(xs):
    expected = set()
    for w in xs:
        expected |= brute_factors(w)
    got = factors(fin(xs))
    assert got.words() == expected
