from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from codekit.analysis import (
    CodeVerdict,
    Distribution,
    find_non_factor,
    is_bifix_code,
    is_complete,
    is_maximal_code,
    is_prefix_code,
    is_suffix_code,
    measure_finite,
    measure_partial,
    sardinas_patterson,
    verify_double_factorization,
)
from codekit.automata import Language, compile_expression, union
from codekit.words import Alphabet

from oracles import double_factorization_witness

AB = Alphabet("ab")

finite_sets = st.frozensets(
    st.text(alphabet="ab", min_size=1, max_size=4), min_size=1, max_size=6
)


def fin(words):
    return Language.finite(words, AB)


def test_classic_non_code():
    verdict = sardinas_patterson(fin({"a", "ab", "ba"}))
    assert not verdict.is_code
    assert verify_double_factorization(verdict.witness, fin({"a", "ab", "ba"}))
    assert verdict.witness.word == "aba"


def test_prefix_code_is_code():
    verdict = sardinas_patterson(fin({"a", "ba", "bb"}))
    assert verdict.is_code
    assert verdict.witness is None
    # trace starts with the quotient seed set
    assert verdict.sp_trace[0].words() == frozenset()


def test_sp_trace_uniform_code():
    # both words share the prefix a^2, the dangling suffix never resolves
    verdict = sardinas_patterson(fin({"aab", "aabab"}))
    assert verdict.sp_trace[0].words() == {"ab"}
    assert verdict.is_code


def test_epsilon_never_a_code():
    verdict = sardinas_patterson(fin({"", "a"}))
    assert not verdict.is_code
    assert verify_double_factorization(verdict.witness, fin({"", "a"}))


def test_sp_regular_prefix_code():
    x = compile_expression("(ba)*.(a|bb)", AB)
    verdict = sardinas_patterson(x)
    assert verdict.is_code
    assert is_prefix_code(x)


def test_sp_regular_non_code():
    x = union(compile_expression("(aa)*", AB), fin({"aaa"}))
    verdict = sardinas_patterson(x)
    assert not verdict.is_code
    assert verify_double_factorization(verdict.witness, x)


def test_sp_regular_agrees_with_finite():
    for words in ({"a", "ab", "ba"}, {"aa", "ab"}, {"ab", "abb", "b"}, {"b"},):
        fin_verdict = sardinas_patterson(fin(words))
        reg = Language.regular(fin(words).nfa())
        reg_verdict = sardinas_patterson(reg)
        assert fin_verdict.is_code == reg_verdict.is_code
        if not reg_verdict.is_code:
            assert verify_double_factorization(reg_verdict.witness, fin(words))


@given(finite_sets)
@settings(max_examples=120, deadline=None)
def test_sp_matches_enumeration_oracle(words):
    verdict = sardinas_patterson(fin(words))
    brute = double_factorization_witness(words, "ab", 10)
    if brute is not None:
        assert not verdict.is_code
    if not verdict.is_code:
        assert verify_double_factorization(verdict.witness, fin(words))


@given(finite_sets)
@settings(max_examples=80, deadline=None)
def test_prefix_iff_empty_seed(words):
    lang = fin(words)
    verdict_seed = sardinas_patterson(lang).sp_trace[0]
    assert is_prefix_code(lang) == (not verdict_seed.words())


def test_affix_checks():
    assert is_prefix_code(fin({"aa", "ab", "b"}))
    assert not is_prefix_code(fin({"a", "ab"}))
    assert is_suffix_code(fin({"a", "ab"}))
    assert not is_suffix_code(fin({"a", "ba"}))
    assert is_bifix_code(fin({"ab", "ba"}))
    x = compile_expression("(ba)*.(a|bb)", AB)
    assert is_prefix_code(x)
    assert not is_suffix_code(x)  # a and baa


def test_distribution_validation():
    Distribution.uniform(AB)
    with pytest.raises(ValueError):
        Distribution(AB, (Fraction(1, 2),))
    with pytest.raises(ValueError):
        Distribution(AB, (Fraction(1, 2), Fraction(1, 3)))
    with pytest.raises(ValueError):
        Distribution(AB, (Fraction(1), Fraction(0)))


def test_measure_values():
    uniform = Distribution.uniform(AB)
    x = fin({"aabbb", "bbbbaa"})
    assert measure_finite(x, uniform) == Fraction(1, 32) + Fraction(1, 64)
    skew = Distribution(AB, (Fraction(1, 3), Fraction(2, 3)))
    assert measure_finite(fin({"ab"}), skew) == Fraction(2, 9)


def test_measure_partial_regular():
    uniform = Distribution.uniform(AB)
    x = compile_expression("(ba)*.(a|bb)", AB)
    # one word of each length n >= 1, measure 2^-n
    assert measure_partial(x, uniform, 20) == 1 - Fraction(1, 2**20)
    assert measure_partial(x, uniform, 2) == Fraction(3, 4)
    assert measure_partial(fin({"a", "bbb"}), uniform, 2) == Fraction(1, 2)


@given(finite_sets)
@settings(max_examples=100, deadline=None)
def test_kraft_inequality_on_codes(words):
    lang = fin(words)
    if sardinas_patterson(lang).is_code:
        assert measure_finite(lang, Distribution.uniform(AB)) <= 1


def test_completeness():
    assert is_complete(fin({"a", "b"}))
    assert is_complete(compile_expression("(ba)*.(a|bb)", AB))
    assert not is_complete(fin({"aa", "ab"}))
    assert not is_complete(fin(()))


def test_maximal_code():
    assert is_maximal_code(fin({"a", "ba", "bb"}))
    assert not is_maximal_code(fin({"aa", "ab"}))
    with pytest.raises(ValueError):
        is_maximal_code(fin({"a", "ab", "ba"}))


def test_schutzenberger_equivalence_on_samples():
    # for regular codes: maximal iff complete iff uniform measure 1
    uniform = Distribution.uniform(AB)
    samples = [
        {"a", "ba", "bb"},
        {"aa", "ab", "ba", "bb"},
        {"a", "ab"},
        {"ab", "ba"},
        {"b", "ab", "aab", "aaab"},
    ]
    for words in samples:
        lang = fin(words)
        assert sardinas_patterson(lang).is_code
        mu = measure_finite(lang, uniform)
        assert is_complete(lang) == (mu == 1)
        assert is_maximal_code(lang) == (mu == 1)


def test_find_non_factor():
    assert find_non_factor(fin({"aa", "ab"})) == "bb"
    assert find_non_factor(fin(())) == "a"
    with pytest.raises(ValueError):
        find_non_factor(fin({"a", "b"}))


def test_verify_rejects_malformed():
    w = sardinas_patterson(fin({"a", "ab", "ba"})).witness
    assert not verify_double_factorization(
        w.__class__(w.word, w.left, w.left), fin({"a", "ab", "ba"})
    )
    assert not verify_double_factorization(
        w.__class__("ab" + w.word, w.left, w.right), fin({"a", "ab", "ba"})
    )
