"""Independence, error correction and the completion constructions."""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from codekit.analysis import is_complete, sardinas_patterson, verify_double_factorization
from codekit.automata import Language, compile_expression, star, union, words_upto
from codekit.errors import UnsupportedError
from codekit.independence import (
    check_constraints,
    er_complete,
    hat_image_is_code,
    is_error_correcting,
    is_independent,
    is_maximal_independent,
    underline_image_is_code,
    witness_independent_extension,
)
from codekit.transducers import EditRelationSpec, inverse_spec, relation_image_word
from codekit.words import Alphabet

from oracles import EditOracle

AB = Alphabet(("a", "b"))


def fin(words):
    return Language.finite(words, AB)


def spec(text):
    return EditRelationSpec.parse(text)


# --- independence -----------------------------------------------------------

def test_dependent_set_yields_least_witness():
    report = is_independent(fin({"a", "ab", "ba"}), spec("delta:1"))
    assert not report.independent
    assert report.witness == ("ab", "a")


def test_substitution_independence_flips_with_k():
    x = fin({"aa", "bb"})
    assert is_independent(x, spec("sigma:1")).independent
    report = is_independent(x, spec("sigma:2"))
    assert not report.independent
    assert report.witness == ("aa", "bb")


def test_chain_relation_sees_substitution_as_two_steps():
    # one deletion plus one insertion turns a into b
    report = is_independent(fin({"a", "b"}), spec("S:2"))
    assert not report.independent
    assert report.witness == ("a", "b")


def test_reflexive_spec_still_compares_antireflexively():
    x = fin({"aa", "bb"})
    assert is_independent(x, spec("sigma:1:hat")).independent


def test_infinite_regular_chain_relation_unsupported():
    x = star(fin({"ab"}))
    with pytest.raises(UnsupportedError) as err:
        is_independent(x, spec("S:2"))
    assert err.value.question == "Q1"
    # the k=1 chain stays decidable: images flip length parity
    assert is_independent(x, spec("S:1")).independent is True


def test_regular_prefix_code_is_independent_for_one_edit():
    x = compile_expression("(ba)*.(a|bb)", AB)
    for rel in ("sigma:1", "delta:1", "iota:1", "S:1", "Lambda:1"):
        assert is_independent(x, spec(rel)).independent, rel


def test_regular_dependence_finds_a_pair():
    x = union(star(fin({"ab"})), fin({"abab" + "b"}))
    # ababb arises from abab by one insertion
    report = is_independent(x, spec("iota:1"))
    assert not report.independent
    x_words, y = report.witness
    assert y in relation_image_word(spec("iota:1"), AB, x_words)
    assert x.member(x_words) and x.member(y)


@st.composite
def small_sets(draw):
    words = draw(
        st.sets(st.text(alphabet="ab", min_size=1, max_size=4), min_size=1, max_size=5)
    )
    return frozenset(words)


@settings(max_examples=60, deadline=None)
@given(small_sets(), st.sampled_from(["delta:1", "iota:1", "sigma:1", "Delta:2", "S:2"]))
def test_independence_matches_pointwise_oracle(words, rel):
    oracle = EditOracle(("a", "b"))
    sp = spec(rel)
    expected = True
    for x in words:
        image = oracle.image(x, sp.kind, sp.k) - {x}
        if image & words:
            expected = False
    assert is_independent(fin(words), sp).independent == expected


@settings(max_examples=40, deadline=None)
@given(small_sets(), st.sampled_from(["delta:1", "iota:2", "Delta:2", "sigma:1"]))
def test_independence_symmetric_under_inversion(words, rel):
    sp = spec(rel)
    lang = fin(words)
    assert (
        is_independent(lang, sp).independent
        == is_independent(lang, inverse_spec(sp)).independent
    )


# --- error correction -------------------------------------------------------

def test_repetition_code_corrects_one_substitution():
    assert is_error_correcting(fin({"aaa", "bbb"}), spec("sigma:1")).correcting


def test_short_blocks_collide_after_deletion():
    report = is_error_correcting(fin({"a", "b"}), spec("delta:1"))
    assert not report.correcting
    assert report.witness == ("a", "b", "")


def test_two_block_deletion_channel_is_correcting():
    x = fin({"aabbb", "bbbbaa"})
    report = is_error_correcting(x, spec("Delta:2"))
    assert report.correcting


def test_known_deletion_collision():
    x = fin({"aaaa", "aaab", "abb", "bab"})
    report = is_error_correcting(x, spec("delta:1"))
    assert not report.correcting
    a, b, common = report.witness
    assert common in relation_image_word(spec("delta:1"), AB, a)
    assert common in relation_image_word(spec("delta:1"), AB, b)


def test_bifix_truncation_collides_on_ab():
    words = {"a" + "b" * n + "a" for n in range(4)} | {
        "b" + "a" * n + "b" for n in range(4)
    }
    report = is_error_correcting(fin(words), spec("sigma:1"))
    assert not report.correcting
    assert report.witness == ("aa", "bb", "ab")


def test_error_correction_unsupported_on_infinite_input():
    with pytest.raises(UnsupportedError) as err:
        is_error_correcting(star(fin({"ab"})), spec("delta:1"))
    assert err.value.question == "Q2"


@settings(max_examples=50, deadline=None)
@given(small_sets(), st.sampled_from(["delta:1", "sigma:1", "Delta:2"]))
def test_error_correction_matches_oracle(words, rel):
    oracle = EditOracle(("a", "b"))
    sp = spec(rel)
    images = {x: oracle.image(x, sp.kind, sp.k) for x in words}
    ordered = sorted(words)
    expected = all(
        not (images[x] & images[y])
        for i, x in enumerate(ordered)
        for y in ordered[i + 1 :]
    )
    assert is_error_correcting(fin(words), sp).correcting == expected


# --- image code-ness --------------------------------------------------------

def test_reflexive_image_loses_codeness_for_two_block_words():
    x = fin({"aabb", "bbaa"})
    verdict = hat_image_is_code(x, spec("delta:1"))
    assert not verdict.is_code
    img = relation_image_word(spec("delta:1:hat"), AB, "aabb") | relation_image_word(
        spec("delta:1:hat"), AB, "bbaa"
    )
    assert verify_double_factorization(verdict.witness, fin(img))


def test_plain_image_stays_a_code_for_two_block_words():
    x = fin({"aabb", "bbaa"})
    assert underline_image_is_code(x, spec("delta:1")).is_code


def test_antireflexive_image_of_two_block_words_not_code_under_family():
    x = fin({"aabbb", "bbbbaa"})
    verdict = underline_image_is_code(x, spec("Delta:2"))
    assert not verdict.is_code
    img = relation_image_word(spec("Delta:2:bar"), AB, "aabbb") | relation_image_word(
        spec("Delta:2:bar"), AB, "bbbbaa"
    )
    assert verify_double_factorization(verdict.witness, fin(img))


def test_image_codeness_on_regular_input():
    x = compile_expression("(a.b*.a)|(b.a*.b)", AB)
    assert not hat_image_is_code(x, spec("sigma:1")).is_code


def test_antireflexive_image_unsupported_for_infinite_chain_relation():
    with pytest.raises(UnsupportedError) as err:
        underline_image_is_code(star(fin({"ab"})), spec("Lambda:2"))
    assert err.value.question == "Q3"


# --- maximality -------------------------------------------------------------

def test_complete_independent_code_is_maximal():
    assert is_maximal_independent(fin({"a", "b"}), spec("delta:2"))


def test_non_complete_independent_code_is_not_maximal():
    assert not is_maximal_independent(fin({"aa", "bb"}), spec("sigma:1"))


def test_maximality_requires_a_code():
    with pytest.raises(ValueError):
        is_maximal_independent(fin({"a", "ab", "ba"}), spec("delta:1"))


def test_maximality_requires_independence():
    with pytest.raises(ValueError):
        is_maximal_independent(fin({"a", "b"}), spec("sigma:1"))


def test_regular_bifix_code_is_maximal_independent():
    x = compile_expression("(a.b*.a)|(b.a*.b)", AB)
    assert is_maximal_independent(x, spec("sigma:1"))


# --- extension construction -------------------------------------------------

def test_extension_word_for_single_square():
    w = witness_independent_extension(fin({"aa"}), spec("delta:1"))
    assert w == "bba"


def test_extension_enlarges_an_independent_code():
    x = fin({"aa", "bb"})
    sp = spec("sigma:1")
    w = witness_independent_extension(x, sp)
    extended = fin({"aa", "bb", w})
    assert sardinas_patterson(extended).is_code
    assert is_independent(extended, sp).independent
    hits = relation_image_word(sp, AB, w)
    assert not hits & {"aa", "bb"}


def test_extension_rejects_complete_input():
    with pytest.raises(ValueError):
        witness_independent_extension(fin({"a", "b"}), spec("delta:2"))


def test_extension_rejects_dependent_input():
    # {a, ab} is a code but one deletion maps ab onto a
    with pytest.raises(ValueError):
        witness_independent_extension(fin({"a", "ab"}), spec("delta:1"))


# --- completion -------------------------------------------------------------

def check_completion(x_words):
    x = fin(x_words)
    y = er_complete(x)
    assert sardinas_patterson(y).is_code
    assert is_complete(y)
    for w in x_words:
        assert y.member(w)
    return y


def test_completion_of_single_square():
    y = check_completion({"aa"})
    assert y.member("b")
    # b(a(aa)*b)* keeps odd runs of a between the b markers
    assert y.member("bab")
    assert not y.member("baab")


def test_completion_of_two_squares():
    y = check_completion({"aa", "bb"})
    assert y.member("aabab")


def test_completion_of_empty_set():
    y = er_complete(fin(set()))
    assert sardinas_patterson(y).is_code
    assert is_complete(y)


def test_completion_rejects_complete_input():
    with pytest.raises(ValueError):
        er_complete(fin({"a", "b"}))


def test_completion_rejects_non_code():
    with pytest.raises(ValueError):
        er_complete(fin({"a", "ab", "ba"}))


def test_completion_of_regular_input():
    x = compile_expression("aa.(bb)*", AB)
    y = er_complete(x)
    assert sardinas_patterson(y).is_code
    assert is_complete(y)
    for w in words_upto(x, 6):
        assert y.member(w)


# --- aggregate report -------------------------------------------------------

def test_constraint_report_for_finite_correcting_code():
    report = check_constraints(fin({"aabbb", "bbbbaa"}), spec("Delta:2"))
    assert report.independent.status == "holds"
    assert report.error_correcting.status == "holds"
    assert report.underline_image_code.status == "fails"
    assert report.maximal_independent.status == "fails"


def test_constraint_report_surfaces_open_questions():
    report = check_constraints(star(fin({"ab"})), spec("S:2"))
    assert report.independent.status == "unsupported"
    assert report.independent.question == "Q1"
    assert report.error_correcting.question == "Q2"
    assert report.underline_image_code.question == "Q3"
    assert report.hat_image_code.status in {"holds", "fails"}
