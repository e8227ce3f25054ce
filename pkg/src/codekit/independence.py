"""Independence, error correction and maximality under an edit channel.

A set is independent of a relation when no member maps to another
member; for reflexive relations the comparison always uses the
antireflexive restriction.  Three regimes on infinite regular inputs
are open problems and surface as UnsupportedError: independence for
S_k and Lambda_k with k >= 2 (Q1), error correction (Q2), and
code-ness of the antireflexive image in the same S/Lambda regime (Q3).
"""

from __future__ import annotations

from dataclasses import dataclass

from .analysis import (
    CodeVerdict,
    find_non_factor,
    is_complete,
    sardinas_patterson,
    verify_double_factorization,
)
from .automata import (
    Language,
    complement,
    concat,
    factors,
    intersect,
    is_empty,
    is_universal,
    nfa_universal,
    shortest_word,
    star,
    union,
)
from .errors import UnsupportedError
from .transducers import (
    EditRelationSpec,
    build,
    image,
    inverse,
    inverse_spec,
    relation_image,
    relation_image_word,
)
from .words import is_unbordered, sort_words, unbordered_extension


@dataclass(frozen=True)
class IndependenceReport:
    independent: bool
    witness: tuple[str, str] | None  # (x, y) with y in the image of x, both members


@dataclass(frozen=True)
class ErrorCorrectionReport:
    correcting: bool
    witness: tuple[str, str, str] | None  # (x, y, common corrupted word)


def _finite_or_none(x_lang: Language) -> Language | None:
    if x_lang.is_finite_repr:
        return x_lang
    return x_lang.to_finite()


def is_independent(x_lang: Language, spec: EditRelationSpec) -> IndependenceReport:
    """Decide whether the antireflexive relation maps no member to
    another member."""
    alphabet = x_lang.alphabet
    bar = spec.with_closure("antireflexive")
    if not spec.is_antireflexive_already:
        fin = _finite_or_none(x_lang)
        if fin is None:
            raise UnsupportedError(
                "Q1",
                f"independence of an infinite regular set under {spec.render()}",
            )
        x_lang = fin
    if x_lang.is_finite_repr:
        members = x_lang.words()
        for x in sort_words(members, alphabet):
            hits = relation_image_word(bar, alphabet, x) & members
            if hits:
                y = min(hits, key=alphabet.lex_key)
                return IndependenceReport(False, (x, y))
        return IndependenceReport(True, None)
    machine = build(spec.with_closure("plain"), alphabet)
    overlap = intersect(x_lang, image(machine, x_lang))
    if is_empty(overlap):
        return IndependenceReport(True, None)
    y = shortest_word(overlap)
    sources = intersect(
        x_lang, image(inverse(machine), Language.finite((y,), alphabet))
    )
    x = shortest_word(sources)
    return IndependenceReport(False, (x, y))


def is_error_correcting(
    x_lang: Language, spec: EditRelationSpec
) -> ErrorCorrectionReport:
    """No corrupted block can have come from two different codewords.

    Checked pairwise on image overlap, and cross-checked against the
    preimage characterization: the relation corrects errors exactly
    when every member with a nonempty image is the only member mapping
    into that image.
    """
    fin = _finite_or_none(x_lang)
    if fin is None:
        raise UnsupportedError(
            "Q2", f"error correction of an infinite regular set under {spec.render()}"
        )
    alphabet = fin.alphabet
    members = sort_words(fin.words(), alphabet)
    images = {x: relation_image_word(spec, alphabet, x) for x in members}
    verdict = None
    for i, x in enumerate(members):
        for y in members[i + 1 :]:
            common = images[x] & images[y]
            if common:
                verdict = (x, y, min(common, key=alphabet.lex_key))
                break
        if verdict:
            break
    # the preimage characterization must agree: a member x is safe
    # exactly when no other member maps into its image
    back = inverse_spec(spec)
    preimage_ok = True
    member_set = fin.words()
    for x in members:
        if not images[x]:
            continue
        sources: set[str] = set()
        for v in images[x]:
            sources |= relation_image_word(back, alphabet, v)
        if (sources & member_set) - {x}:
            preimage_ok = False
            break
    if (verdict is None) != preimage_ok:
        raise AssertionError("error-correction criteria disagree; internal fault")
    return ErrorCorrectionReport(verdict is None, verdict)


def hat_image_is_code(x_lang: Language, spec: EditRelationSpec) -> CodeVerdict:
    """Code-ness of the reflexive image X union tau(X)."""
    img = relation_image(
        spec.with_closure("reflexive"), x_lang.alphabet, x_lang
    )
    return sardinas_patterson(img)


def underline_image_is_code(x_lang: Language, spec: EditRelationSpec) -> CodeVerdict:
    """Code-ness of the antireflexive image."""
    try:
        img = relation_image(
            spec.with_closure("antireflexive"), x_lang.alphabet, x_lang
        )
    except ValueError:
        raise UnsupportedError(
            "Q3",
            f"antireflexive image of an infinite regular set under {spec.render()}",
        ) from None
    return sardinas_patterson(img)


def is_maximal_independent(x_lang: Language, spec: EditRelationSpec) -> bool:
    """Within the family of independent codes, maximal iff complete."""
    verdict = sardinas_patterson(x_lang)
    if not verdict.is_code:
        raise ValueError("precondition failed: input is not a code")
    report = is_independent(x_lang, spec)
    if not report.independent:
        raise ValueError(
            f"precondition failed: input is not independent under {spec.render()}"
        )
    return is_complete(x_lang)


def witness_independent_extension(x_lang: Language, spec: EditRelationSpec) -> str:
    """A word enlarging a non-complete independent code.

    Takes a word v no product of codewords contains, pumps it k+1 times
    so that k defects always leave one copy intact, and pads to an
    unbordered word.  The result is verified before being returned.
    """
    alphabet = x_lang.alphabet
    verdict = sardinas_patterson(x_lang)
    if not verdict.is_code:
        raise ValueError("precondition failed: input is not a code")
    report = is_independent(x_lang, spec)
    if not report.independent:
        raise ValueError(
            f"precondition failed: input is not independent under {spec.render()}"
        )
    if is_complete(x_lang):
        raise ValueError("precondition failed: input is already complete")
    v = find_non_factor(x_lang)
    base = v * (spec.k + 1)
    w = base + unbordered_extension(base, alphabet)
    extended = union(x_lang, Language.finite((w,), alphabet))
    hits = relation_image_word(
        spec.with_closure("antireflexive"), alphabet, w
    )
    ok = (
        not any(x_lang.member(u) for u in hits)
        and not x_lang.member(w)
        and is_independent(extended, spec).independent
        and sardinas_patterson(extended).is_code
    )
    if not ok:
        raise RuntimeError("internal: constructed extension failed verification")
    return w


def er_complete(x_lang: Language) -> Language:
    """Embed a non-complete code into a complete one.

    With w the least unbordered non-factor of the star closure and
    U the words avoiding both that closure and w, the language
    X union w(Uw)* is a complete code containing X.
    """
    alphabet = x_lang.alphabet
    verdict = sardinas_patterson(x_lang)
    if not verdict.is_code:
        raise ValueError("precondition failed: input is not a code")
    star_factors = factors(star(x_lang))
    if is_universal(star_factors):
        raise ValueError("precondition failed: input is already complete")
    w = _least_unbordered_non_factor(x_lang, star_factors)
    universe = Language.regular(nfa_universal(alphabet))
    w_lang = Language.finite((w,), alphabet)
    surrounded = concat(concat(universe, w_lang), universe)
    u_lang = complement(union(star(x_lang), surrounded))
    y_lang = union(x_lang, concat(w_lang, star(concat(u_lang, w_lang))))
    if not sardinas_patterson(y_lang).is_code or not is_complete(y_lang):
        raise RuntimeError("internal: completion failed verification")
    return y_lang


def _least_unbordered_non_factor(x_lang: Language, star_factors: Language) -> str:
    alphabet = x_lang.alphabet
    v = shortest_word(complement(star_factors))
    bound = len(v) + len(unbordered_extension(v, alphabet)) + 1
    for w in alphabet.words_upto(bound):
        if w and is_unbordered(w) and not star_factors.member(w):
            return w
    raise AssertionError("unbordered non-factor search failed")


@dataclass(frozen=True)
class ConstraintStatus:
    status: str  # holds | fails | unsupported
    witness: object = None
    question: str | None = None


@dataclass(frozen=True)
class ChannelCheckReport:
    independent: ConstraintStatus
    error_correcting: ConstraintStatus
    maximal_independent: ConstraintStatus
    hat_image_code: ConstraintStatus
    underline_image_code: ConstraintStatus


def check_constraints(x_lang: Language, spec: EditRelationSpec) -> ChannelCheckReport:
    """Evaluate the channel-facing constraints in one sweep."""

    def guard(fn):
        try:
            return fn()
        except UnsupportedError as e:
            return ConstraintStatus("unsupported", question=e.question)
        except ValueError as e:
            return ConstraintStatus("fails", witness=str(e))

    def indep():
        r = is_independent(x_lang, spec)
        return ConstraintStatus("holds" if r.independent else "fails", witness=r.witness)

    def errc():
        r = is_error_correcting(x_lang, spec)
        return ConstraintStatus("holds" if r.correcting else "fails", witness=r.witness)

    def maxi():
        return ConstraintStatus(
            "holds" if is_maximal_independent(x_lang, spec) else "fails"
        )

    def hat():
        v = hat_image_is_code(x_lang, spec)
        return ConstraintStatus("holds" if v.is_code else "fails", witness=v.witness)

    def bar():
        v = underline_image_is_code(x_lang, spec)
        return ConstraintStatus("holds" if v.is_code else "fails", witness=v.witness)

    return ChannelCheckReport(
        independent=guard(indep),
        error_correcting=guard(errc),
        maximal_independent=guard(maxi),
        hat_image_code=guard(hat),
        underline_image_code=guard(bar),
    )


__all__ = [
    "IndependenceReport",
    "ErrorCorrectionReport",
    "ConstraintStatus",
    "ChannelCheckReport",
    "is_independent",
    "is_error_correcting",
    "hat_image_is_code",
    "underline_image_is_code",
    "is_maximal_independent",
    "witness_independent_extension",
    "er_complete",
    "check_constraints",
    "verify_double_factorization",
]
