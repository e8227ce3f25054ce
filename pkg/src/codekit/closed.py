"""Codes closed under an edit relation.

A set is closed when the relation never maps a member outside the set.
Deletion admits finitely many closed codes per defect count, with all
word lengths inside a quadratic window.  Insertion and the mixed
relation families admit none at all, and this module can replay the
short argument for any candidate.  Substitution closure is governed by
orbit shapes: over a binary alphabet an orbit is the complement pair,
a parity class, or everything, and closed codes follow suit.
"""

from __future__ import annotations

from dataclasses import dataclass

from .analysis import DoubleFactorization, is_complete, sardinas_patterson
from .automata import (
    Language,
    difference,
    intersect,
    is_empty,
    shortest_word,
    words_upto,
)
from .errors import BudgetExceededError
from .transducers import (
    EditRelationSpec,
    build,
    image,
    inverse,
    relation_image_word,
)
from .words import Alphabet, complement_word, parity_ones, sort_words, subsequences

DEFAULT_CANDIDATE_BUDGET = 1 << 24

_FINITE_CLOSURE_KINDS = ("delta", "Delta", "sigma", "Sigma")
_EMPTY_FAMILY_KINDS = ("iota", "I", "Delta", "S", "Lambda")


@dataclass(frozen=True)
class ClosednessReport:
    closed: bool
    witness: tuple[str, str] | None  # (member, escaping image word)


@dataclass(frozen=True)
class MaximalityReport:
    maximal: bool
    witness: str | None  # a word whose closure extends the code


@dataclass(frozen=True)
class EmptyFamilyExplanation:
    spec: EditRelationSpec
    seed: str
    chain: tuple[str, ...]
    forced: str
    conflict: DoubleFactorization | None
    reason: str


@dataclass(frozen=True)
class SigmaOrbit:
    shape: str  # singleton | pair | parity | full
    n: int
    alphabet: Alphabet
    seed: str

    def cardinality(self) -> int:
        if self.shape == "singleton":
            return 1
        if self.shape == "pair":
            return 2
        if self.shape == "parity":
            return len(self.alphabet.letters) ** self.n // 2
        return len(self.alphabet.letters) ** self.n

    def materialize(self) -> frozenset[str]:
        if self.shape == "singleton":
            return frozenset((self.seed,))
        if self.shape == "pair":
            return frozenset((self.seed, complement_word(self.seed, self.alphabet)))
        if self.shape == "parity":
            want = parity_ones(self.seed, self.alphabet)
            return frozenset(
                w
                for w in self.alphabet.words_of_length(self.n)
                if parity_ones(w, self.alphabet) == want
            )
        return frozenset(self.alphabet.words_of_length(self.n))


@dataclass(frozen=True)
class Classification:
    kind: str  # not_code | not_closed | short_subset | even | odd | full | uniform
    n: int | None = None
    witness: object = None


class _Budget:
    def __init__(self, limit: int, context: str):
        self.limit = limit
        self.context = context
        self.spent = 0

    def spend(self) -> None:
        self.spent += 1
        if self.spent > self.limit:
            raise BudgetExceededError(
                f"candidate budget exhausted while {self.context}",
                budget=self.limit,
                observed=self.spent,
            )


def is_closed(x_lang: Language, spec: EditRelationSpec) -> ClosednessReport:
    """Containment of the relation's image in the set itself.

    The verdict does not depend on the closure flag: identity pairs
    never leave the set.
    """
    alphabet = x_lang.alphabet
    machine = build(spec.with_closure("plain"), alphabet)
    img = image(machine, x_lang)
    escaped = difference(img, x_lang)
    if is_empty(escaped):
        return ClosednessReport(True, None)
    y = shortest_word(escaped)
    x = _source_of(x_lang, spec, y)
    return ClosednessReport(False, (x, y))


def _source_of(x_lang: Language, spec: EditRelationSpec, y: str) -> str:
    alphabet = x_lang.alphabet
    machine = build(spec.with_closure("plain"), alphabet)
    sources = Language.finite((y,), alphabet)
    hits = intersect(x_lang, image(inverse(machine), sources))
    return shortest_word(hits)


def closure_star(x_lang: Language, spec: EditRelationSpec) -> Language:
    """Least superset closed under the relation.

    Only deletion and substitution keep the closure finite; insertion
    and the mixed chain families grow without bound.
    """
    if spec.kind not in _FINITE_CLOSURE_KINDS:
        raise ValueError(
            f"closure under {spec.render()} is infinite on nonempty sets"
        )
    fin = x_lang if x_lang.is_finite_repr else x_lang.to_finite()
    if fin is None:
        raise ValueError("closure iteration needs a finite set")
    alphabet = fin.alphabet
    seen = set(fin.words())
    frontier = list(seen)
    while frontier:
        w = frontier.pop()
        for v in relation_image_word(spec.with_closure("plain"), alphabet, w):
            if v not in seen:
                seen.add(v)
                frontier.append(v)
    return Language.finite(seen, alphabet)


def delta_length_bound(k: int) -> frozenset[int]:
    """Admissible codeword lengths for deletion-closed codes."""
    if k < 1:
        raise ValueError("defect count must be at least 1")
    return frozenset(range(1, k * k - k)) - {k}


def _delta_universe(k: int, alphabet: Alphabet) -> list[str]:
    lengths = sorted(delta_length_bound(k))
    return [w for n in lengths for w in alphabet.words_of_length(n)]


def _is_code(words: frozenset[str], alphabet: Alphabet) -> bool:
    return sardinas_patterson(Language.finite(words, alphabet)).is_code


def enumerate_delta_closed(
    k: int,
    alphabet: Alphabet,
    limit: int | None = None,
    candidate_budget: int = DEFAULT_CANDIDATE_BUDGET,
):
    """All nonempty deletion-closed codes for a given defect count.

    Streams codes in the order induced by adding universe words left to
    right, so prefixes of the stream are reproducible.  Every yielded
    set has been checked closed and uniquely decodable.
    """
    universe = _delta_universe(k, alphabet)
    budget = _Budget(
        candidate_budget, f"enumerating over a universe of {len(universe)} words"
    )
    images = {w: subsequences(w, len(w) - k) if len(w) > k else frozenset() for w in universe}
    emitted = 0

    def walk(current: frozenset[str], start: int):
        for i in range(start, len(universe)):
            w = universe[i]
            if not images[w] <= current:
                continue
            candidate = current | {w}
            budget.spend()
            if not _is_code(candidate, alphabet):
                continue
            yield candidate
            yield from walk(candidate, i + 1)

    for code in walk(frozenset(), 0):
        yield Language.finite(code, alphabet)
        emitted += 1
        if limit is not None and emitted >= limit:
            return


def _require_delta_closed_code(x_lang: Language, k: int) -> frozenset[str]:
    fin = x_lang if x_lang.is_finite_repr else x_lang.to_finite()
    if fin is None:
        raise ValueError("deletion-closed analysis needs a finite set")
    spec = EditRelationSpec("delta", k)
    if not sardinas_patterson(fin).is_code:
        raise ValueError("precondition failed: input is not a code")
    report = is_closed(fin, spec)
    if not report.closed:
        raise ValueError(
            f"precondition failed: input is not closed under {spec.render()}"
        )
    return fin.words()


def is_maximal_delta_closed(
    x_lang: Language, k: int, candidate_budget: int = DEFAULT_CANDIDATE_BUDGET
) -> MaximalityReport:
    """No single extra word can grow the code within the closed family.

    Adding any word drags its whole deletion closure along, so it is
    enough to test one-word extensions closed off by closure_star.
    """
    words = _require_delta_closed_code(x_lang, k)
    alphabet = x_lang.alphabet
    spec = EditRelationSpec("delta", k)
    budget = _Budget(candidate_budget, "testing one-word closed extensions")
    for y in _delta_universe(k, alphabet):
        if y in words:
            continue
        closure = closure_star(Language.finite((y,), alphabet), spec)
        candidate = words | closure.words()
        budget.spend()
        if _is_code(candidate, alphabet):
            return MaximalityReport(False, y)
    return MaximalityReport(True, None)


def embed_delta_closed_complete(
    x_lang: Language, k: int, candidate_budget: int = DEFAULT_CANDIDATE_BUDGET
) -> list[Language]:
    """Every complete deletion-closed code containing the input."""
    words = _require_delta_closed_code(x_lang, k)
    alphabet = x_lang.alphabet
    universe = [w for w in _delta_universe(k, alphabet) if w not in words]
    images = {
        w: subsequences(w, len(w) - k) if len(w) > k else frozenset() for w in universe
    }
    budget = _Budget(
        candidate_budget, f"embedding over a universe of {len(universe)} words"
    )
    found: list[Language] = []

    def closed_in(pool: frozenset[str], w: str) -> bool:
        return images[w] <= pool

    def walk(current: frozenset[str], start: int):
        if is_complete(Language.finite(current, alphabet)):
            found.append(Language.finite(current, alphabet))
        for i in range(start, len(universe)):
            w = universe[i]
            if not closed_in(current, w):
                continue
            candidate = current | {w}
            budget.spend()
            if not _is_code(candidate, alphabet):
                continue
            walk(candidate, i + 1)

    walk(words, 0)
    return found


def assert_empty_family(
    spec: EditRelationSpec, x_lang: Language
) -> EmptyFamilyExplanation:
    """Concrete evidence that no code is closed under the relation.

    Starting from any codeword, insertion relations force the word
    pumped one extra copy into the set, which destroys unique
    decipherability; the deletion-bearing families force the empty
    word in, which no code contains.  Every chain step is replayed
    through the relation before the explanation is returned.
    """
    if spec.kind not in _EMPTY_FAMILY_KINDS:
        raise ValueError(
            f"{spec.render()} admits closed codes; no emptiness argument applies"
        )
    fin = x_lang if x_lang.is_finite_repr else x_lang.to_finite()
    if fin is None or not fin.words():
        raise ValueError("a nonempty finite candidate code is required")
    alphabet = x_lang.alphabet
    if not sardinas_patterson(fin).is_code:
        raise ValueError("precondition failed: input is not a code")
    x = min(fin.words(), key=alphabet.lex_key)
    k = spec.k
    if spec.kind in ("iota", "I"):
        chain = [x]
        target = x * (k + 1)
        while chain[-1] != target:
            nxt = chain[-1] + target[len(chain[-1]) : len(chain[-1]) + k]
            chain.append(nxt)
        forced = target
        conflict = DoubleFactorization(forced, (forced,), (x,) * (k + 1))
        reason = (
            f"closure under {spec.render()} forces {forced!r} into the set, "
            f"which then factorizes both as itself and as {k + 1} copies of {x!r}"
        )
    else:
        chain = [x[: len(x) - i] for i in range(len(x) + 1)]
        forced = ""
        conflict = None
        reason = (
            f"closure under {spec.render()} forces the empty word into the set, "
            "and no uniquely decodable set contains it"
        )
    for a, b in zip(chain, chain[1:]):
        if b not in relation_image_word(spec.with_closure("plain"), alphabet, a):
            raise RuntimeError("internal: emptiness chain failed replay")
    return EmptyFamilyExplanation(
        spec=spec,
        seed=x,
        chain=tuple(chain),
        forced=forced,
        conflict=conflict,
        reason=reason,
    )


def sigma_star(w: str, k: int, alphabet: Alphabet) -> SigmaOrbit:
    """Shape of the substitution orbit of a word.

    Short words sit alone.  A binary word of length exactly k pairs
    with its complement, since all k positions must flip at once.
    Longer binary words sweep a parity class when k is even and the
    whole length class when k is odd; three or more letters always
    sweep the whole length class.
    """
    if k < 1:
        raise ValueError("defect count must be at least 1")
    alphabet.check_word(w)
    n = len(w)
    if n < k:
        return SigmaOrbit("singleton", n, alphabet, w)
    if not alphabet.is_binary:
        return SigmaOrbit("full", n, alphabet, w)
    if n == k:
        return SigmaOrbit("pair", n, alphabet, w)
    if k % 2 == 1:
        return SigmaOrbit("full", n, alphabet, w)
    return SigmaOrbit("parity", n, alphabet, w)


def _uniform_length(x_lang: Language) -> int | None:
    """The common codeword length, when one exists."""
    fin = x_lang if x_lang.is_finite_repr else x_lang.to_finite()
    if fin is not None:
        lengths = {len(w) for w in fin.words()}
        return lengths.pop() if len(lengths) == 1 else None
    n = len(shortest_word(x_lang))
    block = Language.finite(x_lang.alphabet.words_of_length(n), x_lang.alphabet)
    return n if is_empty(difference(x_lang, block)) else None


def _materialize_class(
    alphabet: Alphabet, n: int, parity: str | None
) -> frozenset[str]:
    if parity is None:
        return frozenset(alphabet.words_of_length(n))
    return frozenset(
        w for w in alphabet.words_of_length(n) if parity_ones(w, alphabet) == parity
    )


def classify_sigma_closed(
    x_lang: Language, k: int, candidate_budget: int = DEFAULT_CANDIDATE_BUDGET
) -> Classification:
    """Which of the few possible shapes a substitution-closed code has."""
    alphabet = x_lang.alphabet
    spec = EditRelationSpec("sigma", k)
    verdict = sardinas_patterson(x_lang)
    if not verdict.is_code:
        return Classification("not_code", witness=verdict.witness)
    report = is_closed(x_lang, spec)
    if not report.closed:
        return Classification("not_closed", witness=report.witness)
    short = Language.finite(x_lang.alphabet.words_upto(k), alphabet)
    if is_empty(difference(x_lang, short)):
        return Classification("short_subset", n=k)
    n = _uniform_length(x_lang)
    if n is None:
        raise RuntimeError("internal: closed code with mixed lengths above the bound")
    if len(alphabet.letters) ** n > candidate_budget:
        raise BudgetExceededError(
            "length class too large to compare",
            budget=candidate_budget,
            observed=len(alphabet.letters) ** n,
        )
    members = _class_words(x_lang, n)
    if members == _materialize_class(alphabet, n, None):
        return Classification("full", n=n)
    if alphabet.is_binary:
        for name in ("even", "odd"):
            if members == _materialize_class(alphabet, n, name):
                return Classification(name, n=n)
    raise RuntimeError("internal: closed code matches no known shape")


def _class_words(x_lang: Language, n: int) -> frozenset[str]:
    fin = x_lang if x_lang.is_finite_repr else x_lang.to_finite()
    if fin is not None:
        return fin.words()
    return frozenset(words_upto(x_lang, n))


def classify_Sigma_closed(x_lang: Language, k: int) -> Classification:
    """A code closed under defects up to k is a full length class."""
    spec = EditRelationSpec("Sigma", k)
    if is_empty(x_lang):
        raise ValueError("a nonempty set is required")
    verdict = sardinas_patterson(x_lang)
    if not verdict.is_code:
        return Classification("not_code", witness=verdict.witness)
    report = is_closed(x_lang, spec)
    if not report.closed:
        return Classification("not_closed", witness=report.witness)
    n = _uniform_length(x_lang)
    if n is None:
        raise RuntimeError("internal: closed code with mixed lengths")
    members = _class_words(x_lang, n)
    if members != _materialize_class(x_lang.alphabet, n, None):
        raise RuntimeError("internal: closed code is not a full length class")
    return Classification("uniform", n=n)


def sigma_complete_embedding(
    x_lang: Language, k: int, candidate_budget: int = DEFAULT_CANDIDATE_BUDGET
) -> list[Language]:
    """Complete substitution-closed codes containing the input.

    The search space splits on length: within the short window the
    orbit units are enumerated directly, while any longer input can
    only sit inside its full length class.
    """
    alphabet = x_lang.alphabet
    if not sardinas_patterson(x_lang).is_code:
        raise ValueError("precondition failed: input is not a code")
    if is_complete(x_lang):
        raise ValueError("precondition failed: input is already complete")
    fin = x_lang if x_lang.is_finite_repr else x_lang.to_finite()
    short = Language.finite(alphabet.words_upto(k), alphabet)
    if is_empty(difference(x_lang, short)):
        if fin is None:
            raise RuntimeError("internal: short set must be finite")
        return _short_embedding_search(fin.words(), k, alphabet, candidate_budget)
    n = _uniform_length(x_lang)
    if n is None:
        return []
    members = _class_words(x_lang, n)
    if any(len(w) <= k for w in members):
        return []
    return [Language.finite(alphabet.words_of_length(n), alphabet)]


def _short_embedding_search(
    words: frozenset[str], k: int, alphabet: Alphabet, candidate_budget: int
) -> list[Language]:
    units: list[frozenset[str]] = []
    covered: set[str] = set()
    for w in sort_words(alphabet.words_upto(k), alphabet):
        if w in covered or not w:
            continue
        orbit = sigma_star(w, k, alphabet).materialize()
        units.append(orbit)
        covered |= orbit
    forced_units = [unit for unit in units if unit & words]
    forced = frozenset().union(*forced_units) if forced_units else frozenset()
    budget = _Budget(candidate_budget, "searching short closed embeddings")
    budget.spend()
    if not _is_code(forced, alphabet):
        return []
    free = [unit for unit in units if not unit & words]
    found: list[Language] = []

    def walk(current: frozenset[str], start: int):
        if current and is_complete(Language.finite(current, alphabet)):
            found.append(Language.finite(current, alphabet))
        for i in range(start, len(free)):
            candidate = current | free[i]
            budget.spend()
            if not _is_code(candidate, alphabet):
                continue
            walk(candidate, i + 1)

    walk(forced, 0)
    return found


__all__ = [
    "DEFAULT_CANDIDATE_BUDGET",
    "ClosednessReport",
    "MaximalityReport",
    "EmptyFamilyExplanation",
    "SigmaOrbit",
    "Classification",
    "is_closed",
    "closure_star",
    "delta_length_bound",
    "enumerate_delta_closed",
    "is_maximal_delta_closed",
    "embed_delta_closed_complete",
    "assert_empty_family",
    "sigma_star",
    "classify_sigma_closed",
    "classify_Sigma_closed",
    "sigma_complete_embedding",
]
