"""Words over a finite ordered alphabet.

Words are plain Python strings whose characters all belong to an
:class:`Alphabet`.  The empty word is ``""`` and is rendered as ``eps``
in textual output.  All orderings used by the package are length-lex:
shorter words first, ties broken by the declared letter order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import BudgetExceededError, ParseError

EPS_TOKEN = "eps"


@dataclass(frozen=True)
class Alphabet:
    """An ordered set of single-character letters.

    The declaration order is significant: it fixes the length-lex order
    and therefore every witness and tie-break the package produces.
    """

    letters: tuple[str, ...]

    def __post_init__(self):
        if isinstance(self.letters, str):
            object.__setattr__(self, "letters", tuple(self.letters))
        else:
            object.__setattr__(self, "letters", tuple(self.letters))
        if len(self.letters) < 2:
            raise ValueError("alphabet needs at least two letters")
        if len(set(self.letters)) != len(self.letters):
            raise ValueError("alphabet letters must be distinct")
        for c in self.letters:
            if len(c) != 1:
                raise ValueError(f"letters are single characters, got {c!r}")

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __contains__(self, c):
        return c in self.letters

    def index(self, c: str) -> int:
        try:
            return self.letters.index(c)
        except ValueError:
            raise ValueError(f"letter {c!r} not in alphabet {''.join(self.letters)}") from None

    def check_word(self, w: str) -> str:
        for c in w:
            if c not in self.letters:
                raise ValueError(f"letter {c!r} not in alphabet {''.join(self.letters)}")
        return w

    def lex_key(self, w: str):
        """Sort key realizing the length-lex order."""
        idx = self.letters.index
        return (len(w), tuple(idx(c) for c in w))

    def words_of_length(self, n: int):
        """Yield every word of length n in lex order."""
        for tup in itertools.product(self.letters, repeat=n):
            yield "".join(tup)

    def words_upto(self, n: int):
        """Yield every word of length at most n in length-lex order."""
        for length in range(n + 1):
            yield from self.words_of_length(length)

    @property
    def is_binary(self) -> bool:
        return len(self.letters) == 2


def format_word(w: str) -> str:
    return w if w else EPS_TOKEN


def parse_word(text: str, alphabet: Alphabet) -> str:
    text = text.strip()
    if text == EPS_TOKEN:
        return ""
    return alphabet.check_word(text)


def parse_alphabet(text: str) -> Alphabet:
    text = text.strip()
    if not text:
        raise ParseError("empty alphabet declaration")
    return Alphabet(tuple(text))


def subsequences(w: str, m: int) -> frozenset[str]:
    """All scattered subwords of w having length exactly m.

    Built positionally with one set per target length, so duplicated
    letters collapse instead of multiplying the work.
    """
    n = len(w)
    if m < 0 or m > n:
        return frozenset()
    if m == n:
        return frozenset((w,))
    # sets[j] holds the length-j subsequences of the prefix scanned so far
    sets: list[set[str]] = [set() for _ in range(m + 1)]
    sets[0].add("")
    for c in w:
        for j in range(min(m, len(sets)) - 1, -1, -1):
            if sets[j]:
                sets[j + 1].update(s + c for s in sets[j])
    return frozenset(sets[m])


def hamming(u: str, v: str) -> int | None:
    """Positions where u and v differ, or None when lengths differ."""
    if len(u) != len(v):
        return None
    return sum(1 for a, b in zip(u, v) if a != b)


def levenshtein(u: str, v: str) -> int:
    """Minimum number of single-letter insertions, deletions and
    substitutions turning u into v."""
    if len(u) < len(v):
        u, v = v, u
    prev = list(range(len(v) + 1))
    for i, a in enumerate(u, start=1):
        cur = [i]
        for j, b in enumerate(v, start=1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a != b)))
        prev = cur
    return prev[len(v)]


def _lcs_length(u: str, v: str) -> int:
    if len(u) < len(v):
        u, v = v, u
    prev = [0] * (len(v) + 1)
    for a in u:
        cur = [0]
        for j, b in enumerate(v, start=1):
            cur.append(prev[j - 1] + 1 if a == b else max(prev[j], cur[j - 1]))
        prev = cur
    return prev[len(v)]


def indel_distance(u: str, v: str) -> int:
    """Minimum number of insertions and deletions only (no substitutions)
    turning u into v; equals |u| + |v| - 2 * lcs(u, v)."""
    return len(u) + len(v) - 2 * _lcs_length(u, v)


def is_unbordered(w: str) -> bool:
    """True when no proper nonempty prefix of w is also a suffix.

    Unbordered words overlap no shifted copy of themselves, which is the
    property the completion constructions rely on.
    """
    if not w:
        raise ValueError("borders are undefined for the empty word")
    return all(w[:k] != w[-k:] for k in range(1, len(w)))


def unbordered_extension(w: str, alphabet: Alphabet) -> str:
    """Shortest u (ties by letter order) such that w + u is unbordered.

    The search never needs to look beyond |u| = |w| + 2; hitting that cap
    means the input was malformed, so it raises rather than loop on.
    """
    if not w:
        raise ValueError("borders are undefined for the empty word")
    alphabet.check_word(w)
    cap = len(w) + 2
    for u in alphabet.words_upto(cap):
        if is_unbordered(w + u):
            return u
    raise BudgetExceededError(
        f"no unbordered extension of {w!r} within length {cap}", budget=cap
    )


def _require_binary(alphabet: Alphabet):
    if not alphabet.is_binary:
        raise ValueError("operation requires a binary alphabet")


def xor_add(u: str, v: str, alphabet: Alphabet) -> str:
    """Letterwise sum over a binary alphabet read as GF(2)."""
    _require_binary(alphabet)
    if len(u) != len(v):
        raise ValueError("xor_add needs words of equal length")
    zero, one = alphabet.letters
    out = []
    for a, b in zip(u, v):
        alphabet.index(a), alphabet.index(b)
        out.append(one if (a != b) else zero)
    return "".join(out)


def complement_word(w: str, alphabet: Alphabet) -> str:
    """Flip every letter of a binary word."""
    _require_binary(alphabet)
    zero, one = alphabet.letters
    alphabet.check_word(w)
    return "".join(one if c == zero else zero for c in w)


def parity_ones(w: str, alphabet: Alphabet) -> str:
    """Parity ("even" or "odd") of the number of second-letter occurrences."""
    _require_binary(alphabet)
    alphabet.check_word(w)
    ones = sum(1 for c in w if c == alphabet.letters[1])
    return "even" if ones % 2 == 0 else "odd"


def sort_words(words, alphabet: Alphabet) -> list[str]:
    """Sort an iterable of words in length-lex order."""
    return sorted(words, key=alphabet.lex_key)
