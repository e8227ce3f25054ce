"""Finite automata and the regular-language toolkit built on them.

A :class:`Language` is either a finite set of words or a regular set
carried by an NFA.  Every regular language can produce its canonical
DFA (minimal, states numbered by breadth-first discovery in letter
order); two languages are equal iff their canonical tables coincide,
which also makes canonical DFAs usable as dictionary keys.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import BudgetExceededError, ParseError
from .words import Alphabet, EPS_TOKEN

EPS = ""

DEFAULT_STATE_CAP = 1 << 16


class Nfa:
    """Nondeterministic automaton with epsilon moves.

    arcs[state] maps a label (a letter, or "" for epsilon) to a set of
    successor states.  Multiple initial states are allowed.
    """

    __slots__ = ("alphabet", "n", "initial", "accepting", "arcs")

    def __init__(self, alphabet: Alphabet, n: int, initial, accepting, arcs):
        self.alphabet = alphabet
        self.n = n
        self.initial = frozenset(initial)
        self.accepting = frozenset(accepting)
        self.arcs = arcs

    def successors(self, state: int, label: str) -> frozenset:
        return self.arcs.get(state, {}).get(label, frozenset())

    def eps_closure(self, states) -> frozenset:
        seen = set(states)
        stack = list(states)
        while stack:
            q = stack.pop()
            for r in self.successors(q, EPS):
                if r not in seen:
                    seen.add(r)
                    stack.append(r)
        return frozenset(seen)

    def step(self, states, letter: str) -> frozenset:
        out = set()
        for q in states:
            out |= self.successors(q, letter)
        return self.eps_closure(out)

    def accepts(self, w: str) -> bool:
        cur = self.eps_closure(self.initial)
        for c in w:
            cur = self.step(cur, c)
            if not cur:
                return False
        return bool(cur & self.accepting)

    def core_states(self) -> frozenset:
        """States lying on at least one accepting path."""
        fwd = set(self.initial)
        stack = list(fwd)
        while stack:
            q = stack.pop()
            for label, dsts in self.arcs.get(q, {}).items():
                for r in dsts:
                    if r not in fwd:
                        fwd.add(r)
                        stack.append(r)
        back = {}
        for q, by_label in self.arcs.items():
            for label, dsts in by_label.items():
                for r in dsts:
                    back.setdefault(r, set()).add(q)
        bwd = set(self.accepting)
        stack = list(bwd)
        while stack:
            q = stack.pop()
            for r in back.get(q, ()):
                if r not in bwd:
                    bwd.add(r)
                    stack.append(r)
        return frozenset(fwd & bwd)


class _NfaBuilder:
    def __init__(self, alphabet: Alphabet):
        self.alphabet = alphabet
        self.n = 0
        self.initial = set()
        self.accepting = set()
        self.arcs: dict[int, dict[str, set[int]]] = {}

    def state(self) -> int:
        s = self.n
        self.n += 1
        return s

    def arc(self, src: int, label: str, dst: int):
        self.arcs.setdefault(src, {}).setdefault(label, set()).add(dst)

    def build(self) -> Nfa:
        frozen = {
            s: {lbl: frozenset(d) for lbl, d in by.items()} for s, by in self.arcs.items()
        }
        return Nfa(self.alphabet, self.n, self.initial, self.accepting, frozen)


def nfa_from_words(words, alphabet: Alphabet) -> Nfa:
    """Trie-shaped NFA for a finite set of words."""
    b = _NfaBuilder(alphabet)
    root = b.state()
    b.initial.add(root)
    nodes = {"": root}
    for w in words:
        cur = root
        for i, c in enumerate(w):
            prefix = w[: i + 1]
            nxt = nodes.get(prefix)
            if nxt is None:
                nxt = b.state()
                nodes[prefix] = nxt
                b.arc(cur, c, nxt)
            cur = nxt
        b.accepting.add(cur)
    return b.build()


def _shift(arcs, offset):
    return {
        s + offset: {lbl: frozenset(r + offset for r in dsts) for lbl, dsts in by.items()}
        for s, by in arcs.items()
    }


def nfa_union(a: Nfa, b: Nfa) -> Nfa:
    arcs = {s: dict(by) for s, by in a.arcs.items()}
    arcs.update(_shift(b.arcs, a.n))
    return Nfa(
        a.alphabet,
        a.n + b.n,
        a.initial | {s + a.n for s in b.initial},
        a.accepting | {s + a.n for s in b.accepting},
        arcs,
    )


def nfa_concat(a: Nfa, b: Nfa) -> Nfa:
    arcs = {s: {lbl: set(d) for lbl, d in by.items()} for s, by in a.arcs.items()}
    for s, by in _shift(b.arcs, a.n).items():
        arcs.setdefault(s, {}).update({lbl: set(d) for lbl, d in by.items()})
    for f in a.accepting:
        for i in b.initial:
            arcs.setdefault(f, {}).setdefault(EPS, set()).add(i + a.n)
    frozen = {s: {lbl: frozenset(d) for lbl, d in by.items()} for s, by in arcs.items()}
    return Nfa(a.alphabet, a.n + b.n, a.initial, {s + a.n for s in b.accepting}, frozen)


def nfa_star(a: Nfa) -> Nfa:
    hub = a.n
    arcs = {s: {lbl: set(d) for lbl, d in by.items()} for s, by in a.arcs.items()}
    arcs.setdefault(hub, {}).setdefault(EPS, set()).update(a.initial)
    for f in a.accepting:
        arcs.setdefault(f, {}).setdefault(EPS, set()).add(hub)
    frozen = {s: {lbl: frozenset(d) for lbl, d in by.items()} for s, by in arcs.items()}
    return Nfa(a.alphabet, a.n + 1, frozenset((hub,)), frozenset((hub,)), frozen)


def nfa_universal(alphabet: Alphabet) -> Nfa:
    arcs = {0: {c: frozenset((0,)) for c in alphabet}}
    return Nfa(alphabet, 1, frozenset((0,)), frozenset((0,)), arcs)


@dataclass(frozen=True)
class Dfa:
    """Total deterministic automaton; state 0 is initial.

    rows[q][i] is the successor of q under letter number i.  Canonical
    instances (minimal, breadth-first numbering) serve as the identity
    of the language they accept.
    """

    alphabet: Alphabet
    rows: tuple[tuple[int, ...], ...]
    accepting: frozenset[int]

    def accepts(self, w: str) -> bool:
        q = 0
        idx = self.alphabet.index
        for c in w:
            q = self.rows[q][idx(c)]
        return q in self.accepting

    def run(self, q: int, w: str) -> int:
        idx = self.alphabet.index
        for c in w:
            q = self.rows[q][idx(c)]
        return q

    @property
    def n(self) -> int:
        return len(self.rows)

    def key(self):
        return (self.rows, tuple(sorted(self.accepting)))

    def to_nfa(self) -> Nfa:
        arcs = {
            q: {c: frozenset((self.rows[q][i],)) for i, c in enumerate(self.alphabet)}
            for q in range(self.n)
        }
        return Nfa(self.alphabet, self.n, frozenset((0,)), self.accepting, arcs)


def determinize(nfa: Nfa, state_cap: int = DEFAULT_STATE_CAP) -> Dfa:
    """Subset construction; raises when the cap on DFA states is hit."""
    letters = tuple(nfa.alphabet)
    start = nfa.eps_closure(nfa.initial)
    index = {start: 0}
    order = [start]
    rows = []
    i = 0
    while i < len(order):
        subset = order[i]
        row = []
        for c in letters:
            nxt = nfa.step(subset, c)
            j = index.get(nxt)
            if j is None:
                j = len(order)
                if j >= state_cap:
                    raise BudgetExceededError(
                        f"determinization exceeded {state_cap} states", budget=state_cap
                    )
                index[nxt] = j
                order.append(nxt)
            row.append(j)
        rows.append(tuple(row))
        i += 1
    accepting = frozenset(i for i, s in enumerate(order) if s & nfa.accepting)
    return Dfa(nfa.alphabet, tuple(rows), accepting)


def minimize(dfa: Dfa) -> Dfa:
    """Minimal DFA with canonical breadth-first state numbering."""
    n = dfa.n
    cls = [1 if q in dfa.accepting else 0 for q in range(n)]
    while True:
        sigs = {}
        new_cls = [0] * n
        for q in range(n):
            sig = (cls[q], tuple(cls[r] for r in dfa.rows[q]))
            if sig not in sigs:
                sigs[sig] = len(sigs)
            new_cls[q] = sigs[sig]
        if new_cls == cls:
            break
        cls = new_cls
    # breadth-first renumbering from the initial state's class
    reps = {}
    for q in range(n):
        reps.setdefault(cls[q], q)
    order = [cls[0]]
    number = {cls[0]: 0}
    rows = []
    i = 0
    letters_range = range(len(dfa.alphabet.letters))
    while i < len(order):
        c = order[i]
        rep = reps[c]
        row = []
        for li in letters_range:
            d = cls[dfa.rows[rep][li]]
            if d not in number:
                number[d] = len(order)
                order.append(d)
            row.append(number[d])
        rows.append(tuple(row))
        i += 1
    accepting = frozenset(number[c] for c in order if reps[c] in dfa.accepting)
    return Dfa(dfa.alphabet, tuple(rows), accepting)


class Language:
    """A finite or regular set of words over a fixed alphabet."""

    __slots__ = ("alphabet", "_words", "_nfa", "_dfa")

    def __init__(self, alphabet, words=None, nfa=None):
        self.alphabet = alphabet
        self._words = words
        self._nfa = nfa
        self._dfa = None

    @staticmethod
    def finite(words, alphabet: Alphabet) -> "Language":
        ws = frozenset(words)
        for w in ws:
            alphabet.check_word(w)
        return Language(alphabet, words=ws)

    @staticmethod
    def regular(nfa: Nfa) -> "Language":
        return Language(nfa.alphabet, nfa=nfa)

    @staticmethod
    def from_dfa(dfa: Dfa) -> "Language":
        lang = Language(dfa.alphabet, nfa=dfa.to_nfa())
        lang._dfa = minimize(dfa)
        return lang

    @property
    def is_finite_repr(self) -> bool:
        return self._words is not None

    def words(self) -> frozenset[str]:
        if self._words is None:
            raise ValueError("language is held as an automaton; use to_finite first")
        return self._words

    def nfa(self) -> Nfa:
        if self._nfa is None:
            self._nfa = nfa_from_words(self._words, self.alphabet)
        return self._nfa

    def dfa(self) -> Dfa:
        if self._dfa is None:
            self._dfa = minimize(determinize(self.nfa()))
        return self._dfa

    def key(self):
        if self._words is not None:
            return ("finite", self._words)
        return ("dfa", self.dfa().key())

    def canonical_key(self):
        """Representation-independent identity (canonical DFA table)."""
        return self.dfa().key()

    def member(self, w: str) -> bool:
        if self._words is not None:
            return w in self._words
        if self._dfa is not None:
            return self._dfa.accepts(w)
        return self._nfa.accepts(w)

    def to_finite(self) -> "Language | None":
        """Finite-set form, or None when the language is infinite."""
        if self._words is not None:
            return self
        ws = _dfa_finite_words(self.dfa())
        if ws is None:
            return None
        return Language.finite(ws, self.alphabet)

    def __repr__(self):
        if self._words is not None:
            from .words import format_word, sort_words

            shown = ", ".join(format_word(w) for w in sort_words(self._words, self.alphabet))
            return f"Language{{{shown}}}"
        return f"Language<dfa {self.dfa().n} states>"


def _check_same_alphabet(*langs):
    first = langs[0].alphabet
    for lang in langs[1:]:
        if lang.alphabet.letters != first.letters:
            raise ValueError("alphabet mismatch between languages")
    return first


def union(a: Language, b: Language) -> Language:
    _check_same_alphabet(a, b)
    if a.is_finite_repr and b.is_finite_repr:
        return Language.finite(a.words() | b.words(), a.alphabet)
    return Language.regular(nfa_union(a.nfa(), b.nfa()))


def concat(a: Language, b: Language) -> Language:
    _check_same_alphabet(a, b)
    if a.is_finite_repr and b.is_finite_repr:
        return Language.finite(
            {u + v for u in a.words() for v in b.words()}, a.alphabet
        )
    return Language.regular(nfa_concat(a.nfa(), b.nfa()))


def star(a: Language) -> Language:
    return Language.regular(nfa_star(a.nfa()))


def complement(a: Language, state_cap: int = DEFAULT_STATE_CAP) -> Language:
    dfa = a._dfa if a._dfa is not None else minimize(determinize(a.nfa(), state_cap))
    a._dfa = dfa
    flipped = Dfa(dfa.alphabet, dfa.rows, frozenset(range(dfa.n)) - dfa.accepting)
    return Language.from_dfa(flipped)


def intersect(a: Language, b: Language) -> Language:
    _check_same_alphabet(a, b)
    if a.is_finite_repr and b.is_finite_repr:
        return Language.finite(a.words() & b.words(), a.alphabet)
    if a.is_finite_repr:
        return Language.finite(
            {w for w in a.words() if b.member(w)}, a.alphabet
        )
    if b.is_finite_repr:
        return Language.finite(
            {w for w in b.words() if a.member(w)}, a.alphabet
        )
    da, db = a.dfa(), b.dfa()
    letters_n = len(da.alphabet.letters)
    index = {(0, 0): 0}
    order = [(0, 0)]
    rows = []
    i = 0
    while i < len(order):
        p, q = order[i]
        row = []
        for li in range(letters_n):
            target = (da.rows[p][li], db.rows[q][li])
            j = index.get(target)
            if j is None:
                j = len(order)
                index[target] = j
                order.append(target)
            row.append(j)
        rows.append(tuple(row))
        i += 1
    accepting = frozenset(
        i for i, (p, q) in enumerate(order) if p in da.accepting and q in db.accepting
    )
    return Language.from_dfa(Dfa(da.alphabet, tuple(rows), accepting))


def difference(a: Language, b: Language) -> Language:
    if a.is_finite_repr:
        return Language.finite({w for w in a.words() if not b.member(w)}, a.alphabet)
    return intersect(a, complement(b))


def left_quotient(u_lang: Language, x_lang: Language, exclude_epsilon: bool = False) -> Language:
    """Words w with uw in X for some u in U.

    With exclude_epsilon, the empty word is removed from the result,
    matching the seed set of the code-ness iteration.
    """
    _check_same_alphabet(u_lang, x_lang)
    dx = x_lang.dfa()
    nu = u_lang.nfa()
    # states of X's DFA reachable while U's NFA reads the same word to acceptance
    start_u = nu.eps_closure(nu.initial)
    seen = {(start_u, 0)}
    stack = [(start_u, 0)]
    starts = set()
    while stack:
        su, q = stack.pop()
        if su & nu.accepting:
            starts.add(q)
        for li, c in enumerate(dx.alphabet):
            su2 = nu.step(su, c)
            if not su2:
                continue
            nxt = (su2, dx.rows[q][li])
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    base = dx.to_nfa()
    result = Nfa(base.alphabet, base.n, frozenset(starts), base.accepting, base.arcs)
    out = Language.regular(result)
    if exclude_epsilon:
        out = difference(out, Language.finite({""}, x_lang.alphabet))
    fin = out.to_finite()
    return fin if fin is not None else out


def right_quotient_word(lang: Language, v: str) -> Language:
    """Words u with uv in the language."""
    if lang.is_finite_repr:
        n = len(v)
        if n == 0:
            return lang
        return Language.finite(
            {w[:-n] for w in lang.words() if w.endswith(v)}, lang.alphabet
        )
    dfa = lang.dfa()
    accepting = frozenset(q for q in range(dfa.n) if dfa.run(q, v) in dfa.accepting)
    return Language.from_dfa(Dfa(dfa.alphabet, dfa.rows, accepting))


def factors(lang: Language) -> Language:
    """All factors (contiguous subwords) of members of the language."""
    if lang.is_finite_repr:
        out = set()
        for w in lang.words():
            for i in range(len(w) + 1):
                for j in range(i, len(w) + 1):
                    out.add(w[i:j])
        return Language.finite(out, lang.alphabet)
    nfa = lang.nfa()
    core = nfa.core_states()
    if not core:
        return Language.finite((), lang.alphabet)
    return Language.regular(Nfa(nfa.alphabet, nfa.n, core, core, nfa.arcs))


def is_empty(lang: Language) -> bool:
    if lang.is_finite_repr:
        return not lang.words()
    nfa = lang.nfa()
    return not (nfa.eps_closure(nfa.initial) and nfa.core_states())


def is_universal(lang: Language) -> bool:
    dfa = lang.dfa()
    return all(q in dfa.accepting for q in range(dfa.n))


def shortest_word(lang: Language) -> str | None:
    """Length-lex least member, or None when the language is empty."""
    if lang.is_finite_repr:
        ws = lang.words()
        if not ws:
            return None
        return min(ws, key=lang.alphabet.lex_key)
    dfa = lang.dfa()
    if 0 in dfa.accepting:
        return ""
    seen = {0}
    frontier = [(0, "")]
    while frontier:
        nxt = []
        for q, w in frontier:
            for li, c in enumerate(dfa.alphabet):
                r = dfa.rows[q][li]
                if r in seen:
                    continue
                if r in dfa.accepting:
                    return w + c
                seen.add(r)
                nxt.append((r, w + c))
        frontier = nxt
    return None


def equivalent(a: Language, b: Language) -> bool:
    _check_same_alphabet(a, b)
    if a.is_finite_repr and b.is_finite_repr:
        return a.words() == b.words()
    return a.canonical_key() == b.canonical_key()


def words_upto(lang: Language, max_len: int) -> frozenset[str]:
    """Members of length at most max_len."""
    if lang.is_finite_repr:
        return frozenset(w for w in lang.words() if len(w) <= max_len)
    dfa = lang.dfa()
    out = set()
    frontier = {0: {""}}
    for _ in range(max_len + 1):
        for q, ws in frontier.items():
            if q in dfa.accepting:
                out.update(ws)
        nxt: dict[int, set[str]] = {}
        for q, ws in frontier.items():
            for li, c in enumerate(dfa.alphabet):
                r = dfa.rows[q][li]
                nxt.setdefault(r, set()).update(w + c for w in ws)
        frontier = nxt
    return frozenset(out)


def truncate(lang: Language, max_len: int) -> Language:
    return Language.finite(words_upto(lang, max_len), lang.alphabet)


def reverse(lang: Language) -> Language:
    """Mirror image of every member."""
    if lang.is_finite_repr:
        return Language.finite({w[::-1] for w in lang.words()}, lang.alphabet)
    nfa = lang.nfa()
    arcs: dict[int, dict[str, set[int]]] = {}
    for q, by in nfa.arcs.items():
        for lbl, dsts in by.items():
            for r in dsts:
                arcs.setdefault(r, {}).setdefault(lbl, set()).add(q)
    frozen = {s: {lbl: frozenset(d) for lbl, d in by.items()} for s, by in arcs.items()}
    return Language.regular(
        Nfa(nfa.alphabet, nfa.n, nfa.accepting, nfa.initial, frozen)
    )


def _dfa_finite_words(dfa: Dfa) -> frozenset[str] | None:
    """Enumerate the language of a DFA, or None when it is infinite."""
    # co-reachable: states from which acceptance is reachable
    back: dict[int, set[int]] = {}
    for q in range(dfa.n):
        for r in dfa.rows[q]:
            back.setdefault(r, set()).add(q)
    stack = list(dfa.accepting)
    co = set(dfa.accepting)
    while stack:
        q = stack.pop()
        for r in back.get(q, ()):
            if r not in co:
                co.add(r)
                stack.append(r)
    reach = {0}
    stack = [0]
    while stack:
        q = stack.pop()
        for r in dfa.rows[q]:
            if r not in reach:
                reach.add(r)
                stack.append(r)
    live = reach & co
    if not live:
        return frozenset()
    # cycle within live states means infinitely many words
    color = {}
    for root in live:
        if root in color:
            continue
        stack = [(root, iter(dfa.rows[root]))]
        color[root] = 1
        while stack:
            q, it = stack[-1]
            advanced = False
            for r in it:
                if r not in live:
                    continue
                c = color.get(r)
                if c == 1:
                    return None
                if c is None:
                    color[r] = 1
                    stack.append((r, iter(dfa.rows[r])))
                    advanced = True
                    break
            if not advanced:
                color[q] = 2
                stack.pop()
    # topological accumulation of prefixes along the acyclic live part
    order = []
    indeg = {q: 0 for q in live}
    for q in live:
        for r in dfa.rows[q]:
            if r in live:
                indeg[r] += 1
    ready = [q for q in live if indeg[q] == 0]
    while ready:
        q = ready.pop()
        order.append(q)
        for r in dfa.rows[q]:
            if r in live:
                indeg[r] -= 1
                if indeg[r] == 0:
                    ready.append(r)
    prefixes: dict[int, set[str]] = {q: set() for q in live}
    if 0 in live:
        prefixes[0].add("")
    out = set()
    for q in order:
        ws = prefixes[q]
        if not ws:
            continue
        if q in dfa.accepting:
            out.update(ws)
        for li, c in enumerate(dfa.alphabet):
            r = dfa.rows[q][li]
            if r in live:
                prefixes[r].update(w + c for w in ws)
    return frozenset(out)


# --- expression parsing -------------------------------------------------

class _ExprParser:
    """Recursive descent for:  expr := term ("|" term)*
                               term := factor ("." factor)*
                               factor := atom "*"*
                               atom := word | eps | "(" expr ")"
    """

    def __init__(self, text: str, alphabet: Alphabet):
        self.text = text
        self.alphabet = alphabet
        self.pos = 0
        # `eps` stays a keyword unless every one of e, p, s is a letter
        self.eps_enabled = not all(c in alphabet for c in "eps")

    def _skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self._skip_ws()
        if self.pos >= len(self.text):
            return None
        return self.text[self.pos]

    def parse(self):
        node = self.expr()
        self._skip_ws()
        if self.pos != len(self.text):
            raise ParseError(
                f"unexpected character {self.text[self.pos]!r}", position=self.pos
            )
        return node

    def expr(self):
        parts = [self.term()]
        while self.peek() == "|":
            self.pos += 1
            parts.append(self.term())
        return ("union", parts) if len(parts) > 1 else parts[0]

    def term(self):
        parts = [self.factor()]
        while self.peek() == ".":
            self.pos += 1
            parts.append(self.factor())
        return ("concat", parts) if len(parts) > 1 else parts[0]

    def factor(self):
        node = self.atom()
        while self.peek() == "*":
            self.pos += 1
            node = ("star", node)
        return node

    def atom(self):
        c = self.peek()
        if c is None:
            raise ParseError("unexpected end of expression", position=self.pos)
        if c == "(":
            self.pos += 1
            node = self.expr()
            if self.peek() != ")":
                raise ParseError("missing closing parenthesis", position=self.pos)
            self.pos += 1
            return node
        if self.eps_enabled and self.text.startswith(EPS_TOKEN, self.pos):
            self.pos += len(EPS_TOKEN)
            return ("word", "")
        if c in self.alphabet:
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos] in self.alphabet:
                self.pos += 1
            return ("word", self.text[start : self.pos])
        raise ParseError(f"unexpected character {c!r}", position=self.pos)


def compile_expression(text: str, alphabet: Alphabet) -> Language:
    """Compile an expression to a Language.

    Star-free expressions come back in finite-set form; anything under a
    star is carried as an automaton.
    """
    tree = _ExprParser(text, alphabet).parse()

    def eval_node(node) -> Language:
        tag = node[0]
        if tag == "word":
            return Language.finite((node[1],), alphabet)
        if tag == "union":
            parts = [eval_node(p) for p in node[1]]
            out = parts[0]
            for p in parts[1:]:
                out = union(out, p)
            return out
        if tag == "concat":
            parts = [eval_node(p) for p in node[1]]
            out = parts[0]
            for p in parts[1:]:
                out = concat(out, p)
            return out
        if tag == "star":
            return star(eval_node(node[1]))
        raise AssertionError(node)

    return eval_node(tree)
