"""Transducers realizing the edit relations.

Machines are in normal form: each arc reads a letter or epsilon and
writes a letter or epsilon, never epsilon on both sides.  The basic
one-defect machines have two states joined by a single defect arc
(deletion a:eps, insertion eps:a, or substitution a:b); relations with
k defects chain k copies, and the cumulative families accept after any
positive number of defects.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .automata import EPS, Language, Nfa, union as lang_union
from .errors import ParseError
from .words import Alphabet

KINDS = ("delta", "iota", "sigma", "Delta", "I", "Sigma", "S", "Lambda")
CLOSURES = ("plain", "reflexive", "antireflexive")

_CLOSURE_SUFFIX = {"reflexive": "hat", "antireflexive": "bar"}
_SUFFIX_CLOSURE = {"hat": "reflexive", "bar": "antireflexive"}


@dataclass(frozen=True)
class EditRelationSpec:
    """Which edit relation: kind, defect count k, and closure flavour."""

    kind: str
    k: int
    closure: str = "plain"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ParseError(f"unknown relation kind {self.kind!r}")
        if self.k < 1:
            raise ParseError("relation parameter k must be at least 1")
        if self.closure not in CLOSURES:
            raise ParseError(f"unknown closure {self.closure!r}")

    @staticmethod
    def parse(text: str) -> "EditRelationSpec":
        parts = text.strip().split(":")
        if len(parts) not in (2, 3):
            raise ParseError(f"relation spec {text!r} is not kind:k[:hat|bar]")
        kind = parts[0]
        try:
            k = int(parts[1])
        except ValueError:
            raise ParseError(f"relation parameter {parts[1]!r} is not an integer") from None
        closure = "plain"
        if len(parts) == 3:
            if parts[2] not in _SUFFIX_CLOSURE:
                raise ParseError(f"closure suffix {parts[2]!r} is not hat or bar")
            closure = _SUFFIX_CLOSURE[parts[2]]
        return EditRelationSpec(kind, k, closure)

    def render(self) -> str:
        base = f"{self.kind}:{self.k}"
        if self.closure == "plain":
            return base
        return f"{base}:{_CLOSURE_SUFFIX[self.closure]}"

    def with_closure(self, closure: str) -> "EditRelationSpec":
        return EditRelationSpec(self.kind, self.k, closure)

    @property
    def is_antireflexive_already(self) -> bool:
        """True when the plain relation never relates a word to itself."""
        if self.kind in ("S", "Lambda"):
            return self.k == 1
        return True


def inverse_spec(spec: EditRelationSpec) -> EditRelationSpec:
    swap = {"delta": "iota", "iota": "delta", "Delta": "I", "I": "Delta"}
    return EditRelationSpec(swap.get(spec.kind, spec.kind), spec.k, spec.closure)


@dataclass(frozen=True)
class Transducer:
    """Normal-form transducer; arcs are (src, read, write, dst)."""

    alphabet: Alphabet
    n: int
    initial: frozenset[int]
    accepting: frozenset[int]
    arcs: tuple[tuple[int, str, str, int], ...]

    def __post_init__(self):
        for src, x, y, dst in self.arcs:
            if x == EPS and y == EPS:
                raise ValueError("normal form forbids eps:eps arcs")

    def arcs_by_state(self) -> dict[int, list[tuple[str, str, int]]]:
        out: dict[int, list[tuple[str, str, int]]] = {}
        for src, x, y, dst in self.arcs:
            out.setdefault(src, []).append((x, y, dst))
        return out


def identity_transducer(alphabet: Alphabet) -> Transducer:
    arcs = tuple((0, c, c, 0) for c in alphabet)
    return Transducer(alphabet, 1, frozenset((0,)), frozenset((0,)), arcs)


def basic(kind: str, alphabet: Alphabet) -> Transducer:
    """One-defect two-state machine for delta, iota or sigma."""
    if kind not in ("delta", "iota", "sigma"):
        raise ValueError(f"no basic machine for {kind!r}")
    arcs = [(q, c, c, q) for q in (0, 1) for c in alphabet]
    if kind == "delta":
        arcs += [(0, c, EPS, 1) for c in alphabet]
    elif kind == "iota":
        arcs += [(0, EPS, c, 1) for c in alphabet]
    else:
        arcs += [(0, a, b, 1) for a in alphabet for b in alphabet if a != b]
    return Transducer(alphabet, 2, frozenset((0,)), frozenset((1,)), tuple(arcs))


_DEFECTS = {
    "delta": ("del",),
    "iota": ("ins",),
    "sigma": ("sub",),
    "Delta": ("del",),
    "I": ("ins",),
    "Sigma": ("sub",),
    "S": ("del", "ins"),
    "Lambda": ("del", "ins", "sub"),
}

_CUMULATIVE = {"Delta", "I", "Sigma", "S", "Lambda"}


@lru_cache(maxsize=None)
def build(spec: EditRelationSpec, alphabet: Alphabet) -> Transducer:
    """Chain machine for the requested relation.

    States 0..k count defects so far, with identity loops everywhere.
    The cumulative families accept at every positive count.  For S and
    Lambda with k >= 2 an isolated accepting start state is added: it
    contributes the pair (eps, eps), which the relation contains (one
    insertion undone by one deletion) but which no one-pass chain can
    produce from empty input.
    """
    if spec.closure == "antireflexive":
        raise ValueError("antireflexive closure is applied downstream, not in machines")
    k = spec.k
    defects = _DEFECTS[spec.kind]
    arcs = [(j, c, c, j) for j in range(k + 1) for c in alphabet]
    for j in range(k):
        if "del" in defects:
            arcs += [(j, c, EPS, j + 1) for c in alphabet]
        if "ins" in defects:
            arcs += [(j, EPS, c, j + 1) for c in alphabet]
        if "sub" in defects:
            arcs += [(j, a, b, j + 1) for a in alphabet for b in alphabet if a != b]
    if spec.kind in _CUMULATIVE:
        accepting = set(range(1, k + 1))
    else:
        accepting = {k}
    initial = {0}
    n = k + 1
    if spec.kind in ("S", "Lambda") and k >= 2:
        silent = n
        n += 1
        initial.add(silent)
        accepting.add(silent)
    if spec.closure == "reflexive":
        accepting.add(0)
    return Transducer(alphabet, n, frozenset(initial), frozenset(accepting), tuple(arcs))


def inverse(t: Transducer) -> Transducer:
    arcs = tuple((src, y, x, dst) for src, x, y, dst in t.arcs)
    return Transducer(t.alphabet, t.n, t.initial, t.accepting, arcs)


def t_union(a: Transducer, b: Transducer) -> Transducer:
    arcs = list(a.arcs) + [(s + a.n, x, y, d + a.n) for s, x, y, d in b.arcs]
    return Transducer(
        a.alphabet,
        a.n + b.n,
        a.initial | {s + a.n for s in b.initial},
        a.accepting | {s + a.n for s in b.accepting},
        tuple(arcs),
    )


def reflexive_closure(t: Transducer) -> Transducer:
    return t_union(t, identity_transducer(t.alphabet))


def compose(s: Transducer, t: Transducer) -> Transducer:
    """Relational composition: first s, then t.

    Matching s-output against t-input can create silent eps:eps moves;
    they are eliminated by closure so the result stays in normal form.
    """
    s_by = s.arcs_by_state()
    t_by = t.arcs_by_state()
    index: dict[tuple[int, int], int] = {}
    order: list[tuple[int, int]] = []

    def node(pq):
        i = index.get(pq)
        if i is None:
            i = len(order)
            index[pq] = i
            order.append(pq)
        return i

    for p in sorted(s.initial):
        for q in sorted(t.initial):
            node((p, q))
    arcs = []
    silent: dict[int, set[int]] = {}
    i = 0
    while i < len(order):
        p, q = order[i]
        for x, y, p2 in s_by.get(p, ()):
            if y == EPS:
                arcs.append((i, x, EPS, node((p2, q))))
            else:
                for ty, tz, q2 in t_by.get(q, ()):
                    if ty == y:
                        j = node((p2, q2))
                        if x == EPS and tz == EPS:
                            silent.setdefault(i, set()).add(j)
                        else:
                            arcs.append((i, x, tz, j))
        for ty, tz, q2 in t_by.get(q, ()):
            if ty == EPS:
                arcs.append((i, EPS, tz, node((p, q2))))
        i += 1

    def silent_closure(start):
        seen = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for v in silent.get(u, ()):
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        return seen

    n = len(order)
    closures = {u: silent_closure(u) for u in range(n)}
    accepting_raw = {
        i for i, (p, q) in enumerate(order) if p in s.accepting and q in t.accepting
    }
    by_src: dict[int, list[tuple[str, str, int]]] = {}
    for src, x, y, dst in arcs:
        by_src.setdefault(src, []).append((x, y, dst))
    final_arcs = set()
    for u in range(n):
        for v in closures[u]:
            for x, y, dst in by_src.get(v, ()):
                final_arcs.add((u, x, y, dst))
    accepting = frozenset(u for u in range(n) if closures[u] & accepting_raw)
    initial = frozenset(
        index[(p, q)] for p in s.initial for q in t.initial if (p, q) in index
    )
    return Transducer(s.alphabet, n, initial, accepting, tuple(sorted(final_arcs)))


def image(t: Transducer, lang: Language) -> Language:
    """Apply the relation to every member of the language.

    The result of a finite input is returned in finite-set form
    whenever it is finite.
    """
    nfa = lang.nfa()
    t_by = t.arcs_by_state()
    index: dict[tuple[int, int], int] = {}
    order: list[tuple[int, int]] = []

    def node(pq):
        i = index.get(pq)
        if i is None:
            i = len(order)
            index[pq] = i
            order.append(pq)
        return i

    for p in sorted(nfa.initial):
        for q in sorted(t.initial):
            node((p, q))
    arcs: dict[int, dict[str, set[int]]] = {}

    def arc(src, lbl, dst):
        arcs.setdefault(src, {}).setdefault(lbl, set()).add(dst)

    i = 0
    while i < len(order):
        p, q = order[i]
        for p2 in nfa.successors(p, EPS):
            arc(i, EPS, node((p2, q)))
        for x, y, q2 in t_by.get(q, ()):
            if x == EPS:
                arc(i, y, node((p, q2)))
            else:
                for p2 in nfa.successors(p, x):
                    arc(i, y, node((p2, q2)))
        i += 1
    accepting = frozenset(
        i for i, (p, q) in enumerate(order) if p in nfa.accepting and q in t.accepting
    )
    initial = frozenset(
        index[(p, q)] for p in nfa.initial for q in t.initial
    )
    frozen = {s: {lbl: frozenset(d) for lbl, d in by.items()} for s, by in arcs.items()}
    out = Language.regular(Nfa(nfa.alphabet, len(order), initial, accepting, frozen))
    if lang.is_finite_repr:
        fin = out.to_finite()
        if fin is not None:
            return fin
    return out


def image_word(t: Transducer, w: str) -> frozenset[str]:
    """Image of a single word; raises if it is not finite.

    Runs a topological sweep over the product of the word's positions
    with the machine; the generic automaton route is the fallback when
    the product has cycles.
    """
    t.alphabet.check_word(w)
    t_by = t.arcs_by_state()
    n = len(w)
    index: dict[tuple[int, int], int] = {}
    order: list[tuple[int, int]] = []

    def node(pq):
        i = index.get(pq)
        if i is None:
            i = len(order)
            index[pq] = i
            order.append(pq)
        return i

    for q in sorted(t.initial):
        node((0, q))
    arcs: list[list[tuple[str, int]]] = []
    i = 0
    while i < len(order):
        pos, q = order[i]
        out = []
        for x, y, q2 in t_by.get(q, ()):
            if x == EPS:
                out.append((y, node((pos, q2))))
            elif pos < n and w[pos] == x:
                out.append((y, node((pos + 1, q2))))
        arcs.append(out)
        i += 1
    total = len(order)
    indeg = [0] * total
    for out in arcs:
        for _, j in out:
            indeg[j] += 1
    ready = [i for i in range(total) if indeg[i] == 0]
    topo = []
    while ready:
        u = ready.pop()
        topo.append(u)
        for _, j in arcs[u]:
            indeg[j] -= 1
            if indeg[j] == 0:
                ready.append(j)
    if len(topo) != total:
        # cyclic product: go through the full language machinery
        lang = image(t, Language.finite((w,), t.alphabet))
        fin = lang.to_finite()
        if fin is None:
            raise ValueError(f"image of {w!r} is infinite")
        return fin.words()
    prefixes: list[set[str]] = [set() for _ in range(total)]
    for q in sorted(t.initial):
        prefixes[index[(0, q)]].add("")
    result: set[str] = set()
    accepting = {
        i for i, (pos, q) in enumerate(order) if pos == n and q in t.accepting
    }
    for u in topo:
        ws = prefixes[u]
        if not ws:
            continue
        if u in accepting:
            result.update(ws)
        for lbl, j in arcs[u]:
            if lbl == EPS:
                prefixes[j].update(ws)
            else:
                prefixes[j].update(s + lbl for s in ws)
    return frozenset(result)


def relation_image_word(spec: EditRelationSpec, alphabet: Alphabet, w: str) -> frozenset[str]:
    """Image of one word under the relation with its closure applied."""
    t = build(spec.with_closure("plain"), alphabet)
    base = image_word(t, w)
    if spec.closure == "reflexive":
        return base | {w}
    if spec.closure == "antireflexive":
        return base - {w}
    return base


def relation_image(spec: EditRelationSpec, alphabet: Alphabet, lang: Language) -> Language:
    """Image of a language, honouring the closure flavour.

    The antireflexive restriction of S_k and Lambda_k with k >= 2 is
    only expressible pointwise, so it needs a finite input.
    """
    plain = spec.with_closure("plain")
    if spec.closure == "plain":
        return image(build(plain, alphabet), lang)
    if spec.closure == "reflexive":
        return lang_union(lang, image(build(plain, alphabet), lang))
    if spec.is_antireflexive_already:
        return image(build(plain, alphabet), lang)
    fin = lang if lang.is_finite_repr else lang.to_finite()
    if fin is None:
        raise ValueError(
            f"antireflexive image under {spec.render()} needs a finite language"
        )
    out: set[str] = set()
    for x in fin.words():
        out |= relation_image_word(spec, alphabet, x)
    return Language.finite(out, alphabet)
