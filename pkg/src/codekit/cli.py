"""Command-line front end.

Every subcommand reads a language (inline expression or @file), runs
one decision procedure or construction, and reports the verdict with a
replayable witness when the answer is negative.  Exit codes separate
the verdict channel from the error channel: 0 holds or constructed,
1 fails, 2 undecidable here, 3 bad usage or input, 4 budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import channel as channel_mod
from . import closed as closed_mod
from . import independence as indep_mod
from .analysis import (
    Distribution,
    DoubleFactorization,
    find_non_factor,
    is_bifix_code,
    is_complete,
    is_maximal_code,
    is_prefix_code,
    is_suffix_code,
    measure_partial,
    sardinas_patterson,
    verify_double_factorization,
)
from .automata import (
    Language,
    compile_expression,
    difference,
    factors,
    intersect,
    left_quotient,
    reverse,
    right_quotient_word,
    shortest_word,
    star,
    truncate,
    union,
    words_upto,
)
from .errors import BudgetExceededError, ParseError, UnsupportedError
from .transducers import EditRelationSpec, relation_image, relation_image_word
from .words import Alphabet, format_word, parse_alphabet, parse_word

MEMBER_SAMPLE_LIMIT = 1024


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(3, f"{self.prog}: error: {message}\n")


def _add_format(p):
    p.add_argument(
        "--format", choices=("text", "json"), default="text", help="report style"
    )


def _add_language(p):
    p.add_argument("language", help="expression, or @file with an alphabet header")
    p.add_argument("--alphabet", help="alphabet letters, e.g. ab")
    p.add_argument(
        "--max-word-len",
        type=int,
        default=None,
        help="truncate the language to words up to this length",
    )


def _add_rel(p):
    p.add_argument(
        "--rel", required=True, help="edit relation, e.g. delta:1 or Lambda:2"
    )


def _add_verify(p):
    p.add_argument(
        "--verify-witness",
        action="store_true",
        help="replay any reported witness through an independent check",
    )


def build_parser() -> _Parser:
    parser = _Parser(prog="codekit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text, language=True, rel=False, verify=False):
        p = sub.add_parser(name, help=help_text)
        if language:
            _add_language(p)
        if rel:
            _add_rel(p)
        if verify:
            _add_verify(p)
        _add_format(p)
        return p

    add("code", "unique decipherability", verify=True)
    add("prefix", "no codeword is a proper prefix of another", verify=True)
    add("suffix", "no codeword is a proper suffix of another", verify=True)
    add("bifix", "prefix and suffix at once", verify=True)

    p = add("measure", "probability mass of the language up to a length")
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--probs", help="letter weights, e.g. a=1/2,b=1/2")

    add("complete", "every word occurs inside some message", verify=True)
    add("maximal", "no strictly larger code exists", verify=True)
    add("independent", "the relation maps no codeword onto another", rel=True, verify=True)
    add("errcorrect", "distinct codewords never corrupt alike", rel=True, verify=True)

    p = add("image-code", "code-ness of the relation's image", rel=True, verify=True)
    p.add_argument(
        "--closure", choices=("hat", "bar"), default="bar", help="image variant"
    )

    add("extend", "a word enlarging a non-complete independent code", rel=True)

    p = add("er-complete", "embed a non-complete code into a complete one")
    p.add_argument("--sample-len", type=int, default=6)

    add("closed", "the relation never leaves the set", rel=True, verify=True)

    p = add("sigma-star", "substitution orbit of a word", language=False)
    p.add_argument("word")
    p.add_argument("--alphabet", required=True)
    p.add_argument("--k", type=int, required=True)

    p = add("classify-closed", "shape of a substitution-closed code", rel=True, verify=True)
    p.add_argument("--budget", type=int, default=None, help="candidate evaluation cap")

    p = add("enum-delta-closed", "all deletion-closed codes", language=False)
    p.add_argument("--alphabet", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("--budget", type=int, default=None, help="candidate evaluation cap")

    p = add("embed-closed", "complete closed codes containing the input", rel=True)
    p.add_argument("--budget", type=int, default=None, help="candidate evaluation cap")

    p = add("simulate", "noisy block transmission", language=False, rel=True)
    p.add_argument("--code", required=True, dest="language")
    p.add_argument("--alphabet")
    p.add_argument("--max-word-len", type=int, default=None)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--len", type=int, required=True, dest="message_length")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=1)

    return parser


# --- input loading ----------------------------------------------------------

def _load_language(args) -> Language:
    text = args.language
    if text.startswith("@"):
        lang = _read_language_file(text[1:], getattr(args, "alphabet", None))
    else:
        if not getattr(args, "alphabet", None):
            raise ParseError("--alphabet is required for inline expressions")
        alphabet = parse_alphabet(args.alphabet)
        lang = compile_expression(text, alphabet)
    limit = getattr(args, "max_word_len", None)
    if limit is not None:
        lang = truncate(lang, limit)
    return lang


def _read_language_file(path: str, declared: str | None) -> Language:
    try:
        with open(path, encoding="utf-8") as handle:
            raw = handle.read()
    except OSError as e:
        raise ParseError(f"cannot read language file: {e}") from None
    lines = [ln.strip() for ln in raw.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines or not lines[0].startswith("alphabet:"):
        raise ParseError("language file must start with 'alphabet: <letters>'")
    alphabet = parse_alphabet(lines[0].split(":", 1)[1].strip())
    if declared and tuple(declared) != alphabet.letters:
        raise ParseError("--alphabet disagrees with the language file header")
    exprs = lines[1:]
    if not exprs:
        raise ParseError("language file declares no expressions")
    lang = compile_expression(exprs[0], alphabet)
    for expr in exprs[1:]:
        lang = union(lang, compile_expression(expr, alphabet))
    return lang


def _parse_probs(alphabet: Alphabet, text: str | None) -> Distribution:
    if text is None:
        return Distribution.uniform(alphabet)
    probs = {}
    for part in text.split(","):
        if "=" not in part:
            raise ParseError(f"bad weight entry {part!r}")
        letter, value = part.split("=", 1)
        letter = letter.strip()
        if letter not in alphabet:
            raise ParseError(f"unknown letter {letter!r} in weights")
        try:
            probs[letter] = Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise ParseError(f"bad weight {value!r}: {e}") from None
    return Distribution(alphabet, tuple(probs.get(c, Fraction(0)) for c in alphabet))


# --- rendering --------------------------------------------------------------

def _fact(seq) -> str:
    return "".join(f"({format_word(x)})" for x in seq)


def _render_double(w: DoubleFactorization) -> str:
    return f"{format_word(w.word)} = {_fact(w.left)} = {_fact(w.right)}"


def _render_value(value):
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (list, tuple)):
        return " ".join(_render_value(v) for v in value)
    return str(value)


def _emit(payload: dict, fmt: str) -> None:
    if fmt == "json":
        def default(value):
            if isinstance(value, Fraction):
                return str(value)
            if isinstance(value, (frozenset, set)):
                return sorted(value)
            if isinstance(value, tuple):
                return list(value)
            return str(value)

        print(json.dumps(payload, sort_keys=True, default=default))
        return
    for key, value in payload.items():
        if isinstance(value, list) and value and isinstance(value[0], list):
            print(f"{key}:")
            for item in value:
                print(f"  {_render_value(item)}")
        else:
            print(f"{key}: {_render_value(value)}")


# --- witnesses for the affix and completeness checks ------------------------

def _prefix_pair(lang: Language):
    """Some codeword and a longer codeword it starts."""
    tails = left_quotient(lang, lang, exclude_epsilon=True)
    u = shortest_word(tails)
    holders = intersect(lang, right_quotient_word(lang, u))
    x = shortest_word(holders)
    return x, x + u


def _suffix_pair(lang: Language):
    rx, ry = _prefix_pair(reverse(lang))
    return rx[::-1], ry[::-1]


# --- subcommands ------------------------------------------------------------

def _cmd_code(args):
    lang = _load_language(args)
    verdict = sardinas_patterson(lang)
    if verdict.is_code:
        return 0, {"property": "code", "verdict": "holds"}
    payload = {
        "property": "code",
        "verdict": "fails",
        "witness": _render_double(verdict.witness),
    }
    if args.verify_witness:
        if not verify_double_factorization(verdict.witness, lang):
            raise RuntimeError("internal: witness failed replay")
        payload["witness_check"] = "verified"
    return 1, payload


def _affix(args, name, decide, pair):
    lang = _load_language(args)
    if decide(lang):
        return 0, {"property": name, "verdict": "holds"}
    x, y = pair(lang)
    payload = {
        "property": name,
        "verdict": "fails",
        "witness": f"{format_word(x)} begins or ends {format_word(y)}",
    }
    if args.verify_witness:
        ok = lang.member(x) and lang.member(y) and x != y
        ok = ok and (y.startswith(x) or y.endswith(x))
        if not ok:
            raise RuntimeError("internal: witness failed replay")
        payload["witness_check"] = "verified"
    return 1, payload


def _cmd_prefix(args):
    return _affix(args, "prefix-code", is_prefix_code, _prefix_pair)


def _cmd_suffix(args):
    return _affix(args, "suffix-code", is_suffix_code, _suffix_pair)


def _cmd_bifix(args):
    def pair(lang):
        if not is_prefix_code(lang):
            return _prefix_pair(lang)
        return _suffix_pair(lang)

    return _affix(args, "bifix-code", is_bifix_code, pair)


def _cmd_measure(args):
    lang = _load_language(args)
    dist = _parse_probs(lang.alphabet, args.probs)
    value = measure_partial(lang, dist, args.max_len)
    return 0, {
        "measure": value,
        "max_len": args.max_len,
        "decimal": f"{float(value):.6f}",
    }


def _cmd_complete(args):
    lang = _load_language(args)
    if is_complete(lang):
        return 0, {"property": "complete", "verdict": "holds"}
    w = find_non_factor(lang)
    payload = {
        "property": "complete",
        "verdict": "fails",
        "witness": format_word(w),
        "detail": "no message contains this word as a factor",
    }
    if args.verify_witness:
        if factors(star(lang)).member(w):
            raise RuntimeError("internal: witness failed replay")
        payload["witness_check"] = "verified"
    return 1, payload


def _cmd_maximal(args):
    lang = _load_language(args)
    if is_maximal_code(lang):
        return 0, {"property": "maximal-code", "verdict": "holds"}
    w = find_non_factor(lang)
    payload = {
        "property": "maximal-code",
        "verdict": "fails",
        "witness": format_word(w),
        "detail": "adjoining this word keeps the set a code",
    }
    if args.verify_witness:
        extended = union(lang, Language.finite((w,), lang.alphabet))
        if not sardinas_patterson(extended).is_code:
            raise RuntimeError("internal: witness failed replay")
        payload["witness_check"] = "verified"
    return 1, payload


def _cmd_independent(args):
    lang = _load_language(args)
    spec = EditRelationSpec.parse(args.rel)
    report = indep_mod.is_independent(lang, spec)
    if report.independent:
        return 0, {"property": "independent", "relation": spec.render(), "verdict": "holds"}
    x, y = report.witness
    payload = {
        "property": "independent",
        "relation": spec.render(),
        "verdict": "fails",
        "witness": f"{format_word(x)} maps onto {format_word(y)}",
    }
    if args.verify_witness:
        bar = spec.with_closure("antireflexive")
        ok = lang.member(x) and lang.member(y)
        ok = ok and y in relation_image_word(bar, lang.alphabet, x)
        if not ok:
            raise RuntimeError("internal: witness failed replay")
        payload["witness_check"] = "verified"
    return 1, payload


def _cmd_errcorrect(args):
    lang = _load_language(args)
    spec = EditRelationSpec.parse(args.rel)
    report = indep_mod.is_error_correcting(lang, spec)
    if report.correcting:
        return 0, {
            "property": "error-correcting",
            "relation": spec.render(),
            "verdict": "holds",
        }
    x, y, common = report.witness
    payload = {
        "property": "error-correcting",
        "relation": spec.render(),
        "verdict": "fails",
        "witness": (
            f"{format_word(x)} and {format_word(y)} both corrupt to "
            f"{format_word(common)}"
        ),
    }
    if args.verify_witness:
        ok = common in relation_image_word(spec, lang.alphabet, x)
        ok = ok and common in relation_image_word(spec, lang.alphabet, y)
        if not ok:
            raise RuntimeError("internal: witness failed replay")
        payload["witness_check"] = "verified"
    return 1, payload


def _cmd_image_code(args):
    lang = _load_language(args)
    spec = EditRelationSpec.parse(args.rel)
    if args.closure == "hat":
        verdict = indep_mod.hat_image_is_code(lang, spec)
        closure = "reflexive"
    else:
        verdict = indep_mod.underline_image_is_code(lang, spec)
        closure = "antireflexive"
    name = f"image-code[{args.closure}]"
    if verdict.is_code:
        return 0, {"property": name, "relation": spec.render(), "verdict": "holds"}
    payload = {
        "property": name,
        "relation": spec.render(),
        "verdict": "fails",
        "witness": _render_double(verdict.witness),
    }
    if args.verify_witness:
        img = relation_image(spec.with_closure(closure), lang.alphabet, lang)
        if not verify_double_factorization(verdict.witness, img):
            raise RuntimeError("internal: witness failed replay")
        payload["witness_check"] = "verified"
    return 1, payload


def _cmd_extend(args):
    lang = _load_language(args)
    spec = EditRelationSpec.parse(args.rel)
    w = indep_mod.witness_independent_extension(lang, spec)
    return 0, {"relation": spec.render(), "word": format_word(w)}


def _cmd_er_complete(args):
    lang = _load_language(args)
    completed = indep_mod.er_complete(lang)
    added = shortest_word(difference(completed, lang))
    sample = [
        format_word(w)
        for w in sorted(words_upto(completed, args.sample_len), key=lang.alphabet.lex_key)
    ]
    return 0, {
        "added": format_word(added),
        "sample_len": args.sample_len,
        "sample": sample,
    }


def _cmd_closed(args):
    lang = _load_language(args)
    spec = EditRelationSpec.parse(args.rel)
    report = closed_mod.is_closed(lang, spec)
    if report.closed:
        return 0, {"property": "closed", "relation": spec.render(), "verdict": "holds"}
    x, y = report.witness
    payload = {
        "property": "closed",
        "relation": spec.render(),
        "verdict": "fails",
        "witness": f"{format_word(x)} maps outside, onto {format_word(y)}",
    }
    if args.verify_witness:
        plain = spec.with_closure("plain")
        ok = lang.member(x) and not lang.member(y)
        ok = ok and y in relation_image_word(plain, lang.alphabet, x)
        if not ok:
            raise RuntimeError("internal: witness failed replay")
        payload["witness_check"] = "verified"
    return 1, payload


def _cmd_sigma_star(args):
    alphabet = parse_alphabet(args.alphabet)
    word = parse_word(args.word, alphabet)
    orbit = closed_mod.sigma_star(word, args.k, alphabet)
    payload = {
        "word": format_word(word),
        "k": args.k,
        "shape": orbit.shape,
        "cardinality": orbit.cardinality(),
    }
    if orbit.cardinality() <= MEMBER_SAMPLE_LIMIT:
        payload["members"] = sorted(orbit.materialize(), key=alphabet.lex_key)
    return 0, payload


def _cmd_classify_closed(args):
    lang = _load_language(args)
    spec = EditRelationSpec.parse(args.rel)
    budget = {"candidate_budget": args.budget} if args.budget is not None else {}
    if spec.kind == "sigma":
        result = closed_mod.classify_sigma_closed(lang, spec.k, **budget)
    elif spec.kind == "Sigma":
        result = closed_mod.classify_Sigma_closed(lang, spec.k)
    else:
        raise ParseError("classification applies to sigma:k or Sigma:k")
    payload = {"relation": spec.render(), "class": result.kind}
    if result.n is not None:
        payload["n"] = result.n
    if result.kind in ("not_code", "not_closed"):
        if result.kind == "not_code":
            payload["witness"] = _render_double(result.witness)
            if args.verify_witness:
                if not verify_double_factorization(result.witness, lang):
                    raise RuntimeError("internal: witness failed replay")
                payload["witness_check"] = "verified"
        else:
            x, y = result.witness
            payload["witness"] = (
                f"{format_word(x)} maps outside, onto {format_word(y)}"
            )
            if args.verify_witness:
                base = EditRelationSpec(spec.kind, spec.k)
                ok = lang.member(x) and not lang.member(y)
                ok = ok and y in relation_image_word(base, lang.alphabet, x)
                if not ok:
                    raise RuntimeError("internal: witness failed replay")
                payload["witness_check"] = "verified"
        return 1, payload
    return 0, payload


def _cmd_enum_delta_closed(args):
    alphabet = parse_alphabet(args.alphabet)
    budget = {"candidate_budget": args.budget} if args.budget is not None else {}
    codes = []
    for lang in closed_mod.enumerate_delta_closed(
        args.k, alphabet, limit=args.limit, **budget
    ):
        codes.append(sorted(lang.words(), key=alphabet.lex_key))
    return 0, {"k": args.k, "count": len(codes), "codes": codes}


def _cmd_embed_closed(args):
    lang = _load_language(args)
    spec = EditRelationSpec.parse(args.rel)
    budget = {"candidate_budget": args.budget} if args.budget is not None else {}
    if spec.kind == "delta":
        results = closed_mod.embed_delta_closed_complete(lang, spec.k, **budget)
    elif spec.kind == "sigma":
        results = closed_mod.sigma_complete_embedding(lang, spec.k, **budget)
    else:
        raise ParseError("embedding applies to delta:k or sigma:k")
    alphabet = lang.alphabet
    rendered = [sorted(r.words(), key=alphabet.lex_key) for r in results]
    payload = {"relation": spec.render(), "count": len(rendered), "codes": rendered}
    return (0 if rendered else 1), payload


def _cmd_simulate(args):
    lang = _load_language(args)
    spec = EditRelationSpec.parse(args.rel)
    config = channel_mod.ExperimentConfig(
        code=lang,
        spec=spec,
        p=args.p,
        message_length=args.message_length,
        trials=args.trials,
        seed=args.seed,
    )
    report = channel_mod.run_experiment(config)
    payload = {
        "relation": spec.render(),
        "p": args.p,
        "seed": report.config_seed,
        "trials": report.trials,
        "blocks": report.blocks,
        "corrupted": report.corrupted,
        "exact": report.exact,
        "corrected": report.corrected,
        "ambiguous": report.ambiguous,
        "detected": report.detected,
        "miscorrected": report.miscorrected,
        "restored_messages": report.restored_messages,
        "correction_rate": report.correction_rate,
        "ambiguity_rate": report.ambiguity_rate,
        "detection_rate": report.detection_rate,
    }
    return 0, payload


_HANDLERS = {
    "code": _cmd_code,
    "prefix": _cmd_prefix,
    "suffix": _cmd_suffix,
    "bifix": _cmd_bifix,
    "measure": _cmd_measure,
    "complete": _cmd_complete,
    "maximal": _cmd_maximal,
    "independent": _cmd_independent,
    "errcorrect": _cmd_errcorrect,
    "image-code": _cmd_image_code,
    "extend": _cmd_extend,
    "er-complete": _cmd_er_complete,
    "closed": _cmd_closed,
    "sigma-star": _cmd_sigma_star,
    "classify-closed": _cmd_classify_closed,
    "enum-delta-closed": _cmd_enum_delta_closed,
    "embed-closed": _cmd_embed_closed,
    "simulate": _cmd_simulate,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    fmt = getattr(args, "format", "text")
    try:
        code, payload = _HANDLERS[args.command](args)
    except ParseError as e:
        print(f"codekit: parse error: {e}", file=sys.stderr)
        return 3
    except UnsupportedError as e:
        _emit(
            {"verdict": "unsupported", "question": e.question, "detail": str(e)}, fmt
        )
        return 2
    except BudgetExceededError as e:
        _emit({"verdict": "budget-exceeded", "detail": str(e)}, fmt)
        return 4
    except ValueError as e:
        print(f"codekit: error: {e}", file=sys.stderr)
        return 3
    _emit(payload, fmt)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
