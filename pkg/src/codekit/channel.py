"""Block transmission through an edit channel.

Messages are encoded as sequences of codewords.  Each block passes
through the channel independently and is corrupted, with a configured
probability, into a word related to it by the channel relation.  The
decoder sees one block at a time and never has to resynchronize, so
every outcome is a per-block verdict: delivered exactly, corrected to
the unique candidate, flagged with several candidates, or flagged with
none.
"""

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass
from fractions import Fraction

from .analysis import sardinas_patterson
from .automata import Language
from .independence import is_independent
from .transducers import EditRelationSpec, relation_image_word
from .words import sort_words


@dataclass(frozen=True)
class Block:
    sent: str
    received: str

    @property
    def corrupted(self) -> bool:
        return self.sent != self.received


@dataclass(frozen=True)
class BlockOutcome:
    received: str
    kind: str  # exact | corrected | ambiguous | detected
    decoded: str | None
    candidates: tuple[str, ...]


@dataclass(frozen=True)
class DecodeReport:
    outcomes: tuple[BlockOutcome, ...]
    exact: int
    corrected: int
    ambiguous: int
    detected: int


@dataclass(frozen=True)
class ExperimentConfig:
    code: Language
    spec: EditRelationSpec
    p: float
    message_length: int
    trials: int
    seed: int

    def __post_init__(self):
        if not 0 <= self.p <= 1:
            raise ValueError("corruption probability must lie in [0, 1]")
        if self.message_length < 1:
            raise ValueError("message length must be positive")
        if self.trials < 1:
            raise ValueError("trial count must be positive")


@dataclass(frozen=True)
class ExperimentReport:
    config_seed: int
    trials: int
    blocks: int
    corrupted: int
    exact: int
    corrected: int
    ambiguous: int
    detected: int
    miscorrected: int
    restored_messages: int

    @property
    def correction_rate(self) -> Fraction:
        """Corrupted blocks decoded back to the word actually sent."""
        if self.corrupted == 0:
            return Fraction(1)
        return Fraction(self.corrected - self.miscorrected, self.corrupted)

    @property
    def ambiguity_rate(self) -> Fraction:
        if self.corrupted == 0:
            return Fraction(0)
        return Fraction(self.ambiguous, self.corrupted)

    @property
    def detection_rate(self) -> Fraction:
        """Corrupted blocks that did not slip through as clean codewords."""
        if self.corrupted == 0:
            return Fraction(1)
        slipped = self.corrupted - self.ambiguous - self.detected - self.corrected
        return Fraction(self.corrupted - slipped, self.corrupted)

    @property
    def exact_rate(self) -> Fraction:
        if self.blocks == 0:
            return Fraction(1)
        return Fraction(self.exact, self.blocks)


def _codewords(x_lang: Language) -> list[str]:
    fin = x_lang if x_lang.is_finite_repr else x_lang.to_finite()
    if fin is None:
        raise ValueError(
            "an infinite code cannot drive the simulator; truncate it first"
        )
    return sort_words(fin.words(), x_lang.alphabet)


def encode(message: list[int], x_lang: Language) -> list[str]:
    """Map symbol indices to codewords in canonical order."""
    codewords = _codewords(x_lang)
    blocks = []
    for index in message:
        if not 0 <= index < len(codewords):
            raise ValueError(
                f"symbol {index} outside the code of size {len(codewords)}"
            )
        blocks.append(codewords[index])
    return blocks


def corrupt(
    blocks: list[str],
    spec: EditRelationSpec,
    alphabet,
    p: float,
    seed: int,
) -> list[Block]:
    """Independently corrupt each block inside the channel relation.

    A hit replaces the block by a uniform draw from its antireflexive
    image; blocks whose image is empty pass through untouched.  The
    draw sequence is fully determined by the seed.
    """
    rng = random.Random(seed)
    bar = spec.with_closure("antireflexive")
    out = []
    for sent in blocks:
        received = sent
        if rng.random() < p:
            choices = sort_words(
                relation_image_word(bar, alphabet, sent), alphabet
            )
            if choices:
                received = choices[rng.randrange(len(choices))]
        out.append(Block(sent, received))
    return out


def decode(
    received: list[str], x_lang: Language, spec: EditRelationSpec
) -> DecodeReport:
    """Per-block decoding under the reflexive channel relation.

    A received word inside the code is delivered as is.  Anything else
    is matched against the codewords whose image contains it: exactly
    one match corrects the block, several leave it ambiguous, none
    leaves it merely detected.
    """
    alphabet = x_lang.alphabet
    codewords = _codewords(x_lang)
    members = frozenset(codewords)
    if not sardinas_patterson(x_lang).is_code:
        warnings.warn("decoding over a set that is not a code", stacklevel=2)
    elif not is_independent(x_lang, spec).independent:
        warnings.warn(
            f"decoding over a code that is not independent under {spec.render()}",
            stacklevel=2,
        )
    images = {
        x: relation_image_word(spec.with_closure("plain"), alphabet, x)
        for x in codewords
    }
    outcomes = []
    counts = {"exact": 0, "corrected": 0, "ambiguous": 0, "detected": 0}
    for r in received:
        if r in members:
            outcomes.append(BlockOutcome(r, "exact", r, (r,)))
            counts["exact"] += 1
            continue
        candidates = tuple(x for x in codewords if r in images[x])
        if len(candidates) == 1:
            outcomes.append(BlockOutcome(r, "corrected", candidates[0], candidates))
            counts["corrected"] += 1
        elif candidates:
            outcomes.append(BlockOutcome(r, "ambiguous", None, candidates))
            counts["ambiguous"] += 1
        else:
            outcomes.append(BlockOutcome(r, "detected", None, ()))
            counts["detected"] += 1
    return DecodeReport(outcomes=tuple(outcomes), **counts)


def run_experiment(config: ExperimentConfig) -> ExperimentReport:
    """Repeated random transmissions with per-seed reproducibility."""
    codewords = _codewords(config.code)
    if not codewords:
        raise ValueError("cannot transmit over an empty code")
    master = random.Random(config.seed)
    trial_seeds = [master.getrandbits(64) for _ in range(config.trials)]
    totals = {
        "blocks": 0,
        "corrupted": 0,
        "exact": 0,
        "corrected": 0,
        "ambiguous": 0,
        "detected": 0,
        "miscorrected": 0,
        "restored_messages": 0,
    }
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for trial_seed in trial_seeds:
            rng = random.Random(trial_seed)
            message = [
                rng.randrange(len(codewords)) for _ in range(config.message_length)
            ]
            sent = encode(message, config.code)
            blocks = corrupt(
                sent,
                config.spec,
                config.code.alphabet,
                config.p,
                rng.getrandbits(64),
            )
            report = decode([b.received for b in blocks], config.code, config.spec)
            totals["blocks"] += len(blocks)
            totals["corrupted"] += sum(1 for b in blocks if b.corrupted)
            totals["exact"] += report.exact
            totals["corrected"] += report.corrected
            totals["ambiguous"] += report.ambiguous
            totals["detected"] += report.detected
            restored = True
            for block, outcome in zip(blocks, report.outcomes):
                if outcome.kind == "corrected" and outcome.decoded != block.sent:
                    totals["miscorrected"] += 1
                if outcome.decoded != block.sent:
                    restored = False
            if restored:
                totals["restored_messages"] += 1
    return ExperimentReport(config_seed=config.seed, trials=config.trials, **totals)


__all__ = [
    "Block",
    "BlockOutcome",
    "DecodeReport",
    "ExperimentConfig",
    "ExperimentReport",
    "encode",
    "corrupt",
    "decode",
    "run_experiment",
]
