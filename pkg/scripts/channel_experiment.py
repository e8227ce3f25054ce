"""Sweep the corruption probability for one code and print exact rates.

Example:
    python3 scripts/channel_experiment.py --code "aabbb|bbbbaa" --rel Delta:2
    python3 scripts/channel_experiment.py --code "aaaa|aaab|abb|bab" --rel delta:1
"""

from __future__ import annotations

import argparse

from codekit.analysis import sardinas_patterson
from codekit.automata import compile_expression
from codekit.channel import ExperimentConfig, run_experiment
from codekit.independence import check_constraints
from codekit.transducers import EditRelationSpec
from codekit.words import parse_alphabet


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--code", default="aabbb|bbbbaa", help="code expression")
    parser.add_argument("--alphabet", default="ab")
    parser.add_argument("--rel", default="Delta:2", help="edit relation kind:k")
    parser.add_argument("--len", type=int, default=50, dest="message_length")
    parser.add_argument("--trials", type=int, default=20)
    parser.add_argument("--seed", type=int, default=99)
    parser.add_argument(
        "--probs",
        default="0,0.25,0.5,0.75,1",
        help="comma-separated corruption probabilities",
    )
    args = parser.parse_args()

    alphabet = parse_alphabet(args.alphabet)
    code = compile_expression(args.code, alphabet)
    spec = EditRelationSpec.parse(args.rel)

    print(f"code: {args.code}   relation: {spec.render()}")
    print(f"is a code: {sardinas_patterson(code).is_code}")
    status = check_constraints(code, spec)
    print(f"independent: {status.independent.status}")
    print(f"error-correcting: {status.error_correcting.status}")
    print()

    header = (
        f"{'p':>6} {'blocks':>7} {'corrupt':>8} {'exact':>6} {'corrected':>10} "
        f"{'ambiguous':>10} {'detected':>9} {'corr-rate':>10} {'det-rate':>9}"
    )
    print(header)
    for text in args.probs.split(","):
        p = float(text)
        config = ExperimentConfig(
            code=code,
            spec=spec,
            p=p,
            message_length=args.message_length,
            trials=args.trials,
            seed=args.seed,
        )
        report = run_experiment(config)
        print(
            f"{p:>6.2f} {report.blocks:>7} {report.corrupted:>8} "
            f"{report.exact:>6} {report.corrected:>10} {report.ambiguous:>10} "
            f"{report.detected:>9} {str(report.correction_rate):>10} "
            f"{str(report.detection_rate):>9}"
        )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
