"""Decision procedures and constructions for variable-length codes.

The package answers classic questions about a set of words (is it a
code, is it complete, is it maximal) and their robustness variants
under edit relations (independence, error correction, closedness),
and ships a block channel simulator plus a command line front end.
"""

from .analysis import (
    CodeVerdict,
    Distribution,
    DoubleFactorization,
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
from .automata import Language, compile_expression
from .channel import (
    ExperimentConfig,
    ExperimentReport,
    corrupt,
    decode,
    encode,
    run_experiment,
)
from .closed import (
    Classification,
    ClosednessReport,
    MaximalityReport,
    SigmaOrbit,
    assert_empty_family,
    classify_Sigma_closed,
    classify_sigma_closed,
    closure_star,
    delta_length_bound,
    embed_delta_closed_complete,
    enumerate_delta_closed,
    is_closed,
    is_maximal_delta_closed,
    sigma_complete_embedding,
    sigma_star,
)
from .errors import (
    BudgetExceededError,
    CodekitError,
    ParseError,
    UnsupportedError,
)
from .independence import (
    ErrorCorrectionReport,
    IndependenceReport,
    check_constraints,
    er_complete,
    hat_image_is_code,
    is_error_correcting,
    is_independent,
    is_maximal_independent,
    underline_image_is_code,
    witness_independent_extension,
)
from .transducers import EditRelationSpec, relation_image, relation_image_word
from .words import Alphabet, format_word, parse_alphabet, parse_word

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "BudgetExceededError",
    "Classification",
    "ClosednessReport",
    "CodeVerdict",
    "CodekitError",
    "Distribution",
    "DoubleFactorization",
    "EditRelationSpec",
    "ErrorCorrectionReport",
    "ExperimentConfig",
    "ExperimentReport",
    "IndependenceReport",
    "Language",
    "MaximalityReport",
    "ParseError",
    "SigmaOrbit",
    "UnsupportedError",
    "assert_empty_family",
    "check_constraints",
    "classify_Sigma_closed",
    "classify_sigma_closed",
    "closure_star",
    "compile_expression",
    "corrupt",
    "decode",
    "delta_length_bound",
    "embed_delta_closed_complete",
    "encode",
    "enumerate_delta_closed",
    "er_complete",
    "find_non_factor",
    "format_word",
    "hat_image_is_code",
    "is_bifix_code",
    "is_closed",
    "is_complete",
    "is_error_correcting",
    "is_independent",
    "is_maximal_code",
    "is_maximal_delta_closed",
    "is_maximal_independent",
    "is_prefix_code",
    "is_suffix_code",
    "measure_finite",
    "measure_partial",
    "parse_alphabet",
    "parse_word",
    "relation_image",
    "relation_image_word",
    "run_experiment",
    "sardinas_patterson",
    "sigma_complete_embedding",
    "sigma_star",
    "verify_double_factorization",
    "witness_independent_extension",
]
