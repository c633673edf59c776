"""Quantitative group testing from sparse graphs and binary codes.

Tests report exact defective counts per group.  A design places each of N
items in ell groups; each group runs s = t*b + 1 structured tests whose
integer sums pinpoint up to t defectives at a time.  Decoding peels resolved
groups until the whole support is recovered.  See the demos directory for
worked tours of the pieces.
"""

from .bch import BchSpec, DecodeFailure, build_parity_columns, decode_syndrome, make_bch
from .codec import (
    DEFAULT_BETA,
    DecodeOutcome,
    DesignParams,
    Signature,
    build_signature,
    decode,
    derive_params,
    encode,
    load_support,
    load_test_vector,
    measurement_matrix,
    save_dense_matrix,
    save_support,
    save_test_vector,
)
from .density import (
    DESIGN_TABLE,
    DeConfig,
    DeResult,
    c_of_t,
    de_fixed_point,
    de_step,
    design_constant,
    lambda_threshold,
    tests_needed,
)
from .gf2m import GF2m, make_field
from .graphs import BiRegularGraph, sample_graph
from .simulate import SweepPoint, TrialConfig, groups_within_budget, run_sweep, run_trial, sweep_csv

__version__ = "0.1.0"

__all__ = [
    "BchSpec",
    "BiRegularGraph",
    "DEFAULT_BETA",
    "DESIGN_TABLE",
    "DeConfig",
    "DeResult",
    "DecodeFailure",
    "DecodeOutcome",
    "DesignParams",
    "GF2m",
    "Signature",
    "SweepPoint",
    "TrialConfig",
    "build_parity_columns",
    "build_signature",
    "c_of_t",
    "de_fixed_point",
    "de_step",
    "decode",
    "decode_syndrome",
    "derive_params",
    "design_constant",
    "encode",
    "groups_within_budget",
    "lambda_threshold",
    "load_support",
    "load_test_vector",
    "make_bch",
    "make_field",
    "measurement_matrix",
    "run_sweep",
    "run_trial",
    "sample_graph",
    "save_dense_matrix",
    "save_support",
    "save_test_vector",
    "sweep_csv",
    "tests_needed",
    "__version__",
]
