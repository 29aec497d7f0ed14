"""Exact finite-field Reed-Solomon codec laboratory."""

from .gf import GF2m, CountingField
from .rscode import (CodeSpec, ErrorPattern, encode, is_codeword,
                     apply_errors, random_errors, hamming_weight,
                     hamming_distance)
from .keyeq import (SyndromeSet, compute_syndromes, chien_search, forney,
                    formal_derivative, key_equation_residual, DecodeOutcome,
                    FailureReason)
from .pgz import pgz_decode, fpgz_decode, bp_solve_values
from .bm import bm_decode, bm_run, bm_run_inversionless, bm_omega
from .parallel import ppgz_decode, pbm_decode, CostLedger, cost_report
from .harness import TrialConfig, run_trials, decode_with, brute_force_oracle_decode

__all__ = [
    "GF2m", "CountingField", "CodeSpec", "ErrorPattern", "encode",
    "is_codeword", "apply_errors", "random_errors", "hamming_weight",
    "hamming_distance", "SyndromeSet", "compute_syndromes", "chien_search",
    "forney", "formal_derivative", "key_equation_residual", "DecodeOutcome",
    "FailureReason", "pgz_decode", "fpgz_decode", "bp_solve_values",
    "bm_decode", "bm_run", "bm_run_inversionless", "bm_omega", "ppgz_decode",
    "pbm_decode", "CostLedger", "cost_report", "TrialConfig", "run_trials",
    "decode_with", "brute_force_oracle_decode",
]

__version__ = "0.1.0"
