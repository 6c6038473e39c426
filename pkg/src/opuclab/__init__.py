"""Paraorthogonal polynomials on the unit circle: zeros, kernels and clocks."""
__version__ = "0.1.0"

from .coeffs import VerblunskySequence, load_sequence, save_sequence
from .errors import (BracketingError, CertificationError, OpucError, OracleUnavailable,
                     SparseBuildError, ValidationError, VerificationError)
from .kernel import Grid, RescaledPair, cd_kernel, default_grid, lebesgue_ratio, sine_kernel
from .popuc import (BetaRule, ParaPolySpec, ZeroLabeling, clock_statistic, cmv_zero_oracle,
                    find_zeros, label_zeros, local_zeros, para_eval)
from .recurrence import PolyState, TransferMatrix, evaluate, transfer

__all__ = [
    "BetaRule", "BracketingError", "CertificationError", "Grid", "OpucError",
    "OracleUnavailable", "ParaPolySpec", "PolyState", "RescaledPair", "SparseBuildError",
    "TransferMatrix", "ValidationError", "VerblunskySequence", "VerificationError",
    "ZeroLabeling", "cd_kernel", "clock_statistic", "cmv_zero_oracle", "default_grid",
    "evaluate", "find_zeros", "label_zeros", "lebesgue_ratio", "load_sequence",
    "local_zeros", "para_eval", "save_sequence", "sine_kernel", "transfer",
]
