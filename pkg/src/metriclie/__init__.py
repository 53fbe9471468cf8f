"""Exact rational metric Lie algebras: structure, invariance and the isotropic reduction chain."""
from .catalog import FamilySpec, generate, solve_invariant_forms
from .errors import MetricLieError
from .lie import LieAlgebra, center, is_nilpotent, is_solvable, nilradical
from .linalg import Matrix, jordan_chevalley, minimal_polynomial
from .metric import (MetricLieAlgebra, SkewPairingModule, analyze_skew_pairing, is_invariant,
                     j0, metric_radical, nil_invariance_check, signature, witt_index)
from .reduction import complete_reduction, double_extension, reduce_once
from .subspace import Subspace

__all__ = [
    "FamilySpec", "LieAlgebra", "Matrix", "MetricLieAlgebra", "MetricLieError",
    "SkewPairingModule", "Subspace", "analyze_skew_pairing", "center", "complete_reduction",
    "double_extension", "generate", "is_invariant", "is_nilpotent", "is_solvable", "j0",
    "jordan_chevalley", "metric_radical", "minimal_polynomial", "nil_invariance_check",
    "nilradical", "reduce_once", "signature", "solve_invariant_forms", "witt_index",
]
__version__ = "0.1.0"
