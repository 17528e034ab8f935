"""High-precision and certified tree entropies of hypercubic and bcc lattices."""
import logging

from .asymptotic import best_truncation, h_asymptotic
from .besselcheck import AccuracyNotReached, QuadratureConfig, h_bessel, i0
from .intervals import CertifiedInterval, Rigor
from .kirchhoff import GridGraph, TreeCount, convergence_report, entropy_estimate, tree_count
from .seriesbounds import (
    EntropyResult,
    Family,
    LatticeSpec,
    TailMethod,
    compute_entropy,
    estimate_tail,
    partial_sum,
    tail_upper,
    upper_bound_h,
)
from .walkcounts import ReturnCountTable, build_counts, p1_return, p_return
from .zeta import hurwitz_zeta_estimate, hurwitz_zeta_lower, hurwitz_zeta_upper

__version__ = "0.1.0"

logging.getLogger(__name__).addHandler(logging.NullHandler())

__all__ = [
    "AccuracyNotReached",
    "CertifiedInterval",
    "EntropyResult",
    "Family",
    "GridGraph",
    "LatticeSpec",
    "QuadratureConfig",
    "ReturnCountTable",
    "Rigor",
    "TailMethod",
    "TreeCount",
    "best_truncation",
    "build_counts",
    "compute_entropy",
    "convergence_report",
    "entropy_estimate",
    "estimate_tail",
    "h_asymptotic",
    "h_bessel",
    "hurwitz_zeta_estimate",
    "hurwitz_zeta_lower",
    "hurwitz_zeta_upper",
    "i0",
    "p1_return",
    "p_return",
    "partial_sum",
    "tail_upper",
    "tree_count",
    "upper_bound_h",
]
