"""Nonconforming immersed finite element studies."""

from ._ifelab import (
    HypothesisViolation,
    NoConvergence,
    classify_counts,
    jump_residual,
    run_study,
)

__all__ = [
    "HypothesisViolation",
    "NoConvergence",
    "classify_counts",
    "jump_residual",
    "run_study",
]
