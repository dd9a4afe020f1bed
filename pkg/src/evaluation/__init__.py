"""Validation protocols, sweeps and reports."""

from src.evaluation.folds import FoldPlan, SCHEMES, make_folds
from src.evaluation.report import EvalReport, FoldResult
from src.evaluation.cross_validation import run_cv, run_fold
from src.evaluation.sweep import (
    SWEEPABLE,
    parse_grid_spec,
    sweep,
    pivot_sweep,
    dict_size_study,
)

__all__ = [
    "FoldPlan",
    "SCHEMES",
    "make_folds",
    "EvalReport",
    "FoldResult",
    "run_cv",
    "run_fold",
    "SWEEPABLE",
    "parse_grid_spec",
    "sweep",
    "pivot_sweep",
    "dict_size_study",
]
