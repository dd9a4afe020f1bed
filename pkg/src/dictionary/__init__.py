"""Labeled projective dictionary pair learning."""

from src.dictionary.linalg import (
    SpdFactor,
    solve_spd,
    solve_right_spd,
    project_columns_to_unit_ball,
    normalize_columns,
)
from src.dictionary.updates import (
    AdmmState,
    update_A,
    update_P,
    update_W,
    update_D,
    analysis_gram,
)
from src.dictionary.objective import objective, class_objective_terms
from src.dictionary.trainer import ClassState, init, step_class, train

__all__ = [
    "SpdFactor",
    "solve_spd",
    "solve_right_spd",
    "project_columns_to_unit_ball",
    "normalize_columns",
    "AdmmState",
    "update_A",
    "update_P",
    "update_W",
    "update_D",
    "analysis_gram",
    "objective",
    "class_objective_terms",
    "ClassState",
    "init",
    "step_class",
    "train",
]
