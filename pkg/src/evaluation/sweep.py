"""Parameter sweeps and the dictionary-size study."""

import itertools
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
import structlog
from pydantic import ValidationError

from src.evaluation.cross_validation import run_cv
from src.evaluation.folds import FoldPlan
from src.models import ClassPartitionedDataset, FeaturePipelineConfig, Hyperparameters
from src.utils.experiment_logger import log_sweep_point

logger = structlog.get_logger()

SWEEPABLE = ("lambda1", "lambda2", "lambda3", "gamma", "rho", "m")
# Parameters that must stay strictly positive; the lambdas only non-negative
POSITIVE_PARAMS = ("gamma", "rho", "m")
PARAM_ALIASES = {"l1": "lambda1", "l2": "lambda2", "l3": "lambda3"}


def parse_grid_spec(spec: str) -> Tuple[str, np.ndarray]:
    """Parse ``param=lo:hi:steps[:log|:lin]`` (log spacing by default).

    Endpoints are reproduced exactly; a single step yields ``[lo]``.

    Examples:
        ``lambda2=1e-3:1e3:7`` -> 0.001, 0.01, ..., 1000
    """
    try:
        name, rng = spec.split("=", 1)
        parts = rng.split(":")
        lo, hi, steps = float(parts[0]), float(parts[1]), int(parts[2])
        spacing = parts[3] if len(parts) > 3 else "log"
    except (ValueError, IndexError) as e:
        raise ValueError(f"bad grid spec '{spec}', expected param=lo:hi:steps[:log|:lin]") from e

    name = PARAM_ALIASES.get(name.strip(), name.strip())
    if name not in SWEEPABLE:
        raise ValueError(f"grid spec '{spec}': '{name}' is not one of {SWEEPABLE}")
    if steps < 1:
        raise ValueError(f"grid spec '{spec}': steps must be >= 1")

    if spacing == "log":
        if lo <= 0 or hi <= 0:
            raise ValueError(f"grid spec '{spec}': log spacing needs positive endpoints")
        values = np.logspace(np.log10(lo), np.log10(hi), steps)
    elif spacing == "lin":
        values = np.linspace(lo, hi, steps)
    else:
        raise ValueError(f"grid spec '{spec}': spacing must be 'log' or 'lin'")

    values[0] = lo
    if steps > 1:
        values[-1] = hi
    if name == "m":
        values = np.unique(np.round(values).astype(np.int64))
    if name in POSITIVE_PARAMS and (values <= 0).any():
        raise ValueError(f"grid spec '{spec}': {name} values must be positive")
    if (values < 0).any():
        raise ValueError(f"grid spec '{spec}': {name} values must be non-negative")
    return name, values


def with_params(base: Hyperparameters, params: Dict[str, float]) -> Hyperparameters:
    """Copy of base with params replaced, validated like a fresh Hyperparameters.

    Raises:
        ValueError: If a value breaks a parameter constraint; the message names it
    """
    try:
        return Hyperparameters.model_validate({**base.model_dump(), **params})
    except ValidationError as e:
        bad = "; ".join(f"{err['loc'][0]}: {err['msg']}" for err in e.errors())
        raise ValueError(f"invalid sweep point {params}: {bad}") from e


def sweep(
    dataset: ClassPartitionedDataset,
    hp_grid: Dict[str, Sequence[float]],
    seed: int,
    plan: FoldPlan,
    base: Optional[Hyperparameters] = None,
    workers: Optional[int] = None,
    pipeline: Optional[FeaturePipelineConfig] = None,
) -> pd.DataFrame:
    """Run the fold plan at every point of the grid.

    Args:
        dataset: Full dataset
        hp_grid: Parameter name to values; the grid is their Cartesian product
        seed: Initialization seed
        plan: Fold plan shared by all points
        base: Fixed values of the parameters not varied
        workers: Concurrency cap passed to run_cv
        pipeline: Feature pipeline recorded in fold models

    Returns:
        One row per grid point: the varied parameters, pooled_accuracy,
        mean_fold_accuracy
    """
    if not hp_grid or any(len(values) == 0 for values in hp_grid.values()):
        raise ValueError("sweep grid must be non-empty")
    base = base or Hyperparameters()
    names = list(hp_grid)
    for name in names:
        if name not in SWEEPABLE:
            raise ValueError(f"cannot sweep '{name}'; choose from {SWEEPABLE}")

    rows: List[dict] = []
    for point in itertools.product(*(hp_grid[name] for name in names)):
        params = {name: (int(v) if name == "m" else float(v)) for name, v in zip(names, point)}
        hp = with_params(base, params)
        report = run_cv(dataset, plan, hp, seed, workers=workers, pipeline=pipeline)
        row = dict(params)
        row["pooled_accuracy"] = report.pooled_accuracy
        row["mean_fold_accuracy"] = report.mean_fold_accuracy
        rows.append(row)
        log_sweep_point(params, row["pooled_accuracy"], row["mean_fold_accuracy"])

    logger.info("sweep_complete", params=names, points=len(rows))
    return pd.DataFrame(rows, columns=names + ["pooled_accuracy", "mean_fold_accuracy"])


def pivot_sweep(table: pd.DataFrame, value: str = "pooled_accuracy") -> pd.DataFrame:
    """Grid layout of a 2-D sweep: first parameter down, second across."""
    params = [c for c in table.columns if c in SWEEPABLE]
    if len(params) != 2:
        raise ValueError(f"pivot needs exactly two swept parameters, got {params}")
    return table.pivot(index=params[0], columns=params[1], values=value)


def dict_size_study(
    dataset: ClassPartitionedDataset,
    m_values: Sequence[int],
    hp: Hyperparameters,
    seed: int,
    plan: FoldPlan,
    compare_dpl: bool = False,
    workers: Optional[int] = None,
    pipeline: Optional[FeaturePipelineConfig] = None,
) -> pd.DataFrame:
    """Accuracy against the number of atoms m.

    Args:
        dataset: Full dataset
        m_values: Dictionary sizes to evaluate
        hp: Hyperparameters (m is replaced per row)
        seed: Initialization seed
        plan: Fold plan
        compare_dpl: Also evaluate the label-free baseline per m
        workers: Concurrency cap passed to run_cv
        pipeline: Feature pipeline recorded in fold models

    Returns:
        Rows (m, lpdpl_accuracy[, dpl_accuracy])
    """
    if len(m_values) == 0:
        raise ValueError("m_values must be non-empty")

    rows = []
    for m in m_values:
        sized = with_params(hp, {"m": int(m)})
        row = {"m": int(m)}
        row["lpdpl_accuracy"] = run_cv(
            dataset, plan, sized, seed, workers=workers, pipeline=pipeline
        ).pooled_accuracy
        if compare_dpl:
            row["dpl_accuracy"] = run_cv(
                dataset, plan, sized.as_dpl(), seed, workers=workers, pipeline=pipeline
            ).pooled_accuracy
        rows.append(row)
        logger.info("dict_size_point_complete", **row)

    return pd.DataFrame(rows)
