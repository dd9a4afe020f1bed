"""Result files written by the command-line tools.

CSV files hold only values that are fixed by (config, seed); wall-clock
timings go to summary.json.
"""

import json
from pathlib import Path
from typing import Any, Dict, List, Optional

import pandas as pd
import structlog

from src.evaluation import EvalReport, pivot_sweep

logger = structlog.get_logger()


def ensure_dir(out: Path) -> Path:
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def write_trace(trace: List[float], out: Path) -> Path:
    """trace.csv with columns (iteration, objective)."""
    path = ensure_dir(out) / "trace.csv"
    pd.DataFrame({"iteration": range(len(trace)), "objective": trace}).to_csv(path, index=False)
    return path


def confusion_frame(report: EvalReport) -> pd.DataFrame:
    """Pooled confusion counts, target classes down and output classes across."""
    return pd.DataFrame(
        report.confusion,
        index=pd.Index(report.class_names, name="target"),
        columns=pd.Index(report.class_names, name="output"),
    )


def write_eval(report: EvalReport, out: Path, extra: Optional[Dict[str, Any]] = None) -> Dict[str, Path]:
    """Write summary.csv, folds.csv, confusion.csv and summary.json.

    Args:
        report: Evaluation report with at least one fold
        out: Output directory (created if missing)
        extra: Additional run metadata for summary.json

    Returns:
        File name to path
    """
    out = ensure_dir(out)
    paths = {
        "summary": out / "summary.csv",
        "folds": out / "folds.csv",
        "confusion": out / "confusion.csv",
        "summary_json": out / "summary.json",
    }

    pair = report.most_confused_pair()
    pd.DataFrame(
        [
            {
                "scheme": report.scheme,
                "folds": report.num_folds,
                "n_test": int(report.confusion.sum()),
                "pooled_accuracy": report.pooled_accuracy,
                "mean_fold_accuracy": report.mean_fold_accuracy,
                "most_confused_target": pair[0] if pair else "",
                "most_confused_output": pair[1] if pair else "",
                "most_confused_count": pair[2] if pair else 0,
            }
        ]
    ).to_csv(paths["summary"], index=False)

    pd.DataFrame(
        [
            {
                "fold": r.fold_index,
                "n_train": r.n_train,
                "n_test": r.n_test,
                "n_correct": r.n_correct,
                "accuracy": r.accuracy,
            }
            for r in report.fold_results
        ]
    ).to_csv(paths["folds"], index=False)

    confusion_frame(report).to_csv(paths["confusion"])

    summary = report.summary()
    summary.update(extra or {})
    paths["summary_json"].write_text(json.dumps(summary, indent=2, default=str))

    logger.info("eval_outputs_written", out=str(out), pooled_accuracy=report.pooled_accuracy)
    return paths


def write_sweep(table: pd.DataFrame, out: Path) -> Dict[str, Path]:
    """sweep.csv (row per grid point) and, for 2-D grids, sweep_grid.csv."""
    out = ensure_dir(out)
    paths = {"sweep": out / "sweep.csv"}
    table.to_csv(paths["sweep"], index=False)
    params = [c for c in table.columns if c not in ("pooled_accuracy", "mean_fold_accuracy")]
    if len(params) == 2:
        paths["sweep_grid"] = out / "sweep_grid.csv"
        pivot_sweep(table).to_csv(paths["sweep_grid"])
    return paths


def write_dictsize(table: pd.DataFrame, out: Path) -> Path:
    path = ensure_dir(out) / "dictsize.csv"
    table.to_csv(path, index=False)
    return path


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def plot_trace(trace: List[float], out: Path) -> Path:
    """Objective against outer iteration."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.plot(range(len(trace)), trace, marker="o")
    ax.set_xlabel("iteration")
    ax.set_ylabel("objective")
    fig.tight_layout()
    path = ensure_dir(out) / "trace.png"
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_curves(table: pd.DataFrame, x: str, columns: List[str], out: Path, name: str) -> Path:
    """Accuracy curves against one swept quantity (log x for weights)."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(5, 3.5))
    for column in columns:
        ax.plot(table[x], table[column], marker="o", label=column)
    if x != "m":
        ax.set_xscale("log")
    ax.set_xlabel(x)
    ax.set_ylabel("accuracy")
    ax.legend()
    fig.tight_layout()
    path = ensure_dir(out) / f"{name}.png"
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_sweep_grid(table: pd.DataFrame, out: Path) -> Path:
    """Heat map of a 2-D sweep."""
    plt = _pyplot()
    grid = pivot_sweep(table)
    fig, ax = plt.subplots(figsize=(5, 4))
    image = ax.imshow(grid.values, origin="lower", aspect="auto")
    ax.set_xticks(range(len(grid.columns)), [f"{v:.3g}" for v in grid.columns])
    ax.set_yticks(range(len(grid.index)), [f"{v:.3g}" for v in grid.index])
    ax.set_xlabel(grid.columns.name)
    ax.set_ylabel(grid.index.name)
    fig.colorbar(image, ax=ax, label="pooled accuracy")
    fig.tight_layout()
    path = ensure_dir(out) / "sweep_grid.png"
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
