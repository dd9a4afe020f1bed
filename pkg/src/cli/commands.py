"""Command implementations behind the lpdpl command line."""

import sys
from pathlib import Path
from typing import List, Optional, TextIO, Tuple

import structlog

from src.classification import all_scores
from src.cli import outputs
from src.cli.run_config import RunConfig
from src.dictionary import train
from src.errors import EmptyGlyph
from src.evaluation import EvalReport, dict_size_study, make_folds, parse_grid_spec, run_cv, sweep
from src.features import extract_features
from src.ingestion import FORMAT_VERSION, load_corpus, load_manifest, load_model, read_image, save_model
from src.models import ClassPartitionedDataset, FeaturePipelineConfig, TrainedModel
from src.utils.metrics import MetricsCollector

logger = structlog.get_logger()

MODEL_FILE = "model.lpdpl"


def load_dataset(
    cfg: RunConfig, metrics: Optional[MetricsCollector] = None
) -> Tuple[ClassPartitionedDataset, FeaturePipelineConfig]:
    """Featurized corpus of the run's manifest, with the --features override applied."""
    manifest = load_manifest(cfg.manifest)
    pipeline = manifest.pipeline_config()
    if cfg.features is not None:
        pipeline = pipeline.model_copy(update={"kind": cfg.features})
        manifest = manifest.model_copy(update={"pipeline": pipeline})
    dataset = load_corpus(manifest, workers=cfg.workers, metrics=metrics)
    return dataset, pipeline


def cmd_train(cfg: RunConfig) -> Path:
    """Train on the whole corpus; write the model file and trace.csv.

    Returns:
        Path of the saved model
    """
    dataset, pipeline = load_dataset(cfg)
    hp = cfg.effective_hyperparameters()
    model, trace = train(dataset, hp, cfg.seed, workers=cfg.workers, pipeline=pipeline)

    out = outputs.ensure_dir(cfg.out)
    model_path = out / MODEL_FILE
    save_model(model, model_path)
    outputs.write_trace(trace, out)
    if cfg.plot:
        outputs.plot_trace(trace, out)

    logger.info("cmd_train_complete", model=str(model_path), iterations=len(trace) - 1)
    return model_path


def cmd_eval(cfg: RunConfig) -> EvalReport:
    """Run the configured validation scheme and write the report files."""
    metrics = MetricsCollector()
    dataset, pipeline = load_dataset(cfg, metrics)
    plan = make_folds(dataset, cfg.scheme, cfg.folds, cfg.seed)
    report = run_cv(
        dataset,
        plan,
        cfg.effective_hyperparameters(),
        cfg.seed,
        workers=cfg.workers,
        pipeline=pipeline,
        metrics=metrics,
    )
    extra = {
        "seed": cfg.seed,
        "baseline": cfg.baseline,
        "hyperparameters": cfg.effective_hyperparameters().model_dump(mode="json"),
        "pipeline": pipeline.model_dump(mode="json"),
        "rejected": list(dataset.rejected),
        "extraction_ms": metrics.get_histogram_stats("extraction_ms_per_image"),
        "classify_ms": metrics.get_histogram_stats("classify_ms_per_image"),
    }
    outputs.write_eval(report, cfg.out, extra)
    return report


def classify_image(path: Path, model: TrainedModel) -> Tuple[str, float]:
    """(class name, total score) of the best class for one image file."""
    img = read_image(path)
    try:
        x = extract_features(img, model.pipeline)
    except EmptyGlyph as e:
        raise EmptyGlyph(f"{path}: {e}") from e
    scores = all_scores(x, model)
    best = min(scores, key=lambda s: (s.total, s.class_index))
    return model.class_names[best.class_index], best.total


def cmd_classify(cfg: RunConfig, stream: Optional[TextIO] = None) -> List[str]:
    """Print one ``path,label,score`` line per image."""
    model = load_model(cfg.model)
    lines = []
    for path in cfg.images:
        label, total = classify_image(path, model)
        line = f"{path},{label},{total:.10g}"
        print(line, file=stream or sys.stdout)
        lines.append(line)
    return lines


def cmd_sweep(cfg: RunConfig):
    """Evaluate every point of the --grid specs; write sweep.csv (+ grid)."""
    grid = dict(parse_grid_spec(spec) for spec in cfg.grid)
    dataset, pipeline = load_dataset(cfg)
    plan = make_folds(dataset, cfg.scheme, cfg.folds, cfg.seed)
    table = sweep(
        dataset,
        grid,
        cfg.seed,
        plan,
        base=cfg.effective_hyperparameters(),
        workers=cfg.workers,
        pipeline=pipeline,
    )
    paths = outputs.write_sweep(table, cfg.out)
    if cfg.plot:
        names = list(grid)
        if len(names) == 1:
            outputs.plot_curves(table, names[0], ["pooled_accuracy"], cfg.out, "sweep")
        elif len(names) == 2:
            outputs.plot_sweep_grid(table, cfg.out)
    logger.info("cmd_sweep_complete", points=len(table), files=[str(p) for p in paths.values()])
    return table


def cmd_inspect(cfg: RunConfig, stream: Optional[TextIO] = None) -> dict:
    """Print the contents of a model file."""
    model = load_model(cfg.model)
    info = {
        "format_version": FORMAT_VERSION,
        "classes": model.num_classes,
        "n": model.n,
        "m": model.m,
        "class_names": ",".join(model.class_names),
        "hyperparameters": model.hyperparameters.model_dump_json(),
        "pipeline": model.pipeline.model_dump_json(),
        "max_atom_norm": f"{model.max_atom_norm:.6f}",
    }
    for key, value in info.items():
        print(f"{key}: {value}", file=stream or sys.stdout)
    return info


def cmd_dictsize(cfg: RunConfig):
    """Accuracy for each --m-values entry; write dictsize.csv."""
    dataset, pipeline = load_dataset(cfg)
    plan = make_folds(dataset, cfg.scheme, cfg.folds, cfg.seed)
    table = dict_size_study(
        dataset,
        cfg.m_values,
        cfg.effective_hyperparameters(),
        cfg.seed,
        plan,
        compare_dpl=cfg.compare_dpl,
        workers=cfg.workers,
        pipeline=pipeline,
    )
    outputs.write_dictsize(table, cfg.out)
    if cfg.plot:
        columns = [c for c in ("lpdpl_accuracy", "dpl_accuracy") if c in table.columns]
        outputs.plot_curves(table, "m", columns, cfg.out, "dictsize")
    return table
