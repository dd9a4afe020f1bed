"""End-to-end tests of the command line on a small synthetic corpus."""

import json

import numpy as np
import pandas as pd
import pytest
from PIL import Image

from src.cli import main
from src.cli.run_config import build_run_config
from src.ingestion import load_model

KINDS = ("bar", "dash", "box")


def glyph_page(kind: str, variant: int) -> np.ndarray:
    pixels = np.full((24, 24), 255, dtype=np.uint8)
    shift = variant % 3
    if kind == "bar":
        pixels[2:22, 10 + shift:13 + shift] = 0
    elif kind == "dash":
        pixels[10 + shift:13 + shift, 2:22] = 0
    else:
        pixels[4:20, 4 + shift:6 + shift] = 0
        pixels[4:20, 18 + shift:20 + shift] = 0
        pixels[4:6, 4:20] = 0
        pixels[18:20, 4:20] = 0
    return pixels


@pytest.fixture
def manifest(tmp_path):
    root = tmp_path / "corpus"
    for kind in KINDS:
        (root / kind).mkdir(parents=True)
        for subject in range(3):
            for rep in range(2):
                Image.fromarray(glyph_page(kind, subject + rep)).save(root / kind / f"w{subject}_{rep}.png")
    path = tmp_path / "manifest.json"
    path.write_text(json.dumps({"root": "corpus", "layout": "class_dirs"}))
    return path


def small_args(manifest, out):
    return ["--manifest", str(manifest), "--out", str(out), "--m", "4", "--iters", "3", "--seed", "0"]


@pytest.mark.integration
class TestCli:
    """Test the train, classify, inspect, eval, sweep and dictsize commands."""

    def test_train_then_classify(self, manifest, tmp_path, capsys):
        """A trained model labels its own training images."""
        out = tmp_path / "train"
        assert main(["train"] + small_args(manifest, out)) == 0

        model = load_model(out / "model.lpdpl")
        assert model.num_classes == 3
        trace = pd.read_csv(out / "trace.csv")
        assert list(trace.columns) == ["iteration", "objective"]
        assert trace["iteration"].iloc[0] == 0
        assert 2 <= len(trace) <= 4

        image = tmp_path / "corpus" / "dash" / "w0_0.png"
        capsys.readouterr()
        assert main(["classify", "--model", str(out / "model.lpdpl"), str(image)]) == 0
        line = capsys.readouterr().out.strip()
        path, label, score = line.split(",")
        assert path == str(image)
        assert label == "dash"
        assert float(score) >= 0.0

    def test_train_is_reproducible(self, manifest, tmp_path):
        """Same config and seed, identical trace file."""
        first, second = tmp_path / "a", tmp_path / "b"
        assert main(["train"] + small_args(manifest, first)) == 0
        assert main(["train"] + small_args(manifest, second)) == 0
        assert (first / "trace.csv").read_bytes() == (second / "trace.csv").read_bytes()

    def test_inspect(self, manifest, tmp_path, capsys):
        """Model summary lists sizes and class names."""
        out = tmp_path / "train"
        assert main(["train"] + small_args(manifest, out)) == 0
        capsys.readouterr()
        assert main(["inspect", "--model", str(out / "model.lpdpl")]) == 0
        printed = capsys.readouterr().out
        assert "classes: 3" in printed
        assert "m: 4" in printed
        assert "class_names: bar,box,dash" in printed

    def test_eval_outputs(self, manifest, tmp_path):
        """Reports are written and CSVs are byte-identical on rerun."""
        first, second = tmp_path / "e1", tmp_path / "e2"
        args = ["--scheme", "between", "--lambda2", "1.0"]
        assert main(["eval"] + small_args(manifest, first) + args) == 0
        assert main(["eval"] + small_args(manifest, second) + args) == 0

        confusion = pd.read_csv(first / "confusion.csv", index_col=0)
        assert confusion.shape == (3, 3)
        assert confusion.index.name == "target"
        assert confusion.values.sum() == 18

        folds = pd.read_csv(first / "folds.csv")
        assert len(folds) == 3

        summary = json.loads((first / "summary.json").read_text())
        assert summary["folds"] == 3
        assert "train_seconds" in summary

        for name in ("summary.csv", "folds.csv", "confusion.csv"):
            assert (first / name).read_bytes() == (second / name).read_bytes()

    def test_sweep_two_dimensional(self, manifest, tmp_path):
        """A 2 x 2 grid writes row and grid tables."""
        out = tmp_path / "sweep"
        args = ["--scheme", "resubstitution", "--grid", "lambda2=0.1:1:2", "--grid", "lambda3=0.01:0.1:2"]
        assert main(["sweep"] + small_args(manifest, out) + args) == 0
        table = pd.read_csv(out / "sweep.csv")
        assert len(table) == 4
        assert pd.read_csv(out / "sweep_grid.csv", index_col=0).shape == (2, 2)

    def test_dictsize(self, manifest, tmp_path):
        """One row per dictionary size with the baseline column."""
        out = tmp_path / "dict"
        args = ["--scheme", "resubstitution", "--m-values", "2", "4", "--compare-dpl"]
        assert main(["dictsize"] + small_args(manifest, out) + args) == 0
        table = pd.read_csv(out / "dictsize.csv")
        assert list(table.columns) == ["m", "lpdpl_accuracy", "dpl_accuracy"]

    def test_missing_model_fails(self, tmp_path, capsys):
        """Errors give exit code 1 and name the input."""
        missing = tmp_path / "missing.lpdpl"
        assert main(["inspect", "--model", str(missing)]) == 1
        assert "missing.lpdpl" in capsys.readouterr().err

    def test_sweep_needs_grid(self, manifest, tmp_path):
        """An inconsistent run configuration is rejected."""
        assert main(["sweep"] + small_args(manifest, tmp_path / "s")) == 1


@pytest.mark.unit
class TestRunConfig:
    """Test run configuration merging."""

    def test_flags_override_file(self, tmp_path):
        """Command-line values win over config-file values."""
        cfg = build_run_config(
            {"command": "eval", "manifest": "m.json", "seed": 3, "hyperparameters": {"m": 10, "lambda1": 0.5}},
            {"seed": 9, "out": None},
            {"m": 20, "lambda2": None},
        )
        assert cfg.seed == 9
        assert cfg.hyperparameters.m == 20
        assert cfg.hyperparameters.lambda1 == 0.5

    def test_dpl_baseline(self):
        """The baseline drops the label term."""
        cfg = build_run_config({"command": "train", "manifest": "m.json", "baseline": "dpl"}, {}, {})
        hp = cfg.effective_hyperparameters()
        assert hp.lambda2 == 0.0
        assert hp.label_weight == 0.0

    def test_classify_needs_images(self):
        """Commands check their own inputs."""
        with pytest.raises(ValueError):
            build_run_config({"command": "classify", "model": "x"}, {}, {})
