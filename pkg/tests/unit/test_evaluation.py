"""Unit tests for fold plans, cross-validation, reports and sweeps."""

import numpy as np
import pytest

from src.errors import EmptyReport, MissingMetadata
from src.evaluation import (
    EvalReport,
    FoldPlan,
    FoldResult,
    dict_size_study,
    make_folds,
    parse_grid_spec,
    pivot_sweep,
    run_cv,
    sweep,
)
from src.utils.metrics import MetricsCollector
from tests.conftest import make_separable_dataset, make_subspace_dataset


def fold_result(index, confusion):
    confusion = np.asarray(confusion)
    return FoldResult(
        fold_index=index,
        n_train=10,
        n_test=int(confusion.sum()),
        n_correct=int(np.trace(confusion)),
        confusion=confusion,
        train_seconds=0.1,
        classify_ms_per_image=1.0,
    )


@pytest.mark.unit
class TestMakeFolds:
    """Test fold plan construction."""

    def test_conventional_partitions_and_stratifies(self, separable_dataset):
        """Test sets partition the columns with equal class counts."""
        plan = make_folds(separable_dataset, "conventional", 5, seed=0)
        assert len(plan) == 5
        tested = np.concatenate([test for _, test in plan.folds])
        np.testing.assert_array_equal(np.sort(tested), np.arange(30))
        for train_idx, test_idx in plan.folds:
            assert not set(train_idx) & set(test_idx)
            counts = np.bincount(separable_dataset.labels[test_idx], minlength=3)
            np.testing.assert_array_equal(counts, [2, 2, 2])

    def test_conventional_seeded(self, separable_dataset):
        """The shuffle follows the seed."""
        first = make_folds(separable_dataset, "conventional", 5, seed=1)
        second = make_folds(separable_dataset, "conventional", 5, seed=1)
        for (_, a), (_, b) in zip(first.folds, second.folds):
            np.testing.assert_array_equal(a, b)

    def test_between_subject(self, separable_dataset):
        """Each fold holds out exactly one writer."""
        plan = make_folds(separable_dataset, "between", seed=0)
        assert len(plan) == 5
        subjects = separable_dataset.subject_ids
        for train_idx, test_idx in plan.folds:
            assert len(set(subjects[test_idx])) == 1
            assert not set(subjects[test_idx]) & set(subjects[train_idx])

    def test_within_subject(self, separable_dataset):
        """Each fold tests one repetition of every writer."""
        plan = make_folds(separable_dataset, "within_subject", seed=0)
        assert len(plan) == 2
        for _, test_idx in plan.folds:
            assert len(set(separable_dataset.repetitions[test_idx])) == 1
            assert len(set(separable_dataset.subject_ids[test_idx])) == 5

    def test_within_subject_derives_repetitions(self):
        """Subject ids alone give per-subject ordinals and a note."""
        base = make_separable_dataset()
        dataset = type(base)(
            features=base.features,
            labels=base.labels,
            class_names=base.class_names,
            subject_ids=base.subject_ids,
        )
        plan = make_folds(dataset, "within", seed=0)
        assert len(plan) == 2
        assert plan.notes

    def test_missing_metadata(self):
        """Writer-based schemes need writer ids."""
        dataset = make_separable_dataset(with_metadata=False)
        with pytest.raises(MissingMetadata):
            make_folds(dataset, "between_subject")
        with pytest.raises(MissingMetadata):
            make_folds(dataset, "within_subject")
        with pytest.raises(MissingMetadata):
            make_folds(dataset, "holdout")

    def test_holdout(self):
        """The recorded split becomes a single fold."""
        base = make_separable_dataset(per_class=4)
        splits = np.array(["train"] * 9 + ["test"] * 3)
        dataset = type(base)(
            features=base.features, labels=base.labels, class_names=base.class_names, splits=splits
        )
        plan = make_folds(dataset, "holdout")
        assert len(plan) == 1
        np.testing.assert_array_equal(plan.folds[0][1], [9, 10, 11])

    def test_resubstitution(self, separable_dataset):
        """Train and test on everything."""
        plan = make_folds(separable_dataset, "resubstitution")
        train_idx, test_idx = plan.folds[0]
        np.testing.assert_array_equal(train_idx, test_idx)

    def test_unknown_scheme(self, separable_dataset):
        """Scheme names are validated."""
        with pytest.raises(ValueError):
            make_folds(separable_dataset, "bootstrap")


@pytest.mark.unit
class TestEvalReport:
    """Test report aggregation."""

    def test_pooled_and_mean(self):
        """Pooled accuracy weights by test count; the mean does not."""
        report = EvalReport(scheme="conventional", class_names=["a", "b"])
        report.add_fold(fold_result(1, [[1, 0], [0, 1]]))
        report.add_fold(fold_result(0, [[3, 3], [0, 0]]))
        assert [r.fold_index for r in report.fold_results] == [0, 1]
        assert report.pooled_accuracy == pytest.approx(5 / 8)
        assert report.mean_fold_accuracy == pytest.approx((0.5 + 1.0) / 2)
        np.testing.assert_array_equal(report.confusion, [[4, 3], [0, 1]])

    def test_most_confused_pair(self):
        """Largest off-diagonal cell, as (target, output, count)."""
        report = EvalReport(scheme="conventional", class_names=["a", "b", "c"])
        report.add_fold(fold_result(0, [[5, 0, 2], [1, 4, 0], [0, 0, 3]]))
        assert report.most_confused_pair() == ("a", "c", 2)

    def test_perfect_report_has_no_confusion(self):
        """A diagonal matrix has no confused pair."""
        report = EvalReport(scheme="conventional", class_names=["a", "b"])
        report.add_fold(fold_result(0, [[2, 0], [0, 2]]))
        assert report.most_confused_pair() is None

    def test_empty_report_raises(self):
        """Aggregates over zero folds are undefined."""
        report = EvalReport(scheme="conventional", class_names=["a", "b"])
        with pytest.raises(EmptyReport):
            _ = report.pooled_accuracy
        with pytest.raises(EmptyReport):
            _ = report.mean_fold_accuracy


@pytest.mark.unit
class TestRunCv:
    """Test train-and-test over fold plans."""

    def test_separable_conventional(self, separable_dataset, small_hp):
        """Disjoint subspaces are recognized in every fold."""
        plan = make_folds(separable_dataset, "conventional", 5, seed=0)
        report = run_cv(separable_dataset, plan, small_hp, seed=0)
        assert report.num_folds == 5
        assert report.pooled_accuracy == pytest.approx(1.0)
        assert report.confusion.sum() == 30

    def test_resubstitution(self, separable_dataset, small_hp):
        """Testing on the training set is perfect on separable data."""
        plan = make_folds(separable_dataset, "resubstitution")
        assert run_cv(separable_dataset, plan, small_hp, seed=0).pooled_accuracy == pytest.approx(1.0)

    @pytest.mark.parametrize("scheme,folds", [("resubstitution", None), ("conventional", 10)])
    def test_orthogonal_subspaces_in_r24(self, small_hp, scheme, folds):
        """Three rotated orthogonal 8-d subspaces, 30 samples each, are recognized perfectly."""
        dataset = make_subspace_dataset(num_classes=3, per_class=30, dim=24, seed=0)
        hp = small_hp.model_copy(update={"m": 8})
        plan = make_folds(dataset, scheme, folds, seed=0)
        report = run_cv(dataset, plan, hp, seed=0)
        assert report.confusion.sum() == 90
        assert report.pooled_accuracy == pytest.approx(1.0)

    def test_parallel_folds_match_sequential(self, separable_dataset, small_hp):
        """Fold concurrency does not change the result."""
        plan = make_folds(separable_dataset, "between_subject", seed=0)
        hp = small_hp.model_copy(update={"outer_iters": 3})
        sequential = run_cv(separable_dataset, plan, hp, seed=0, workers=1)
        parallel = run_cv(separable_dataset, plan, hp, seed=0, workers=3)
        np.testing.assert_array_equal(sequential.confusion, parallel.confusion)
        assert sequential.fold_accuracies == parallel.fold_accuracies

    def test_empty_plan(self, separable_dataset, small_hp):
        """No folds, empty report."""
        report = run_cv(separable_dataset, FoldPlan("conventional", []), small_hp, seed=0)
        assert report.num_folds == 0
        with pytest.raises(EmptyReport):
            _ = report.confusion

    def test_metrics_recorded(self, separable_dataset, small_hp):
        """Classification timing goes into the collector."""
        metrics = MetricsCollector()
        plan = make_folds(separable_dataset, "resubstitution")
        hp = small_hp.model_copy(update={"outer_iters": 1})
        run_cv(separable_dataset, plan, hp, seed=0, metrics=metrics)
        assert metrics.get_counter("test_samples") == 30
        assert metrics.get_histogram_stats("classify_ms_per_image")["count"] == 1


@pytest.mark.unit
class TestSweeps:
    """Test grid parsing and parameter sweeps."""

    def test_log_grid_endpoints(self):
        """Decades from 1e-3 to 1e3 with exact endpoints."""
        name, values = parse_grid_spec("lambda2=1e-3:1e3:7")
        assert name == "lambda2"
        assert len(values) == 7
        assert values[0] == 1e-3
        assert values[-1] == 1e3
        np.testing.assert_allclose(values, 10.0 ** np.arange(-3, 4))

    def test_linear_and_alias(self):
        """Linear spacing and the short parameter names."""
        name, values = parse_grid_spec("l3=0:1:3:lin")
        assert name == "lambda3"
        np.testing.assert_allclose(values, [0.0, 0.5, 1.0])

    def test_dictionary_size_grid(self):
        """Sizes are rounded to distinct integers."""
        name, values = parse_grid_spec("m=2:6:3:lin")
        assert name == "m"
        np.testing.assert_array_equal(values, [2, 4, 6])

    @pytest.mark.parametrize("spec", ["lambda2", "lambda2=1:2", "colour=1:2:3", "lambda1=0:1:3:log"])
    def test_bad_specs(self, spec):
        """Malformed grid specs are rejected."""
        with pytest.raises(ValueError):
            parse_grid_spec(spec)

    @pytest.mark.parametrize(
        "spec,name",
        [
            ("lambda3=-1:1:3:lin", "lambda3"),
            ("gamma=0:1:3:lin", "gamma"),
            ("rho=-1:1:2:lin", "rho"),
            ("m=0:4:3:lin", "m"),
        ],
    )
    def test_out_of_range_grid_values(self, spec, name):
        """Grid values must satisfy the parameter's own constraint."""
        with pytest.raises(ValueError, match=name):
            parse_grid_spec(spec)

    def test_invalid_point_names_parameter(self, separable_dataset, small_hp):
        """A hand-built grid with a negative weight fails on that weight before training."""
        plan = make_folds(separable_dataset, "resubstitution")
        with pytest.raises(ValueError, match="lambda3"):
            sweep(separable_dataset, {"lambda3": [-1.0, 1.0]}, 0, plan, base=small_hp)

    def test_invalid_dictionary_size(self, separable_dataset, small_hp):
        """Dictionary sizes are validated like any other setting."""
        plan = make_folds(separable_dataset, "resubstitution")
        with pytest.raises(ValueError, match="m"):
            dict_size_study(separable_dataset, [0], small_hp, 0, plan)

    def test_single_point(self, separable_dataset, small_hp):
        """A one-point grid gives one row."""
        plan = make_folds(separable_dataset, "resubstitution")
        table = sweep(separable_dataset, {"lambda2": [1.0]}, 0, plan, base=small_hp)
        assert list(table.columns) == ["lambda2", "pooled_accuracy", "mean_fold_accuracy"]
        assert len(table) == 1

    def test_two_dimensional(self, separable_dataset, small_hp):
        """A 2 x 3 grid gives six rows and a 2 x 3 pivot."""
        plan = make_folds(separable_dataset, "resubstitution")
        hp = small_hp.model_copy(update={"outer_iters": 2})
        grid = {"lambda2": [0.1, 1.0], "lambda3": [0.01, 0.1, 1.0]}
        table = sweep(separable_dataset, grid, 0, plan, base=hp)
        assert len(table) == 6
        assert pivot_sweep(table).shape == (2, 3)

    def test_dict_size_study(self, separable_dataset, small_hp):
        """One row per size, with the baseline column on request."""
        plan = make_folds(separable_dataset, "resubstitution")
        hp = small_hp.model_copy(update={"outer_iters": 2})
        table = dict_size_study(separable_dataset, [2, 4], hp, 0, plan, compare_dpl=True)
        assert list(table.columns) == ["m", "lpdpl_accuracy", "dpl_accuracy"]
        assert list(table["m"]) == [2, 4]
