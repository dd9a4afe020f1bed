"""Unit tests for the class-partitioned dataset."""

import numpy as np
import pytest

from src.errors import DatasetError
from src.models import ClassPartitionedDataset


@pytest.fixture
def interleaved():
    features = np.arange(12.0).reshape(2, 6)
    return ClassPartitionedDataset(features=features, labels=[1, 0, 1, 2, 0, 1], class_names=["a", "b", "c"])


@pytest.mark.unit
class TestClassPartitionedDataset:
    """Test per-class views."""

    def test_class_indices_keep_dataset_order(self, interleaved):
        """Columns of a class are listed in dataset order."""
        np.testing.assert_array_equal(interleaved.class_indices(1), [0, 2, 5])
        np.testing.assert_array_equal(interleaved.class_indices(2), [3])

    def test_class_matrix_uses_class_columns(self, interleaved):
        """X_i gathers exactly the indexed columns."""
        np.testing.assert_array_equal(interleaved.class_matrix(1), interleaved.features[:, [0, 2, 5]])
        assert interleaved.class_count(0) == 2

    def test_complement_is_grouped_by_class(self, interleaved):
        """X-bar_i concatenates the other classes block by block."""
        expected = interleaved.features[:, [1, 4, 3]]
        np.testing.assert_array_equal(interleaved.complement_matrix(1), expected)

    def test_label_matrix(self, interleaved):
        """H_i has ones on row i only."""
        H = interleaved.label_matrix(1)
        assert H.shape == (3, 3)
        np.testing.assert_array_equal(H[1], 1.0)
        assert H[[0, 2]].sum() == 0.0

    def test_subset_keeps_class_list(self, interleaved):
        """Restricting columns keeps every class name."""
        part = interleaved.subset([0, 3])
        assert part.class_names == ["a", "b", "c"]
        assert part.class_count(0) == 0

    def test_rejects_out_of_range_labels(self):
        """Labels must index into class_names."""
        with pytest.raises(DatasetError):
            ClassPartitionedDataset(features=np.eye(2), labels=[0, 2], class_names=["a", "b"])
