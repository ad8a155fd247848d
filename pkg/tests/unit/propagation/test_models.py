"""Tests for the propagation table model."""

import numpy as np
import pytest
from pydantic import ValidationError

from pilot_clustering.propagation.models import PropagationTable


class TestPropagationTable:
    """Test moment invariants enforced on construction."""

    def test_valid(self, distant_table: PropagationTable) -> None:
        """Test a consistent table is accepted."""
        assert distant_table.cells == 2
        assert distant_table.mu1[0, 1] == 0.01
        assert distant_table.samples_per_cell == 0
        assert distant_table.seed is None

    def test_read_only(self, distant_table: PropagationTable) -> None:
        """Test the matrices cannot be modified in place."""
        with pytest.raises(ValueError):
            distant_table.mu1[0, 1] = 0.5

    def test_equality(self, distant_table: PropagationTable) -> None:
        """Test equality compares matrix contents."""
        copy = PropagationTable(
            mu1=distant_table.mu1.copy(), mu2=distant_table.mu2.copy()
        )
        assert copy == distant_table
        assert copy != PropagationTable(mu1=np.ones((2, 2)), mu2=np.ones((2, 2)))

    @pytest.mark.parametrize(
        ("mu1", "mu2"),
        [
            ([1.0, 1.0], [1.0, 1.0]),
            ([[]], [[]]),
            ([[1.0, 0.1, 0.1], [0.1, 1.0, 0.1]], [[1.0, 0.1, 0.1], [0.1, 1.0, 0.1]]),
            ([[1.0]], [[1.0, 0.1], [0.1, 1.0]]),
            ([[0.9, 0.1], [0.1, 1.0]], [[1.0, 0.01], [0.01, 1.0]]),
            ([[1.0, 0.0], [0.1, 1.0]], [[1.0, 0.0], [0.01, 1.0]]),
            ([[1.0, 1.5], [0.1, 1.0]], [[1.0, 1.0], [0.01, 1.0]]),
            ([[1.0, 0.5], [0.1, 1.0]], [[1.0, 0.2], [0.01, 1.0]]),
            ([[1.0, 0.1], [0.1, 1.0]], [[1.0, 0.2], [0.01, 1.0]]),
            ([[1.0, float("nan")], [0.1, 1.0]], [[1.0, 0.01], [0.01, 1.0]]),
        ],
    )
    def test_invalid(self, mu1: list, mu2: list) -> None:
        """Test tables violating a moment invariant are rejected."""
        with pytest.raises(ValidationError):
            PropagationTable(mu1=mu1, mu2=mu2)

    def test_jensen_bound_tolerates_rounding(self) -> None:
        """Test mu2 equal to mu1 squared up to rounding is accepted."""
        mu1 = 0.1
        table = PropagationTable(
            mu1=[[1.0, mu1], [mu1, 1.0]],
            mu2=[[1.0, mu1 * mu1 - 1e-15], [mu1 * mu1, 1.0]],
        )
        assert table.cells == 2
