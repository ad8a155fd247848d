"""Pydantic models for the propagation category."""

from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

# Slack for floating-point rounding in sample means
_TOLERANCE = 1e-12


class PropagationTable(BaseModel):
    """First and second moments of the channel-variance ratio.

    ``mu1[j, l]`` is the mean of d_j(z)/d_l(z) for a UE uniformly placed in
    cell l, ``mu2[j, l]`` the mean of its square. Both matrices are read-only.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    mu1: np.ndarray
    mu2: np.ndarray
    samples_per_cell: int = Field(
        default=0, ge=0, description="Monte-Carlo samples per cell (0 = given)"
    )
    seed: int | None = None
    deployment_sha256: str | None = None

    @field_validator("mu1", "mu2", mode="before")
    @classmethod
    def _as_matrix(cls, value: Any) -> np.ndarray:
        matrix = np.array(value, dtype=float)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] or matrix.size == 0:
            msg = f"Expected a non-empty square matrix, got shape {matrix.shape}"
            raise ValueError(msg)
        matrix.setflags(write=False)
        return matrix

    @model_validator(mode="after")
    def _check_moments(self) -> "PropagationTable":
        mu1, mu2 = self.mu1, self.mu2
        if mu1.shape != mu2.shape:
            msg = f"mu1 {mu1.shape} and mu2 {mu2.shape} differ in shape"
            raise ValueError(msg)
        if not (np.all(np.diag(mu1) == 1.0) and np.all(np.diag(mu2) == 1.0)):
            raise ValueError("Diagonal moments must be exactly 1")
        if not (np.all(np.isfinite(mu1)) and np.all(np.isfinite(mu2))):
            raise ValueError("Moments must be finite")
        if np.any(mu1 <= 0) or np.any(mu2 <= 0):
            raise ValueError("Moments must be strictly positive")
        if np.any(mu1 > 1.0) or np.any(mu2 > 1.0):
            raise ValueError("Moments must not exceed 1")
        if np.any(mu2 < mu1 * mu1 - _TOLERANCE):
            raise ValueError("mu2 must be at least mu1 squared")
        if np.any(mu2 > mu1 + _TOLERANCE):
            raise ValueError("mu2 must not exceed mu1")
        return self

    @property
    def cells(self) -> int:
        return int(self.mu1.shape[0])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PropagationTable):
            return NotImplemented
        return (
            np.array_equal(self.mu1, other.mu1)
            and np.array_equal(self.mu2, other.mu2)
            and self.samples_per_cell == other.samples_per_cell
            and self.seed == other.seed
            and self.deployment_sha256 == other.deployment_sha256
        )

    __hash__ = None  # type: ignore[assignment]


# =============================================================================
# Tool schemas
# =============================================================================


class PropagationEstimateInput(BaseModel):
    """Input schema for propagation_estimate tool."""

    deployment_path: str = Field(
        min_length=1, description="Deployment record to integrate over"
    )
    samples_per_cell: int = Field(default=10_000, ge=1)
    seed: int = Field(default=0, ge=0)
    workers: int = Field(default=1, ge=1, description="Threads for per-cell tasks")
    out: str | None = Field(default=None, description="Path to write the table to")


class PropagationEstimateOutput(BaseModel):
    """Output schema for propagation_estimate tool."""

    success: bool = Field(description="Whether the operation succeeded")
    mu1: list[list[float]] | None = Field(default=None)
    mu2: list[list[float]] | None = Field(default=None)
    deployment_sha256: str | None = Field(default=None)
    path: str | None = Field(default=None)
    error: str | None = Field(default=None)
