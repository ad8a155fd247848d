"""Pydantic models for the geometry category.

Domain types (Point, Deployment) and the input/output schemas of the
geometry tools.
"""

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator


class Point(BaseModel):
    """A position on the wrap-around square (km)."""

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    x: float
    y: float

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y], dtype=float)


class Deployment(BaseModel):
    """BS positions on a wrap-around square with a pathloss law.

    Immutable after construction; safe to share between workers.
    """

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    bs_positions: tuple[tuple[float, float], ...] = Field(
        min_length=1,
        description="One (x, y) pair per BS in km",
    )
    side: float = Field(gt=0, description="Side length of the square region (km)")
    alpha: float = Field(gt=2, description="Pathloss exponent")
    min_dist: float = Field(gt=0, description="UE-BS exclusion radius (km)")

    @model_validator(mode="after")
    def _check_region(self) -> "Deployment":
        for x, y in self.bs_positions:
            if not (0.0 <= x < self.side and 0.0 <= y < self.side):
                msg = f"BS position ({x}, {y}) outside [0, {self.side})^2"
                raise ValueError(msg)
        if self.min_dist >= self.side / (2 * self.cells):
            msg = (
                f"min_dist {self.min_dist} must be below side/(2L) = "
                f"{self.side / (2 * self.cells)}"
            )
            raise ValueError(msg)
        return self

    @property
    def cells(self) -> int:
        """Number of cells L."""
        return len(self.bs_positions)

    @property
    def positions(self) -> np.ndarray:
        """BS positions as an (L, 2) array."""
        return np.asarray(self.bs_positions, dtype=float)


# =============================================================================
# Tool schemas
# =============================================================================


class GeometryDeployInput(BaseModel):
    """Input schema for geometry_deploy tool."""

    cells: int = Field(ge=1, description="Number of BSs L")
    density: float = Field(default=25.0, gt=0, description="BSs per km^2")
    seed: int = Field(default=0, ge=0, description="Generator seed")
    alpha: float = Field(default=3.0, gt=2, description="Pathloss exponent")
    min_dist_fraction: float = Field(
        default=1e-3,
        gt=0,
        description="Exclusion radius as a fraction of the side length",
    )
    out: str | None = Field(
        default=None, description="Path to write the deployment record to"
    )


class GeometryDeployOutput(BaseModel):
    """Output schema for geometry_deploy tool."""

    success: bool = Field(description="Whether the operation succeeded")
    deployment: Deployment | None = Field(default=None)
    sha256: str | None = Field(
        default=None, description="Hash of the serialized deployment record"
    )
    path: str | None = Field(default=None, description="Written file, if any")
    error: str | None = Field(default=None)
