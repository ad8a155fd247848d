"""Pydantic models for the spectral category."""

from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, model_validator


class Scheme(str, Enum):
    """Receive combining scheme."""

    MRC = "mrc"
    ZFC = "zfc"


class SystemParams(BaseModel):
    """Radio parameters shared by every cell.

    Only the ratio rho/sigma^2 is stored (``snr``); the formulas use
    sigma^2/rho = 1/snr and sigma^2/(B rho) = 1/(B snr).
    """

    model_config = ConfigDict(frozen=True)

    antennas: int = Field(ge=1, description="Antennas per BS (M)")
    pilots: int = Field(ge=1, description="Total orthogonal pilots (B)")
    symbols: int = Field(ge=2, description="Symbols per coherence frame (S)")
    snr: float = Field(gt=0, allow_inf_nan=False, description="Linear rho/sigma^2")
    cells: int = Field(ge=1, description="Cell count (L)")

    @model_validator(mode="after")
    def _check_pilot_budget(self) -> "SystemParams":
        if self.pilots % self.cells != 0:
            msg = f"B={self.pilots} is not a multiple of L={self.cells}"
            raise ValueError(msg)
        if self.pilots >= self.symbols:
            msg = f"B={self.pilots} must be smaller than S={self.symbols}"
            raise ValueError(msg)
        return self

    @classmethod
    def from_db(
        cls,
        antennas: int,
        pilots: int,
        symbols: int,
        snr_db: float,
        cells: int,
    ) -> "SystemParams":
        return cls(
            antennas=antennas,
            pilots=pilots,
            symbols=symbols,
            snr=10.0 ** (snr_db / 10.0),
            cells=cells,
        )

    @property
    def pilots_per_cell(self) -> int:
        return self.pilots // self.cells

    @property
    def prelog(self) -> float:
        """Fraction of the frame left for data, 1 - B/S."""
        return 1.0 - self.pilots / self.symbols

    def scheduled(self, coalition_size: int) -> int:
        """UEs per cell K = (B/L) * |coalition|."""
        return self.pilots_per_cell * coalition_size

    def with_antennas(self, antennas: int) -> "SystemParams":
        return self.model_copy(update={"antennas": antennas})


class OracleEstimate(BaseModel):
    """Monte-Carlo estimate of a cell's position-averaged ergodic SE."""

    model_config = ConfigDict(frozen=True)

    mean: float
    stderr: float = Field(ge=0)
    trials: int = Field(ge=1)


# =============================================================================
# Tool schemas
# =============================================================================


class RadioInput(BaseModel):
    """Radio parameters shared by tools; B is derived as L * pilots_per_cell."""

    antennas: int = Field(default=100, ge=1, description="Antennas per BS (M)")
    pilots_per_cell: int = Field(
        default=10, ge=1, description="Unique pilots per cell (B/L)"
    )
    symbols: int = Field(default=400, ge=2, description="Symbols per frame (S)")
    snr_db: float = Field(default=5.0, description="Uplink SNR in dB")
    scheme: Scheme = Field(default=Scheme.MRC)

    def system_params(self, cells: int) -> SystemParams:
        return SystemParams.from_db(
            antennas=self.antennas,
            pilots=self.pilots_per_cell * cells,
            symbols=self.symbols,
            snr_db=self.snr_db,
            cells=cells,
        )


class _StructureInput(RadioInput):
    labels: list[int] = Field(
        min_length=1, description="Coalition label of every cell (0-based)"
    )


class SpectralEvaluateInput(_StructureInput):
    """Input schema for spectral_evaluate tool."""

    table_path: str = Field(min_length=1, description="Propagation table record")


class SpectralEvaluateOutput(BaseModel):
    """Output schema for spectral_evaluate tool."""

    success: bool = Field(description="Whether the operation succeeded")
    utilities: list[float] | None = Field(default=None, description="Per-cell SE")
    interference: list[float | None] | None = Field(
        default=None, description="Per-cell I_j (null when zero-forcing is infeasible)"
    )
    total_se: float | None = Field(default=None)
    error: str | None = Field(default=None)


class SpectralOracleInput(_StructureInput):
    """Input schema for spectral_oracle tool."""

    deployment_path: str = Field(min_length=1, description="Deployment record")
    cell: int = Field(ge=0, description="Cell whose SE is estimated")
    trials: int = Field(default=1000, ge=1)
    seed: int = Field(default=0, ge=0)
    table_path: str | None = Field(
        default=None, description="Optional table for the closed-form comparison"
    )


class SpectralOracleOutput(BaseModel):
    """Output schema for spectral_oracle tool."""

    success: bool = Field(description="Whether the operation succeeded")
    estimate: OracleEstimate | None = Field(default=None)
    closed_form: float | None = Field(
        default=None, description="Closed-form bound for the same cell"
    )
    error: str | None = Field(default=None)
