"""Pydantic models for the harness category."""

from enum import Enum
from typing import Annotated, Any

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from pydantic_settings import BaseSettings, NoDecode, SettingsConfigDict

from pilot_clustering.game.models import Objective
from pilot_clustering.spectral.models import Scheme, SystemParams


class Method(str, Enum):
    """How a trial picks its coalition structure."""

    FORMATION = "formation"
    SINGLETONS = "singletons"
    GRAND = "grand"
    EXHAUSTIVE = "exhaustive"


def _split_list(value: Any) -> Any:
    if isinstance(value, str):
        return [item.strip() for item in value.split(",") if item.strip()]
    return value


class ExperimentConfig(BaseSettings):
    """Parameters of one experiment sweep.

    Defaults reproduce the reference setup (S=400, 5 dB, alpha=3, 10 pilots
    per BS, q=100, 25 BS/km^2) at desk-scale trial counts. List fields
    accept comma-separated strings, so they can come from the environment
    or a key=value file.
    """

    model_config = SettingsConfigDict(
        env_prefix="PILOT_EXPERIMENT_", extra="forbid", frozen=True
    )

    cells: int = Field(default=7, ge=1, description="Number of BSs (L)")
    density: float = Field(default=25.0, gt=0, description="BSs per km^2")
    pilots_per_cell: int = Field(default=10, ge=1, description="B/L")
    symbols: int = Field(default=400, ge=2, description="Symbols per frame (S)")
    snr_db: float = Field(default=5.0, description="Uplink SNR in dB")
    alpha: float = Field(default=3.0, gt=2, description="Pathloss exponent")
    antennas: Annotated[list[int], NoDecode] = Field(
        default_factory=lambda: [100, 200, 300, 400, 500],
        min_length=1,
        description="Antenna counts M to sweep",
    )
    schemes: Annotated[list[Scheme], NoDecode] = Field(
        default_factory=lambda: [Scheme.MRC, Scheme.ZFC], min_length=1
    )
    budget: int = Field(default=100, ge=0, description="Search budget q per BS")
    trials: int = Field(default=10, ge=1, description="Random deployments")
    mu_samples: int = Field(default=10_000, ge=1, description="UE samples per cell")
    master_seed: int = Field(default=0, ge=0)
    objective: Objective = Field(default=Objective.TOTAL_SE)
    methods: Annotated[list[Method], NoDecode] = Field(
        default_factory=lambda: list(Method), min_length=1
    )
    min_dist_fraction: float = Field(default=1e-3, gt=0, lt=1)
    timing: bool = Field(default=False, description="Write wall time to the CSV")

    split_lists = field_validator("antennas", "schemes", "methods", mode="before")(
        _split_list
    )

    @field_validator("antennas")
    @classmethod
    def _check_antennas(cls, value: list[int]) -> list[int]:
        if any(m < 1 for m in value):
            msg = f"Antenna counts must be positive, got {value}"
            raise ValueError(msg)
        return value

    @model_validator(mode="after")
    def _check_pilots(self) -> "ExperimentConfig":
        if self.pilots >= self.symbols:
            msg = f"B={self.pilots} pilots leave no data symbols in S={self.symbols}"
            raise ValueError(msg)
        return self

    @property
    def pilots(self) -> int:
        return self.cells * self.pilots_per_cell

    def system_params(self, antennas: int) -> SystemParams:
        return SystemParams.from_db(
            antennas=antennas,
            pilots=self.pilots,
            symbols=self.symbols,
            snr_db=self.snr_db,
            cells=self.cells,
        )


class ResultRecord(BaseModel):
    """Outcome of one (trial, M, scheme, method) combination."""

    model_config = ConfigDict(frozen=True)

    trial: int = Field(ge=0)
    antennas: int = Field(ge=1)
    scheme: Scheme
    method: Method
    mean_se: float = Field(description="Mean per-cell SE in bit/s/Hz")
    total_se: float
    mean_coalition_size: float = Field(description="L / number of coalitions")
    mean_searches: float = Field(ge=0, description="Mean join requests per BS")
    deviations: int = Field(ge=0)
    stable: bool
    wall_time: float | None = Field(default=None, description="Seconds")

    @model_validator(mode="after")
    def _formation_is_stable(self) -> "ResultRecord":
        if self.method is Method.FORMATION and not self.stable:
            raise ValueError("Formation records must be individually stable")
        return self


RECORD_COLUMNS = list(ResultRecord.model_fields)


class SummaryRow(BaseModel):
    """Means and standard errors over trials for one (M, scheme, method)."""

    antennas: int
    scheme: Scheme
    method: Method
    trials: int
    mean_se: float
    mean_se_stderr: float
    total_se: float
    total_se_stderr: float
    mean_coalition_size: float
    mean_coalition_size_stderr: float
    mean_searches: float
    mean_searches_stderr: float
    deviations: float
    deviations_stderr: float
    stable_fraction: float


# =============================================================================
# Tool schemas
# =============================================================================


class HarnessSweepInput(BaseModel):
    """Input schema for harness_sweep tool."""

    config_path: str | None = Field(default=None, description="key=value config file")
    overrides: dict[str, Any] = Field(
        default_factory=dict,
        description="Config values taking precedence over the file",
    )
    out: str | None = Field(default=None, description="Path for the records CSV")
    summary_out: str | None = Field(
        default=None, description="Path for the summary CSV"
    )
    workers: int | None = Field(default=None, ge=1)


class HarnessSweepOutput(BaseModel):
    """Output schema for harness_sweep tool."""

    success: bool = Field(description="Whether the operation succeeded")
    records: int | None = Field(default=None, description="Records produced")
    summary: list[SummaryRow] | None = Field(default=None)
    path: str | None = Field(default=None)
    summary_path: str | None = Field(default=None)
    error: str | None = Field(default=None)
