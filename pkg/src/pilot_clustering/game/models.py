"""Pydantic models for the game category."""

from collections.abc import Iterable
from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from pilot_clustering._core.exceptions import (
    InvalidDeviationError,
    InvalidParameterError,
)
from pilot_clustering.game.partitions import canonical_labels, is_restricted_growth
from pilot_clustering.spectral.models import RadioInput

#: Deviation target meaning "leave and stand alone".
EMPTY: frozenset[int] = frozenset()


class Objective(str, Enum):
    """What the exhaustive search maximises."""

    TOTAL_SE = "total-se"
    PER_CELL_MEAN = "per-cell-mean"


class CoalitionStructure(BaseModel):
    """Partition of the cells into pilot-sharing coalitions.

    Stored as canonical restricted-growth labels, so equal partitions compare
    and hash equal regardless of how they were built.
    """

    model_config = ConfigDict(frozen=True)

    labels: tuple[int, ...] = Field(min_length=1)

    @field_validator("labels")
    @classmethod
    def _check_canonical(cls, value: tuple[int, ...]) -> tuple[int, ...]:
        if not is_restricted_growth(value):
            msg = f"Labels {value} are not in restricted-growth form"
            raise ValueError(msg)
        return value

    @classmethod
    def from_labels(cls, labels: Iterable[int]) -> "CoalitionStructure":
        """Build from arbitrary labels; equal labels mean same coalition."""
        return cls(labels=canonical_labels(labels))

    @classmethod
    def from_blocks(
        cls, blocks: Iterable[Iterable[int]], cells: int
    ) -> "CoalitionStructure":
        """Build from disjoint blocks covering 0..cells-1.

        Raises:
            InvalidParameterError: If the blocks overlap or leave a cell out.
        """
        labels = [-1] * cells
        for index, block in enumerate(blocks):
            for cell in block:
                if not 0 <= cell < cells or labels[cell] != -1:
                    msg = f"Cell {cell} is out of range or in two blocks"
                    raise InvalidParameterError(msg)
                labels[cell] = index
        if -1 in labels:
            msg = f"Cell {labels.index(-1)} belongs to no block"
            raise InvalidParameterError(msg)
        return cls.from_labels(labels)

    @classmethod
    def singletons(cls, cells: int) -> "CoalitionStructure":
        return cls(labels=tuple(range(cells)))

    @classmethod
    def grand(cls, cells: int) -> "CoalitionStructure":
        return cls(labels=(0,) * cells)

    @property
    def cells(self) -> int:
        return len(self.labels)

    @property
    def blocks(self) -> tuple[frozenset[int], ...]:
        """Blocks in label order."""
        members: dict[int, set[int]] = {}
        for cell, label in enumerate(self.labels):
            members.setdefault(label, set()).add(cell)
        return tuple(frozenset(members[label]) for label in sorted(members))

    @property
    def block_count(self) -> int:
        return max(self.labels) + 1

    @property
    def member_sizes(self) -> tuple[int, ...]:
        """|coalition of cell l| for every cell l."""
        counts = [0] * self.block_count
        for label in self.labels:
            counts[label] += 1
        return tuple(counts[label] for label in self.labels)

    def block_of(self, cell: int) -> frozenset[int]:
        label = self.labels[cell]
        return frozenset(c for c, other in enumerate(self.labels) if other == label)

    def moved(self, cell: int, target: frozenset[int]) -> "CoalitionStructure":
        """Structure after ``cell`` leaves its block for ``target`` (or EMPTY).

        Raises:
            InvalidDeviationError: If target is the cell's own block or not a
                block of this structure.
        """
        if not 0 <= cell < self.cells:
            msg = f"Cell index {cell} outside 0..{self.cells - 1}"
            raise InvalidDeviationError(msg)
        target = frozenset(target)
        if target == self.block_of(cell):
            msg = f"Cell {cell} is already in {sorted(target)}"
            raise InvalidDeviationError(msg)

        labels = list(self.labels)
        if target == EMPTY:
            if len(self.block_of(cell)) == 1:
                msg = f"Cell {cell} is already alone"
                raise InvalidDeviationError(msg)
            labels[cell] = self.block_count
        else:
            if target not in self.blocks:
                msg = f"{sorted(target)} is not a coalition of {self}"
                raise InvalidDeviationError(msg)
            labels[cell] = self.labels[min(target)]
        return self.from_labels(labels)

    def __str__(self) -> str:
        return "{" + ",".join(
            "{" + ",".join(str(c) for c in sorted(block)) + "}" for block in self.blocks
        ) + "}"


class Deviation(BaseModel):
    """One accepted move of the formation dynamics."""

    model_config = ConfigDict(frozen=True)

    t: int = Field(ge=1, description="Deviation counter after this move")
    cell: int = Field(ge=0)
    source: tuple[int, ...] = Field(description="Block the cell left")
    target: tuple[int, ...] = Field(
        description="Block joined; empty for a new singleton"
    )
    eta: tuple[int, ...] = Field(description="Search counters when the move was made")


class GameState(BaseModel):
    """Mutable state of one formation run."""

    structure: CoalitionStructure
    eta: list[int]
    budgets: tuple[int, ...]
    deviations: int = Field(default=0, ge=0)

    @model_validator(mode="after")
    def _check_counters(self) -> "GameState":
        cells = self.structure.cells
        if len(self.eta) != cells or len(self.budgets) != cells:
            msg = f"eta and budgets must have {cells} entries"
            raise ValueError(msg)
        if any(e < 0 for e in self.eta) or any(q < 0 for q in self.budgets):
            raise ValueError("Search counters and budgets must be non-negative")
        return self

    def exhausted(self, cell: int) -> bool:
        """Whether the BS has issued more requests than its budget allows."""
        return self.eta[cell] > self.budgets[cell]


class FormationTrace(BaseModel):
    """Replayable record of one formation run."""

    initial: CoalitionStructure
    final: CoalitionStructure
    deviations: list[Deviation] = Field(default_factory=list)
    eta: tuple[int, ...]
    budgets: tuple[int, ...]
    seed: int
    stable: bool

    @property
    def requests(self) -> int:
        """Join requests issued over the whole run."""
        return sum(self.eta)

    def replay(self) -> CoalitionStructure:
        """Re-apply every deviation from the initial structure."""
        structure = self.initial
        for deviation in self.deviations:
            if frozenset(deviation.source) != structure.block_of(deviation.cell):
                msg = f"Deviation {deviation.t} does not start from the recorded block"
                raise InvalidDeviationError(msg)
            structure = structure.moved(deviation.cell, frozenset(deviation.target))
        return structure


# =============================================================================
# Tool schemas
# =============================================================================


class _GameInput(RadioInput):
    table_path: str = Field(min_length=1, description="Propagation table record")


class GameFormInput(_GameInput):
    """Input schema for game_form tool."""

    budget: int = Field(default=100, ge=0, description="Search budget q per BS")
    seed: int = Field(default=0, ge=0)
    initial_labels: list[int] | None = Field(
        default=None, description="Starting structure (default: all singletons)"
    )
    out: str | None = Field(default=None, description="Path to write the trace to")


class GameFormOutput(BaseModel):
    """Output schema for game_form tool."""

    success: bool = Field(description="Whether the operation succeeded")
    trace: FormationTrace | None = Field(default=None)
    utilities: list[float] | None = Field(default=None)
    total_se: float | None = Field(default=None)
    path: str | None = Field(default=None)
    error: str | None = Field(default=None)


class GameExhaustiveInput(_GameInput):
    """Input schema for game_exhaustive tool."""

    objective: Objective = Field(default=Objective.TOTAL_SE)
    out: str | None = Field(default=None, description="Path to write the structure to")


class GameExhaustiveOutput(BaseModel):
    """Output schema for game_exhaustive tool."""

    success: bool = Field(description="Whether the operation succeeded")
    structure: CoalitionStructure | None = Field(default=None)
    value: float | None = Field(default=None, description="Objective at the optimum")
    total_se: float | None = Field(default=None)
    partitions: int | None = Field(default=None, description="Partitions evaluated")
    path: str | None = Field(default=None)
    error: str | None = Field(default=None)


class GameStableCheckInput(_GameInput):
    """Input schema for game_stable_check tool."""

    structure_path: str = Field(min_length=1, description="Coalition structure record")
    budget: int = Field(default=100, ge=0)
    eta: list[int] | None = Field(
        default=None, description="Search counters (default: all zero)"
    )


class BlockingMove(BaseModel):
    cell: int
    target: list[int]


class GameStableCheckOutput(BaseModel):
    """Output schema for game_stable_check tool."""

    success: bool = Field(description="Whether the operation succeeded")
    stable: bool | None = Field(default=None)
    blocking: list[BlockingMove] = Field(
        default_factory=list, description="Admissible deviations, if any"
    )
    error: str | None = Field(default=None)
