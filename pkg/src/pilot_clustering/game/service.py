"""Coalition formation for pilot clustering.

BSs are players. A BS may leave its coalition for another one (or for a new
singleton) when its own utility strictly improves and every member of the
target coalition weakly agrees. Each join request costs the asking BS one
unit of its searching budget; once the budget is exceeded its restricted
utility drops to 0, which ends its activity and bounds the dynamics.
"""

import logging
from collections.abc import Iterator, Sequence

import numpy as np
from cachetools import LRUCache

from pilot_clustering._core.codec import (
    format_cells,
    parse_cells,
    parse_record,
    write_record,
)
from pilot_clustering._core.config import get_settings
from pilot_clustering._core.exceptions import (
    InvalidParameterError,
    RecordFormatError,
)
from pilot_clustering.game.models import (
    EMPTY,
    CoalitionStructure,
    Deviation,
    FormationTrace,
    GameState,
    Objective,
)
from pilot_clustering.game.partitions import (
    check_partition_limit,
    restricted_growth_strings,
)
from pilot_clustering.propagation.models import PropagationTable
from pilot_clustering.spectral.models import Scheme, SystemParams
from pilot_clustering.spectral.service import cell_utilities

logger = logging.getLogger(__name__)


def broadcast_budgets(budgets: int | Sequence[int], cells: int) -> tuple[int, ...]:
    """Expand a scalar budget to every BS and validate a per-BS one."""
    if isinstance(budgets, int):
        values = (budgets,) * cells
    else:
        values = tuple(int(q) for q in budgets)
    if len(values) != cells:
        msg = f"Expected {cells} budgets, got {len(values)}"
        raise InvalidParameterError(msg)
    if any(q < 0 for q in values):
        msg = f"Budgets must be non-negative, got {values}"
        raise InvalidParameterError(msg)
    return values


class UtilityEvaluator:
    """Memoised per-cell utilities for one (params, table, scheme) setting."""

    def __init__(
        self,
        params: SystemParams,
        table: PropagationTable,
        scheme: Scheme,
        cache_size: int | None = None,
    ) -> None:
        if table.cells != params.cells:
            msg = f"Table has {table.cells} cells, params {params.cells}"
            raise InvalidParameterError(msg)
        self.params = params
        self.table = table
        self.scheme = scheme
        self._cache: LRUCache[tuple[int, ...], np.ndarray] = LRUCache(
            maxsize=cache_size or get_settings().utility_cache_size
        )

    def utilities(self, structure: CoalitionStructure) -> np.ndarray:
        values = self._cache.get(structure.labels)
        if values is None:
            values = cell_utilities(structure, self.params, self.table, self.scheme)
            values.setflags(write=False)
            self._cache[structure.labels] = values
        return values

    def utility(self, cell: int, structure: CoalitionStructure) -> float:
        return float(self.utilities(structure)[cell])

    def restricted(
        self, cell: int, structure: CoalitionStructure, eta: int, budget: int
    ) -> float:
        """Utility while eta <= budget, 0 afterwards."""
        return self.utility(cell, structure) if eta <= budget else 0.0


class PilotGame:
    """The pilot clustering game with searching budgets.

    Example:
        >>> game = PilotGame(params, table, Scheme.MRC, budgets=100)
        >>> trace = game.run(seed=7)
        >>> game.is_individually_stable(trace.final, trace.eta)
        True
    """

    def __init__(
        self,
        params: SystemParams,
        table: PropagationTable,
        scheme: Scheme,
        budgets: int | Sequence[int],
        cache_size: int | None = None,
    ) -> None:
        self.evaluator = UtilityEvaluator(params, table, scheme, cache_size)
        self.cells = params.cells
        self.budgets = broadcast_budgets(budgets, self.cells)

    def restricted(
        self, cell: int, structure: CoalitionStructure, eta: Sequence[int]
    ) -> float:
        return self.evaluator.restricted(cell, structure, eta[cell], self.budgets[cell])

    def candidate_targets(
        self, structure: CoalitionStructure, cell: int
    ) -> list[frozenset[int]]:
        """Every block except the cell's own, plus EMPTY if the cell has partners."""
        own = structure.block_of(cell)
        targets = [block for block in structure.blocks if block != own]
        if len(own) > 1:
            targets.append(EMPTY)
        return targets

    def improves(
        self,
        structure: CoalitionStructure,
        cell: int,
        target: frozenset[int],
        eta: Sequence[int],
    ) -> bool:
        moved = structure.moved(cell, target)
        return self.restricted(cell, moved, eta) > self.restricted(cell, structure, eta)

    def is_admissible(
        self,
        structure: CoalitionStructure,
        cell: int,
        target: frozenset[int],
        eta: Sequence[int],
    ) -> bool:
        """Strict gain for the mover, no loss for any member of ``target``."""
        if not self.improves(structure, cell, target, eta):
            return False
        moved = structure.moved(cell, target)
        return all(
            self.restricted(member, moved, eta)
            >= self.restricted(member, structure, eta)
            for member in target
        )

    def blocking_moves(
        self, structure: CoalitionStructure, eta: Sequence[int]
    ) -> list[tuple[int, frozenset[int]]]:
        """Every admissible (cell, target) pair under the given counters."""
        return [
            (cell, target)
            for cell in range(self.cells)
            for target in self.candidate_targets(structure, cell)
            if self.is_admissible(structure, cell, target, eta)
        ]

    def is_individually_stable(
        self, structure: CoalitionStructure, eta: Sequence[int]
    ) -> bool:
        return not self.blocking_moves(structure, eta)

    def _scan(
        self,
        state: GameState,
        rng: np.random.Generator,
        deviations: list[Deviation],
    ) -> bool:
        """One pass over the BSs; True as soon as a deviation happens."""
        for cell in (int(c) for c in rng.permutation(self.cells)):
            if state.exhausted(cell):
                continue
            structure = state.structure
            profitable = [
                target
                for target in self.candidate_targets(structure, cell)
                if self.improves(structure, cell, target, state.eta)
            ]
            for index in rng.permutation(len(profitable)):
                target = profitable[int(index)]
                # the asker's own counter grows with every request
                if not self.improves(structure, cell, target, state.eta):
                    continue
                state.eta[cell] += 1
                if not self.is_admissible(structure, cell, target, state.eta):
                    continue
                state.structure = structure.moved(cell, target)
                state.deviations += 1
                deviations.append(
                    Deviation(
                        t=state.deviations,
                        cell=cell,
                        source=tuple(sorted(structure.block_of(cell))),
                        target=tuple(sorted(target)),
                        eta=tuple(state.eta),
                    )
                )
                logger.debug(
                    "t=%d: cell %d moved %s -> %s",
                    state.deviations,
                    cell,
                    structure,
                    state.structure,
                )
                return True
        return False

    def run(
        self, seed: int, initial: CoalitionStructure | None = None
    ) -> FormationTrace:
        """Run the formation dynamics until no BS can deviate.

        A pass without deviation ends the run only once the structure is
        certified individually stable under the final counters; otherwise
        another pass follows. Every such pass issues at least one request, so
        at most sum(q_j + 1) requests are made.
        """
        start = initial or CoalitionStructure.singletons(self.cells)
        if start.cells != self.cells:
            msg = f"Initial structure has {start.cells} cells, expected {self.cells}"
            raise InvalidParameterError(msg)

        rng = np.random.default_rng(seed)
        state = GameState(structure=start, eta=[0] * self.cells, budgets=self.budgets)
        deviations: list[Deviation] = []
        passes = 0
        while True:
            passes += 1
            if self._scan(state, rng, deviations):
                continue
            if self.is_individually_stable(state.structure, state.eta):
                break
            logger.debug("Pass %d ended without certification, rescanning", passes)

        logger.info(
            "Formation (seed %d) reached %s after %d deviations and %d requests",
            seed,
            state.structure,
            state.deviations,
            sum(state.eta),
        )
        return FormationTrace(
            initial=start,
            final=state.structure,
            deviations=deviations,
            eta=tuple(state.eta),
            budgets=self.budgets,
            seed=seed,
            stable=True,
        )


# =============================================================================
# Functional API
# =============================================================================


def deviate(
    structure: CoalitionStructure, cell: int, target: frozenset[int]
) -> CoalitionStructure:
    """Structure after ``cell`` joins ``target`` (EMPTY for a new singleton)."""
    return structure.moved(cell, target)


def restricted_utility(
    cell: int,
    structure: CoalitionStructure,
    eta: int,
    budget: int,
    params: SystemParams,
    table: PropagationTable,
    scheme: Scheme,
) -> float:
    return UtilityEvaluator(params, table, scheme, cache_size=1).restricted(
        cell, structure, eta, budget
    )


def is_admissible(
    structure: CoalitionStructure,
    cell: int,
    target: frozenset[int],
    state: GameState,
    params: SystemParams,
    table: PropagationTable,
    scheme: Scheme,
) -> bool:
    game = PilotGame(params, table, scheme, state.budgets)
    return game.is_admissible(structure, cell, target, state.eta)


def run_formation(
    params: SystemParams,
    table: PropagationTable,
    budgets: int | Sequence[int],
    scheme: Scheme,
    seed: int,
    initial: CoalitionStructure | None = None,
) -> FormationTrace:
    return PilotGame(params, table, scheme, budgets).run(seed, initial)


def is_individually_stable(
    structure: CoalitionStructure,
    params: SystemParams,
    table: PropagationTable,
    budgets: int | Sequence[int],
    eta: Sequence[int],
    scheme: Scheme,
) -> bool:
    if len(eta) != params.cells:
        msg = f"Expected {params.cells} search counters, got {len(eta)}"
        raise InvalidParameterError(msg)
    game = PilotGame(params, table, scheme, budgets)
    return game.is_individually_stable(structure, eta)


def enumerate_partitions(cells: int) -> Iterator[CoalitionStructure]:
    """Every coalition structure of ``cells`` cells in restricted-growth order.

    Raises:
        PartitionLimitError: Outside 1..12 cells.
    """
    for labels in restricted_growth_strings(cells):
        yield CoalitionStructure.model_construct(labels=labels)


def objective_value(utilities: np.ndarray, objective: Objective) -> float:
    total = float(utilities.sum())
    return total if objective is Objective.TOTAL_SE else total / len(utilities)


def exhaustive_optimum(
    params: SystemParams,
    table: PropagationTable,
    scheme: Scheme,
    objective: Objective = Objective.TOTAL_SE,
) -> tuple[CoalitionStructure, float]:
    """Best structure over all partitions; the first one found wins ties."""
    check_partition_limit(params.cells)
    if table.cells != params.cells:
        msg = f"Table has {table.cells} cells, params {params.cells}"
        raise InvalidParameterError(msg)

    best: CoalitionStructure | None = None
    best_value = -np.inf
    count = 0
    for structure in enumerate_partitions(params.cells):
        count += 1
        utilities = cell_utilities(structure, params, table, scheme)
        value = objective_value(utilities, objective)
        if value > best_value:
            best, best_value = structure, value
    assert best is not None
    logger.info(
        "Exhaustive search over %d partitions: %s (%s=%.6f)",
        count,
        best,
        objective.value,
        best_value,
    )
    return best, float(best_value)


# =============================================================================
# Plain-text records
# =============================================================================


def _labels_text(structure: CoalitionStructure) -> str:
    return ",".join(str(label) for label in structure.labels)


def _parse_labels(token: str) -> CoalitionStructure:
    try:
        return CoalitionStructure.from_labels(int(v) for v in token.split(","))
    except ValueError as e:
        msg = f"Invalid label list '{token}'"
        raise RecordFormatError(msg) from e


def _parse_ints(token: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in token.split(","))
    except ValueError as e:
        msg = f"Invalid integer list '{token}'"
        raise RecordFormatError(msg) from e


def dump_structure(structure: CoalitionStructure) -> str:
    return write_record(
        "structure",
        {"cells": structure.cells},
        body=[" ".join(str(label) for label in structure.labels)],
    )


def load_structure(text: str) -> CoalitionStructure:
    """Parse a ``structure`` record (one line of membership labels)."""
    record = parse_record(text, "structure")
    if len(record.body) != 1:
        raise RecordFormatError("A structure record holds exactly one label line")
    try:
        labels = [int(v) for v in record.body[0].split()]
        structure = CoalitionStructure.from_labels(labels)
    except ValueError as e:
        msg = f"Invalid label line '{record.body[0]}'"
        raise RecordFormatError(msg) from e
    if structure.cells != int(record.header("cells")):
        raise RecordFormatError("Label count does not match the cells header")
    return structure


def dump_trace(trace: FormationTrace) -> str:
    """One ``deviation`` line per move, replayable with :func:`load_trace`."""
    lines = [
        f"deviation t={d.t} cell={d.cell} source={format_cells(d.source)} "
        f"target={format_cells(d.target)} eta={','.join(str(e) for e in d.eta)}"
        for d in trace.deviations
    ]
    return write_record(
        "formation",
        {
            "initial": _labels_text(trace.initial),
            "final": _labels_text(trace.final),
            "eta": ",".join(str(e) for e in trace.eta),
            "budgets": ",".join(str(q) for q in trace.budgets),
            "seed": trace.seed,
            "stable": str(trace.stable).lower(),
        },
        body=lines,
    )


def load_trace(text: str) -> FormationTrace:
    record = parse_record(text, "formation")
    deviations = []
    for line in record.body:
        tokens = line.split()
        if not tokens or tokens[0] != "deviation":
            msg = f"Unexpected line '{line}'"
            raise RecordFormatError(msg)
        fields = dict(token.split("=", 1) for token in tokens[1:] if "=" in token)
        try:
            deviations.append(
                Deviation(
                    t=int(fields["t"]),
                    cell=int(fields["cell"]),
                    source=parse_cells(fields["source"]),
                    target=parse_cells(fields["target"]),
                    eta=_parse_ints(fields["eta"]),
                )
            )
        except (KeyError, ValueError) as e:
            msg = f"Invalid deviation line '{line}'"
            raise RecordFormatError(msg) from e

    stable = record.header("stable")
    if stable not in ("true", "false"):
        msg = f"Invalid stable flag '{stable}'"
        raise RecordFormatError(msg)
    return FormationTrace(
        initial=_parse_labels(record.header("initial")),
        final=_parse_labels(record.header("final")),
        deviations=deviations,
        eta=_parse_ints(record.header("eta")),
        budgets=_parse_ints(record.header("budgets")),
        seed=int(record.header("seed")),
        stable=stable == "true",
    )


__all__ = [
    "UtilityEvaluator",
    "PilotGame",
    "broadcast_budgets",
    "deviate",
    "restricted_utility",
    "is_admissible",
    "run_formation",
    "is_individually_stable",
    "enumerate_partitions",
    "objective_value",
    "exhaustive_optimum",
    "dump_structure",
    "load_structure",
    "dump_trace",
    "load_trace",
]
