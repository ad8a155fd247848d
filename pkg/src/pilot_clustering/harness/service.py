"""Seeded multi-trial experiment sweeps.

Every trial draws its own deployment, estimates its propagation table once
and evaluates every (M, scheme, method) combination on it. Seeds are pure
functions of (master_seed, trial, purpose), so trials can run in any order on
any number of workers and still produce the same records.
"""

import io
import logging
import time
from collections.abc import Iterable, Iterator, Mapping
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd
from pydantic import ValidationError

from pilot_clustering._core.config import get_settings, read_key_value_file
from pilot_clustering._core.exceptions import (
    ConfigurationError,
    InvalidParameterError,
    RecordFormatError,
)
from pilot_clustering.game.models import CoalitionStructure
from pilot_clustering.game.partitions import check_partition_limit
from pilot_clustering.game.service import PilotGame, exhaustive_optimum
from pilot_clustering.geometry.service import generate_deployment
from pilot_clustering.harness.models import (
    RECORD_COLUMNS,
    ExperimentConfig,
    Method,
    ResultRecord,
    SummaryRow,
)
from pilot_clustering.propagation.models import PropagationTable
from pilot_clustering.propagation.service import estimate_propagation
from pilot_clustering.spectral.models import Scheme

logger = logging.getLogger(__name__)

PURPOSE_TAGS = {"deployment": 0, "propagation": 1, "formation": 2}

SUMMARY_METRICS = (
    "mean_se",
    "total_se",
    "mean_coalition_size",
    "mean_searches",
    "deviations",
)


def derive_seed(master_seed: int, trial: int, purpose: str) -> int:
    """Independent 32-bit seed for one purpose of one trial."""
    sequence = np.random.SeedSequence([master_seed, trial, PURPOSE_TAGS[purpose]])
    return int(sequence.generate_state(1)[0])


def load_experiment_config(
    path: str | Path | None = None,
    overrides: Mapping[str, Any] | None = None,
) -> ExperimentConfig:
    """Build a config from defaults, environment, file and overrides.

    Later sources win: file values beat environment variables, overrides
    beat the file.

    Raises:
        ConfigurationError: On unknown keys or invalid values.
    """
    values: dict[str, Any] = dict(read_key_value_file(path)) if path else {}
    values.update({k: v for k, v in (overrides or {}).items() if v is not None})
    try:
        return ExperimentConfig(**values)
    except ValidationError as e:
        keys = sorted(
            {".".join(str(p) for p in err["loc"]) or "config" for err in e.errors()}
        )
        msg = f"Invalid experiment configuration ({', '.join(keys)}): {e}"
        raise ConfigurationError(msg) from e


def _structure_for(
    method: Method,
    game: PilotGame,
    table: PropagationTable,
    config: ExperimentConfig,
    formation_seed: int,
) -> tuple[CoalitionStructure, tuple[int, ...], int]:
    cells = config.cells
    if method is Method.FORMATION:
        trace = game.run(formation_seed)
        return trace.final, trace.eta, len(trace.deviations)
    if method is Method.SINGLETONS:
        structure = CoalitionStructure.singletons(cells)
    elif method is Method.GRAND:
        structure = CoalitionStructure.grand(cells)
    else:
        structure, _ = exhaustive_optimum(
            game.evaluator.params, table, game.evaluator.scheme, config.objective
        )
    return structure, (0,) * cells, 0


def run_trial(config: ExperimentConfig, trial: int) -> list[ResultRecord]:
    """Every (M, scheme, method) record of one trial, in config order."""
    deployment = generate_deployment(
        cells=config.cells,
        density=config.density,
        seed=derive_seed(config.master_seed, trial, "deployment"),
        alpha=config.alpha,
        min_dist_fraction=config.min_dist_fraction,
    )
    table = estimate_propagation(
        deployment,
        samples_per_cell=config.mu_samples,
        seed=derive_seed(config.master_seed, trial, "propagation"),
    )
    formation_seed = derive_seed(config.master_seed, trial, "formation")

    records = []
    for antennas in config.antennas:
        params = config.system_params(antennas)
        for scheme in config.schemes:
            game = PilotGame(params, table, Scheme(scheme), config.budget)
            for method in config.methods:
                start = time.perf_counter()
                structure, eta, deviations = _structure_for(
                    method, game, table, config, formation_seed
                )
                elapsed = time.perf_counter() - start
                utilities = game.evaluator.utilities(structure)
                records.append(
                    ResultRecord(
                        trial=trial,
                        antennas=antennas,
                        scheme=scheme,
                        method=method,
                        mean_se=float(utilities.mean()),
                        total_se=float(utilities.sum()),
                        mean_coalition_size=config.cells / structure.block_count,
                        mean_searches=sum(eta) / config.cells,
                        deviations=deviations,
                        stable=game.is_individually_stable(structure, eta),
                        wall_time=elapsed if config.timing else None,
                    )
                )
    logger.info("Trial %d finished with %d records", trial, len(records))
    return records


def run_experiment(
    config: ExperimentConfig, workers: int | None = None
) -> Iterator[ResultRecord]:
    """Yield the records of every trial in trial order.

    Raises:
        PartitionLimitError: If the exhaustive method is requested for L > 12.
    """
    if Method.EXHAUSTIVE in config.methods:
        check_partition_limit(config.cells)
    workers = workers or get_settings().workers
    trial_ids = range(config.trials)
    logger.info(
        "Running %d trials of L=%d on %d worker(s)",
        config.trials,
        config.cells,
        workers,
    )

    if workers > 1 and config.trials > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for records in pool.map(partial(run_trial, config), trial_ids):
                yield from records
    else:
        for trial in trial_ids:
            yield from run_trial(config, trial)


# =============================================================================
# CSV and aggregation
# =============================================================================


def records_frame(records: Iterable[ResultRecord]) -> pd.DataFrame:
    rows = [record.model_dump(mode="json") for record in records]
    return pd.DataFrame(rows, columns=RECORD_COLUMNS)


def records_to_csv(records: Iterable[ResultRecord], timing: bool = False) -> str:
    """CSV with a fixed column order; wall time only when ``timing`` is set."""
    frame = records_frame(records)
    if not timing:
        frame = frame.drop(columns=["wall_time"])
    return frame.to_csv(index=False, lineterminator="\n")


def records_from_csv(text: str) -> list[ResultRecord]:
    """Parse records written by :func:`records_to_csv`.

    Raises:
        RecordFormatError: On missing columns or invalid values.
    """
    try:
        frame = pd.read_csv(io.StringIO(text), float_precision="round_trip")
    except (ValueError, pd.errors.ParserError) as e:
        msg = f"Unreadable records CSV: {e}"
        raise RecordFormatError(msg) from e
    missing = [c for c in RECORD_COLUMNS if c != "wall_time" and c not in frame.columns]
    if missing:
        msg = f"Records CSV lacks columns: {', '.join(missing)}"
        raise RecordFormatError(msg)

    frame = frame.astype(object).where(frame.notna(), None)
    try:
        return [ResultRecord(**row) for row in frame.to_dict(orient="records")]
    except ValidationError as e:
        msg = f"Invalid record in CSV: {e}"
        raise RecordFormatError(msg) from e


def aggregate(records: Iterable[ResultRecord]) -> list[SummaryRow]:
    """Means and standard errors per (M, scheme, method), in first-seen order.

    A group with a single trial reports a standard error of 0.
    """
    frame = records_frame(records)
    if frame.empty:
        msg = "Cannot aggregate an empty record set"
        raise InvalidParameterError(msg)
    frame["stable"] = frame["stable"].astype(float)

    keys = ["antennas", "scheme", "method"]
    grouped = frame.groupby(keys, sort=False)
    means = grouped[list(SUMMARY_METRICS)].mean()
    errors = grouped[list(SUMMARY_METRICS)].sem().fillna(0.0)
    counts = grouped.size()
    stable = grouped["stable"].mean()

    rows = []
    for key in means.index:
        antennas, scheme, method = key
        values: dict[str, Any] = {
            "antennas": antennas,
            "scheme": scheme,
            "method": method,
            "trials": int(counts[key]),
            "stable_fraction": float(stable[key]),
        }
        for metric in SUMMARY_METRICS:
            values[metric] = float(means.loc[key, metric])
            values[f"{metric}_stderr"] = float(errors.loc[key, metric])
        rows.append(SummaryRow(**values))
    return rows


def summary_to_csv(rows: Iterable[SummaryRow]) -> str:
    frame = pd.DataFrame(
        [row.model_dump(mode="json") for row in rows],
        columns=list(SummaryRow.model_fields),
    )
    return frame.to_csv(index=False, lineterminator="\n")


__all__ = [
    "PURPOSE_TAGS",
    "derive_seed",
    "load_experiment_config",
    "run_trial",
    "run_experiment",
    "records_frame",
    "records_to_csv",
    "records_from_csv",
    "aggregate",
    "summary_to_csv",
]
