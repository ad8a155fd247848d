"""Monte-Carlo estimation of the propagation moment matrices.

For a UE uniformly placed in cell l, the ratio d_j(z)/d_l(z) compares the
channel variance towards BS j with the one towards the serving BS. Its first
two moments, one column per cell, fingerprint the network topology. They do
not depend on M, B or the coalition structure, so one table serves a whole
sweep.
"""

import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from pilot_clustering._core.codec import (
    format_row,
    parse_floats,
    parse_record,
    write_record,
)
from pilot_clustering._core.exceptions import InvalidParameterError, RecordFormatError
from pilot_clustering.geometry.models import Deployment
from pilot_clustering.geometry.service import (
    channel_variances,
    deployment_sha256,
    sample_ues_in_cell,
)
from pilot_clustering.propagation.models import PropagationTable

logger = logging.getLogger(__name__)

DEFAULT_SAMPLES_PER_CELL = 10_000


def cell_stream(seed: int, cell: int) -> np.random.Generator:
    """Independent generator for one cell, derived from (seed, cell)."""
    return np.random.default_rng([seed, cell])


def _estimate_column(
    deployment: Deployment, cell: int, samples: int, seed: int
) -> tuple[np.ndarray, np.ndarray]:
    positions = sample_ues_in_cell(deployment, cell, samples, cell_stream(seed, cell))
    variances = channel_variances(deployment, positions)
    ratios = variances / variances[:, [cell]]
    logger.debug("Cell %d: %d samples integrated", cell, samples)
    return ratios.mean(axis=0), (ratios * ratios).mean(axis=0)


def estimate_propagation(
    deployment: Deployment,
    samples_per_cell: int = DEFAULT_SAMPLES_PER_CELL,
    seed: int = 0,
    workers: int = 1,
) -> PropagationTable:
    """Estimate mu1 and mu2 by averaging over ``samples_per_cell`` UEs per cell.

    Diagonal entries are set to 1 analytically. The result is deterministic
    for a fixed seed regardless of ``workers``.

    Raises:
        InvalidParameterError: If samples_per_cell < 1.
        DegenerateCellError: If a cell cannot be sampled.
    """
    if samples_per_cell < 1:
        msg = f"samples_per_cell must be positive, got {samples_per_cell}"
        raise InvalidParameterError(msg)

    cells = deployment.cells
    if workers > 1 and cells > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            columns = list(
                pool.map(
                    lambda cell: _estimate_column(
                        deployment, cell, samples_per_cell, seed
                    ),
                    range(cells),
                )
            )
    else:
        columns = [
            _estimate_column(deployment, cell, samples_per_cell, seed)
            for cell in range(cells)
        ]

    mu1 = np.empty((cells, cells))
    mu2 = np.empty((cells, cells))
    for cell, (first, second) in enumerate(columns):
        mu1[:, cell] = first
        mu2[:, cell] = second
    np.fill_diagonal(mu1, 1.0)
    np.fill_diagonal(mu2, 1.0)

    logger.info(
        "Estimated propagation table for %d cells (%d samples/cell, seed %d)",
        cells,
        samples_per_cell,
        seed,
    )
    return PropagationTable(
        mu1=mu1,
        mu2=mu2,
        samples_per_cell=samples_per_cell,
        seed=seed,
        deployment_sha256=deployment_sha256(deployment),
    )


# =============================================================================
# Plain-text records
# =============================================================================


def dump_table(table: PropagationTable) -> str:
    """Serialize a table as a ``propagation`` record (row-major, full precision)."""
    return write_record(
        "propagation",
        {
            "cells": table.cells,
            "seed": "" if table.seed is None else table.seed,
            "samples_per_cell": table.samples_per_cell,
            "deployment_sha256": table.deployment_sha256 or "",
        },
        sections={
            "mu1": (format_row(row) for row in table.mu1),
            "mu2": (format_row(row) for row in table.mu2),
        },
    )


def load_table(text: str) -> PropagationTable:
    """Parse a ``propagation`` record.

    Raises:
        RecordFormatError: On malformed content or violated invariants.
    """
    record = parse_record(text, "propagation")
    cells = int(record.header("cells"))
    matrices = []
    for name in ("mu1", "mu2"):
        rows = [parse_floats(line, expected=cells) for line in record.section(name)]
        if len(rows) != cells:
            msg = f"Section {name} has {len(rows)} rows, expected {cells}"
            raise RecordFormatError(msg)
        matrices.append(rows)

    seed = record.headers.get("seed", "")
    try:
        return PropagationTable(
            mu1=matrices[0],
            mu2=matrices[1],
            samples_per_cell=int(record.header("samples_per_cell")),
            seed=int(seed) if seed else None,
            deployment_sha256=record.headers.get("deployment_sha256") or None,
        )
    except ValueError as e:
        msg = f"Invalid propagation record: {e}"
        raise RecordFormatError(msg) from e


__all__ = [
    "DEFAULT_SAMPLES_PER_CELL",
    "cell_stream",
    "estimate_propagation",
    "dump_table",
    "load_table",
]
