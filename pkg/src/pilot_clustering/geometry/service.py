"""Deployment geometry on a wrap-around square.

Distances use the minimum-image convention on the torus, cells are Voronoi
regions under that metric (ties go to the lowest BS index), and UEs are drawn
uniformly inside a cell by batched rejection sampling.
"""

import logging
import math

import numpy as np

from pilot_clustering._core.codec import (
    format_float,
    format_row,
    parse_floats,
    parse_record,
    sha256_text,
    write_record,
)
from pilot_clustering._core.config import get_settings
from pilot_clustering._core.exceptions import (
    DegenerateCellError,
    InvalidParameterError,
    RecordFormatError,
)
from pilot_clustering.geometry.models import Deployment, Point

logger = logging.getLogger(__name__)

_MAX_BATCH = 1 << 16


def torus_distance(a: Point, b: Point, side: float) -> float:
    """Euclidean distance under the minimum-image convention."""
    dx = abs(a.x - b.x)
    dy = abs(a.y - b.y)
    dx = min(dx, side - dx)
    dy = min(dy, side - dy)
    return math.hypot(dx, dy)


def torus_distances(points: np.ndarray, anchors: np.ndarray, side: float) -> np.ndarray:
    """Pairwise torus distances, shape (len(points), len(anchors))."""
    delta = np.abs(points[:, None, :] - anchors[None, :, :])
    delta = np.minimum(delta, side - delta)
    return np.sqrt(np.sum(delta * delta, axis=-1))


def _variance_from_distance(
    distances: np.ndarray, deployment: Deployment
) -> np.ndarray:
    return np.maximum(distances, deployment.min_dist) ** (-deployment.alpha)


def channel_variance(deployment: Deployment, bs: int, z: Point) -> float:
    """Channel variance d_bs(z) with the pathloss constant fixed to 1."""
    _check_cell(deployment, bs)
    x, y = deployment.bs_positions[bs]
    distance = torus_distance(z, Point(x=x, y=y), deployment.side)
    return float(max(distance, deployment.min_dist) ** (-deployment.alpha))


def channel_variances(deployment: Deployment, points: np.ndarray) -> np.ndarray:
    """d_j(z) for every point and BS, shape (len(points), L)."""
    distances = torus_distances(points, deployment.positions, deployment.side)
    return _variance_from_distance(distances, deployment)


def generate_deployment(
    cells: int,
    density: float,
    seed: int,
    alpha: float = 3.0,
    min_dist_fraction: float = 1e-3,
) -> Deployment:
    """Draw L BS positions uniformly on a square holding ``density`` BS/km^2.

    Raises:
        InvalidParameterError: If cells < 1 or density <= 0.
    """
    if cells < 1:
        msg = f"Need at least one cell, got {cells}"
        raise InvalidParameterError(msg)
    if density <= 0:
        msg = f"Density must be positive, got {density}"
        raise InvalidParameterError(msg)

    side = math.sqrt(cells / density)
    rng = np.random.default_rng(seed)
    # uniform() may round up to the open bound
    positions = np.mod(rng.uniform(0.0, side, size=(cells, 2)), side)
    return Deployment(
        bs_positions=tuple((float(x), float(y)) for x, y in positions),
        side=side,
        alpha=alpha,
        min_dist=side * min_dist_fraction,
    )


def assign_cells(deployment: Deployment, points: np.ndarray) -> np.ndarray:
    """Serving cell of each point (argmin of torus distance, lowest index wins)."""
    distances = torus_distances(points, deployment.positions, deployment.side)
    return np.argmin(distances, axis=1)


def assign_cell(deployment: Deployment, z: Point) -> int:
    """Serving cell of a single point."""
    return int(assign_cells(deployment, z.as_array()[None, :])[0])


def sample_ues_in_cell(
    deployment: Deployment,
    cell: int,
    count: int,
    rng: np.random.Generator,
    max_rejections: int | None = None,
) -> np.ndarray:
    """Draw ``count`` UE positions uniformly in ``cell`` minus the exclusion disc.

    Candidates are drawn in batches on the whole square and kept when the cell
    owns them; the result has shape (count, 2).

    Raises:
        DegenerateCellError: After ``max_rejections`` consecutive rejections.
    """
    _check_cell(deployment, cell)
    if count <= 0:
        return np.empty((0, 2), dtype=float)
    if max_rejections is None:
        max_rejections = get_settings().max_rejections

    positions = deployment.positions
    batch = min(_MAX_BATCH, max(64, 2 * count * deployment.cells))
    accepted: list[np.ndarray] = []
    found = 0
    streak = 0
    while found < count:
        candidates = rng.uniform(0.0, deployment.side, size=(batch, 2))
        distances = torus_distances(candidates, positions, deployment.side)
        owner = np.argmin(distances, axis=1)
        keep = (owner == cell) & (distances[:, cell] >= deployment.min_dist)
        hits = candidates[keep]
        if hits.shape[0] == 0:
            streak += batch
            if streak >= max_rejections:
                msg = f"Cell {cell} rejected {streak} consecutive draws"
                raise DegenerateCellError(msg, cell=cell)
            continue
        streak = 0
        take = hits[: count - found]
        accepted.append(take)
        found += take.shape[0]
    return np.concatenate(accepted, axis=0)


def sample_ue_in_cell(
    deployment: Deployment,
    cell: int,
    rng: np.random.Generator,
    max_rejections: int | None = None,
) -> Point:
    """Draw one UE position uniformly in ``cell`` minus the exclusion disc."""
    x, y = sample_ues_in_cell(deployment, cell, 1, rng, max_rejections)[0]
    return Point(x=float(x), y=float(y))


def _check_cell(deployment: Deployment, cell: int) -> None:
    if not 0 <= cell < deployment.cells:
        msg = f"Cell index {cell} outside 0..{deployment.cells - 1}"
        raise InvalidParameterError(msg)


# =============================================================================
# Plain-text records
# =============================================================================


def dump_deployment(deployment: Deployment) -> str:
    """Serialize a deployment as a ``deployment`` record."""
    return write_record(
        "deployment",
        {
            "cells": deployment.cells,
            "side": format_float(deployment.side),
            "alpha": format_float(deployment.alpha),
            "min_dist": format_float(deployment.min_dist),
        },
        body=(format_row(position) for position in deployment.bs_positions),
    )


def load_deployment(text: str) -> Deployment:
    """Parse a ``deployment`` record.

    Raises:
        RecordFormatError: On malformed content or violated invariants.
    """
    record = parse_record(text, "deployment")
    rows = [parse_floats(line, expected=2) for line in record.body]
    cells = int(record.header("cells"))
    if len(rows) != cells:
        msg = f"Deployment announces {cells} cells but lists {len(rows)}"
        raise RecordFormatError(msg)
    try:
        return Deployment(
            bs_positions=tuple((x, y) for x, y in rows),
            side=float(record.header("side")),
            alpha=float(record.header("alpha")),
            min_dist=float(record.header("min_dist")),
        )
    except ValueError as e:
        msg = f"Invalid deployment record: {e}"
        raise RecordFormatError(msg) from e


def deployment_sha256(deployment: Deployment) -> str:
    return sha256_text(dump_deployment(deployment))


__all__ = [
    "torus_distance",
    "torus_distances",
    "channel_variance",
    "channel_variances",
    "generate_deployment",
    "assign_cell",
    "assign_cells",
    "sample_ue_in_cell",
    "sample_ues_in_cell",
    "dump_deployment",
    "load_deployment",
    "deployment_sha256",
]
