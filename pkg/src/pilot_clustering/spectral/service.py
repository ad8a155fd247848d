"""Closed-form uplink spectral efficiency and its Monte-Carlo oracle.

Cells in one coalition share the coalition's pooled pilots, so every member
schedules K_j = (B/L)|coalition| UEs and suffers pilot contamination from its
partners. ``interference`` evaluates the closed-form interference term for MRC
and ZFC, ``cell_utility`` turns it into the average SE lower bound of a cell,
and ``oracle_estimate`` averages the exact per-position SINR over random UE
positions to check the direction of that bound.
"""

from __future__ import annotations

import logging
import math
from typing import TYPE_CHECKING

import numpy as np

from pilot_clustering._core.exceptions import (
    InfeasibleCombiningError,
    InvalidParameterError,
)
from pilot_clustering.geometry.models import Deployment
from pilot_clustering.geometry.service import channel_variances, sample_ues_in_cell
from pilot_clustering.propagation.models import PropagationTable
from pilot_clustering.spectral.models import OracleEstimate, Scheme, SystemParams

if TYPE_CHECKING:
    from pilot_clustering.game.models import CoalitionStructure

logger = logging.getLogger(__name__)


def _check_inputs(
    structure: CoalitionStructure,
    params: SystemParams,
    cells: int,
    j: int | None = None,
) -> None:
    if structure.cells != params.cells or cells != params.cells:
        msg = (
            f"Size mismatch: structure has {structure.cells} cells, "
            f"params {params.cells}, table/deployment {cells}"
        )
        raise InvalidParameterError(msg)
    if j is not None and not 0 <= j < params.cells:
        msg = f"Cell index {j} outside 0..{params.cells - 1}"
        raise InvalidParameterError(msg)


def _array_gain(j: int, scheduled: int, params: SystemParams, scheme: Scheme) -> int:
    if scheme is Scheme.MRC:
        return params.antennas
    gain = params.antennas - scheduled
    if gain <= 0:
        msg = (
            f"Zero-forcing in cell {j} needs more than {scheduled} antennas, "
            f"got {params.antennas}"
        )
        raise InfeasibleCombiningError(
            msg, cell=j, antennas=params.antennas, scheduled=scheduled
        )
    return gain


def pilot_contamination(
    j: int,
    structure: CoalitionStructure,
    params: SystemParams,
    table: PropagationTable,
    scheme: Scheme,
) -> float:
    """Pilot-contamination part of I_j; depends only on the block of ``j``.

    Raises:
        InfeasibleCombiningError: For ZFC when M <= K_j.
    """
    _check_inputs(structure, params, table.cells, j)
    block = structure.block_of(j)
    gain = _array_gain(j, params.scheduled(len(block)), params, scheme)
    mu1, mu2 = table.mu1[j], table.mu2[j]
    return float(
        sum(mu2[l] + (mu2[l] - mu1[l] * mu1[l]) / gain for l in sorted(block) if l != j)
    )


def interference(
    j: int,
    structure: CoalitionStructure,
    params: SystemParams,
    table: PropagationTable,
    scheme: Scheme,
) -> float:
    """Interference term I_j of cell ``j`` under ``structure``.

    Raises:
        InvalidParameterError: On mismatched sizes or a bad cell index.
        InfeasibleCombiningError: For ZFC when M <= K_j.
    """
    _check_inputs(structure, params, table.cells, j)
    block = sorted(structure.block_of(j))
    loads = np.asarray(structure.member_sizes, dtype=float) * params.pilots_per_cell
    scheduled = params.scheduled(len(block))
    gain = _array_gain(j, scheduled, params, scheme)

    mu1, mu2 = table.mu1[j], table.mu2[j]
    pilot = sum(mu2[l] + (mu2[l] - mu1[l] * mu1[l]) / gain for l in block if l != j)
    estimate = float(mu1[block].sum()) + 1.0 / (params.pilots * params.snr)
    inter = float(mu1 @ loads) + 1.0 / params.snr

    if scheme is Scheme.MRC:
        return float(pilot + inter * estimate / gain)
    correction = float(np.sum(mu1[block] ** 2)) * scheduled / estimate
    return float(pilot + (inter - correction) * estimate / gain)


def cell_utility(
    j: int,
    structure: CoalitionStructure,
    params: SystemParams,
    table: PropagationTable,
    scheme: Scheme,
) -> float:
    """Average SE lower bound of cell ``j`` in bit/s/Hz; 0 if ZFC is infeasible."""
    try:
        value = interference(j, structure, params, table, scheme)
    except InfeasibleCombiningError:
        return 0.0
    scheduled = params.scheduled(len(structure.block_of(j)))
    return params.prelog * scheduled * math.log2(1.0 + 1.0 / value)


def interference_vector(
    structure: CoalitionStructure,
    params: SystemParams,
    table: PropagationTable,
    scheme: Scheme,
) -> np.ndarray:
    """I_j for every cell at once; ``inf`` where zero-forcing is infeasible."""
    _check_inputs(structure, params, table.cells)
    labels = np.asarray(structure.labels)
    same = labels[:, None] == labels[None, :]
    partners = same & ~np.eye(params.cells, dtype=bool)
    loads = same.sum(axis=1).astype(float) * params.pilots_per_cell
    mu1, mu2 = table.mu1, table.mu2

    if scheme is Scheme.MRC:
        gain = np.full(params.cells, float(params.antennas))
    else:
        gain = params.antennas - loads
    feasible = gain > 0
    gain = np.where(feasible, gain, 1.0)

    contamination = mu2 + (mu2 - mu1 * mu1) / gain[:, None]
    pilot = np.sum(np.where(partners, contamination, 0.0), axis=1)
    estimate = np.sum(np.where(same, mu1, 0.0), axis=1)
    estimate += 1.0 / (params.pilots * params.snr)
    inter = mu1 @ loads + 1.0 / params.snr
    if scheme is Scheme.ZFC:
        own = np.sum(np.where(same, mu1 * mu1, 0.0), axis=1)
        inter = inter - own * loads / estimate
    values = pilot + inter * estimate / gain
    return np.where(feasible, values, np.inf)


def cell_utilities(
    structure: CoalitionStructure,
    params: SystemParams,
    table: PropagationTable,
    scheme: Scheme,
) -> np.ndarray:
    """Utility of every cell, shape (L,); infeasible ZFC cells get 0."""
    values = interference_vector(structure, params, table, scheme)
    loads = np.asarray(structure.member_sizes, dtype=float) * params.pilots_per_cell
    return params.prelog * loads * np.log2(1.0 + 1.0 / values)


# =============================================================================
# Monte-Carlo oracle
# =============================================================================


def _sample_ratios(
    j: int,
    deployment: Deployment,
    loads: list[int],
    trials: int,
    rng: np.random.Generator,
) -> list[np.ndarray]:
    """d_j(z)/d_l(z) for K_l fresh UEs per cell l and trial, shape (trials, K_l)."""
    ratios = []
    for cell, load in enumerate(loads):
        positions = sample_ues_in_cell(deployment, cell, trials * load, rng)
        variances = channel_variances(deployment, positions)
        ratios.append((variances[:, j] / variances[:, cell]).reshape(trials, load))
    return ratios


def oracle_estimate(
    j: int,
    structure: CoalitionStructure,
    params: SystemParams,
    deployment: Deployment,
    scheme: Scheme,
    trials: int,
    seed: int,
) -> OracleEstimate:
    """Average the exact per-position SE of cell ``j`` over random UE drops.

    Fading is already marginalised, so only UE positions are random. The k-th
    UE of every partner cell reuses the pilot of the k-th UE of ``j``.

    Raises:
        InvalidParameterError: If trials < 1 or sizes mismatch.
        InfeasibleCombiningError: For ZFC when M <= K_j.
        DegenerateCellError: If a cell cannot be sampled.
    """
    if trials < 1:
        msg = f"Need at least one trial, got {trials}"
        raise InvalidParameterError(msg)
    _check_inputs(structure, params, deployment.cells, j)

    block = sorted(structure.block_of(j))
    loads = [params.scheduled(size) for size in structure.member_sizes]
    scheduled = loads[j]
    gain = _array_gain(j, scheduled, params, scheme)

    rng = np.random.default_rng(seed)
    ratios = _sample_ratios(j, deployment, loads, trials, rng)

    received = sum(r.sum(axis=1) for r in ratios)
    estimate = sum(ratios[l] for l in block) + 1.0 / (params.pilots * params.snr)
    pilot = np.zeros((trials, scheduled))
    for l in block:
        if l != j:
            pilot += ratios[l] ** 2

    if scheme is Scheme.MRC:
        inter = received[:, None] / gain + 1.0 / (gain * params.snr)
        denominator = pilot + estimate * inter
    else:
        correction = (sum(ratios[l] ** 2 for l in block) / estimate).sum(axis=1)
        inter = received - correction + 1.0 / params.snr
        denominator = pilot + inter[:, None] * estimate / gain

    per_trial = params.prelog * np.log2(1.0 + 1.0 / denominator).sum(axis=1)
    mean = float(per_trial.mean())
    stderr = float(per_trial.std(ddof=1) / math.sqrt(trials)) if trials > 1 else 0.0
    logger.debug(
        "Oracle for cell %d (%s, %d trials): %.6f +/- %.6f",
        j,
        scheme.value,
        trials,
        mean,
        stderr,
    )
    return OracleEstimate(mean=mean, stderr=stderr, trials=trials)


def oracle_se(
    j: int,
    structure: CoalitionStructure,
    params: SystemParams,
    deployment: Deployment,
    scheme: Scheme,
    trials: int,
    seed: int,
) -> float:
    """Mean of :func:`oracle_estimate`."""
    return oracle_estimate(j, structure, params, deployment, scheme, trials, seed).mean


__all__ = [
    "pilot_contamination",
    "interference",
    "interference_vector",
    "cell_utility",
    "cell_utilities",
    "oracle_estimate",
    "oracle_se",
]
