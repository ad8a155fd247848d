"""Spectral tools."""

import asyncio
import math
from pathlib import Path

from pilot_clustering._core.base import register_tool
from pilot_clustering._core.exceptions import PilotClusteringError
from pilot_clustering.geometry.service import load_deployment
from pilot_clustering.propagation.service import load_table
from pilot_clustering.spectral.models import (
    SpectralEvaluateInput,
    SpectralEvaluateOutput,
    SpectralOracleInput,
    SpectralOracleOutput,
)
from pilot_clustering.spectral.service import (
    cell_utilities,
    cell_utility,
    interference_vector,
    oracle_estimate,
)


async def spectral_evaluate(input: SpectralEvaluateInput) -> SpectralEvaluateOutput:
    """Evaluate the closed-form SE of every cell under a coalition structure."""
    # game.models imports this package's models
    from pilot_clustering.game.models import CoalitionStructure

    try:
        text = await asyncio.to_thread(Path(input.table_path).read_text, "utf-8")
        table = load_table(text)
        structure = CoalitionStructure.from_labels(input.labels)
        params = input.system_params(structure.cells)
        utilities = cell_utilities(structure, params, table, input.scheme)
        values = interference_vector(structure, params, table, input.scheme)
        return SpectralEvaluateOutput(
            success=True,
            utilities=utilities.tolist(),
            interference=[float(v) if math.isfinite(v) else None for v in values],
            total_se=float(utilities.sum()),
        )
    except (PilotClusteringError, ValueError, OSError) as e:
        return SpectralEvaluateOutput(success=False, error=str(e))


async def spectral_oracle(input: SpectralOracleInput) -> SpectralOracleOutput:
    """Estimate a cell's position-averaged SE by Monte Carlo over UE drops."""
    from pilot_clustering.game.models import CoalitionStructure

    try:
        text = await asyncio.to_thread(Path(input.deployment_path).read_text, "utf-8")
        deployment = load_deployment(text)
        structure = CoalitionStructure.from_labels(input.labels)
        params = input.system_params(structure.cells)
        estimate = await asyncio.to_thread(
            oracle_estimate,
            input.cell,
            structure,
            params,
            deployment,
            input.scheme,
            input.trials,
            input.seed,
        )
        closed_form = None
        if input.table_path:
            table_path = Path(input.table_path)
            table = load_table(await asyncio.to_thread(table_path.read_text, "utf-8"))
            closed_form = cell_utility(
                input.cell, structure, params, table, input.scheme
            )
        return SpectralOracleOutput(
            success=True, estimate=estimate, closed_form=closed_form
        )
    except (PilotClusteringError, ValueError, OSError) as e:
        return SpectralOracleOutput(success=False, error=str(e))


register_tool(
    spectral_evaluate,
    "spectral_evaluate",
    SpectralEvaluateInput,
    SpectralEvaluateOutput,
)
register_tool(
    spectral_oracle, "spectral_oracle", SpectralOracleInput, SpectralOracleOutput
)
