"""Propagation tools."""

import asyncio
from pathlib import Path

from pilot_clustering._core.base import register_tool
from pilot_clustering._core.exceptions import PilotClusteringError
from pilot_clustering.geometry.service import load_deployment
from pilot_clustering.propagation.models import (
    PropagationEstimateInput,
    PropagationEstimateOutput,
)
from pilot_clustering.propagation.service import dump_table, estimate_propagation


async def propagation_estimate(
    input: PropagationEstimateInput,
) -> PropagationEstimateOutput:
    """Estimate the mu1/mu2 tables of a deployment record by Monte Carlo."""
    try:
        text = await asyncio.to_thread(Path(input.deployment_path).read_text, "utf-8")
        deployment = load_deployment(text)
        table = await asyncio.to_thread(
            estimate_propagation,
            deployment,
            input.samples_per_cell,
            input.seed,
            input.workers,
        )
        if input.out:
            text = dump_table(table)
            await asyncio.to_thread(Path(input.out).write_text, text, "utf-8")
        return PropagationEstimateOutput(
            success=True,
            mu1=table.mu1.tolist(),
            mu2=table.mu2.tolist(),
            deployment_sha256=table.deployment_sha256,
            path=input.out,
        )
    except (PilotClusteringError, ValueError, OSError) as e:
        return PropagationEstimateOutput(success=False, error=str(e))


register_tool(
    propagation_estimate,
    "propagation_estimate",
    PropagationEstimateInput,
    PropagationEstimateOutput,
)
