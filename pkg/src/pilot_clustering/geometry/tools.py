"""Geometry tools.

Tool functions wrapping the geometry service, following the tool protocol
with Pydantic input/output models.
"""

import asyncio
from pathlib import Path

from pilot_clustering._core.base import register_tool
from pilot_clustering._core.exceptions import PilotClusteringError
from pilot_clustering.geometry.models import GeometryDeployInput, GeometryDeployOutput
from pilot_clustering.geometry.service import (
    deployment_sha256,
    dump_deployment,
    generate_deployment,
)


async def geometry_deploy(input: GeometryDeployInput) -> GeometryDeployOutput:
    """Generate a seeded random deployment and optionally write its record."""
    try:
        deployment = generate_deployment(
            cells=input.cells,
            density=input.density,
            seed=input.seed,
            alpha=input.alpha,
            min_dist_fraction=input.min_dist_fraction,
        )
        if input.out:
            await asyncio.to_thread(
                Path(input.out).write_text, dump_deployment(deployment), "utf-8"
            )
        return GeometryDeployOutput(
            success=True,
            deployment=deployment,
            sha256=deployment_sha256(deployment),
            path=input.out,
        )
    except (PilotClusteringError, ValueError, OSError) as e:
        return GeometryDeployOutput(success=False, error=str(e))


register_tool(
    geometry_deploy, "geometry_deploy", GeometryDeployInput, GeometryDeployOutput
)
