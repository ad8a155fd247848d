"""Harness tools."""

import asyncio
from pathlib import Path

from pilot_clustering._core.base import register_tool
from pilot_clustering._core.exceptions import PilotClusteringError
from pilot_clustering.harness.models import HarnessSweepInput, HarnessSweepOutput
from pilot_clustering.harness.service import (
    aggregate,
    load_experiment_config,
    records_to_csv,
    run_experiment,
    summary_to_csv,
)


async def harness_sweep(input: HarnessSweepInput) -> HarnessSweepOutput:
    """Run a seeded experiment sweep and write its records and summary as CSV."""
    try:
        config = load_experiment_config(input.config_path, input.overrides)
        records = await asyncio.to_thread(
            lambda: list(run_experiment(config, workers=input.workers))
        )
        summary = aggregate(records)
        if input.out:
            await asyncio.to_thread(
                Path(input.out).write_text,
                records_to_csv(records, timing=config.timing),
                "utf-8",
            )
        if input.summary_out:
            await asyncio.to_thread(
                Path(input.summary_out).write_text, summary_to_csv(summary), "utf-8"
            )
        return HarnessSweepOutput(
            success=True,
            records=len(records),
            summary=summary,
            path=input.out,
            summary_path=input.summary_out,
        )
    except (PilotClusteringError, ValueError, OSError) as e:
        return HarnessSweepOutput(success=False, error=str(e))


register_tool(harness_sweep, "harness_sweep", HarnessSweepInput, HarnessSweepOutput)
