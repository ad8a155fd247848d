"""Harness tools: seeded experiment sweeps, aggregation and CSV output."""

from pilot_clustering.harness.tools import harness_sweep

__all__ = [
    "harness_sweep",
]
