"""Propagation tools: Monte-Carlo moments of the channel-variance ratio."""

from pilot_clustering.propagation.tools import propagation_estimate

__all__ = [
    "propagation_estimate",
]
