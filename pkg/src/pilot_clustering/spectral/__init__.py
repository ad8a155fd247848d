"""Spectral tools: closed-form cell utilities and the Monte-Carlo SE oracle."""

from pilot_clustering.spectral.tools import spectral_evaluate, spectral_oracle

__all__ = [
    "spectral_evaluate",
    "spectral_oracle",
]
