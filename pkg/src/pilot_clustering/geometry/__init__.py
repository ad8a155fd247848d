"""Geometry tools: wrap-around deployments, cell association and UE sampling."""

from pilot_clustering.geometry.tools import geometry_deploy

__all__ = [
    "geometry_deploy",
]
