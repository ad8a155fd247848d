"""Shared fixtures for the test suite."""

from collections.abc import Iterator
from pathlib import Path

import numpy as np
import pytest

from pilot_clustering._core.config import SimulatorSettings, clear_config_cache
from pilot_clustering.game.models import CoalitionStructure
from pilot_clustering.geometry.models import Deployment
from pilot_clustering.geometry.service import dump_deployment
from pilot_clustering.propagation.models import PropagationTable
from pilot_clustering.propagation.service import dump_table
from pilot_clustering.spectral.models import SystemParams


@pytest.fixture(autouse=True)
def isolated_settings() -> Iterator[None]:
    """Keep .env files out of the tests and reset cached settings."""
    original = SimulatorSettings.model_config
    SimulatorSettings.model_config = {**original, "env_file": None}
    clear_config_cache()
    yield
    SimulatorSettings.model_config = original
    clear_config_cache()


@pytest.fixture
def single_cell_table() -> PropagationTable:
    return PropagationTable(mu1=[[1.0]], mu2=[[1.0]])


@pytest.fixture
def single_cell_params() -> SystemParams:
    """M=100, B=10, S=400 at 5 dB."""
    return SystemParams.from_db(
        antennas=100, pilots=10, symbols=400, snr_db=5.0, cells=1
    )


@pytest.fixture
def colocated_table() -> PropagationTable:
    """Two cells whose BSs share a site: every ratio is 1."""
    return PropagationTable(mu1=np.ones((2, 2)), mu2=np.ones((2, 2)))


@pytest.fixture
def distant_table() -> PropagationTable:
    """Two well separated cells with weak mutual interference."""
    return PropagationTable(
        mu1=[[1.0, 0.01], [0.01, 1.0]],
        mu2=[[1.0, 0.001], [0.001, 1.0]],
    )


@pytest.fixture
def two_cell_params() -> SystemParams:
    """L=2, B=20, M=100, S=400 at 5 dB."""
    return SystemParams.from_db(
        antennas=100, pilots=20, symbols=400, snr_db=5.0, cells=2
    )


@pytest.fixture
def two_cell_deployment() -> Deployment:
    """Unit torus with BSs at (0.25, 0.5) and (0.75, 0.5)."""
    return Deployment(
        bs_positions=((0.25, 0.5), (0.75, 0.5)),
        side=1.0,
        alpha=3.0,
        min_dist=1e-3,
    )


@pytest.fixture
def grand_pair() -> CoalitionStructure:
    return CoalitionStructure.grand(2)


@pytest.fixture
def deployment_file(tmp_path: Path, two_cell_deployment: Deployment) -> Path:
    path = tmp_path / "deployment.txt"
    path.write_text(dump_deployment(two_cell_deployment), encoding="utf-8")
    return path


@pytest.fixture
def table_file(tmp_path: Path, distant_table: PropagationTable) -> Path:
    path = tmp_path / "table.txt"
    path.write_text(dump_table(distant_table), encoding="utf-8")
    return path
