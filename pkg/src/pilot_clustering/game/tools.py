"""Game tools."""

import asyncio
from pathlib import Path

from pilot_clustering._core.base import register_tool
from pilot_clustering._core.exceptions import PilotClusteringError
from pilot_clustering.game.models import (
    BlockingMove,
    CoalitionStructure,
    GameExhaustiveInput,
    GameExhaustiveOutput,
    GameFormInput,
    GameFormOutput,
    GameStableCheckInput,
    GameStableCheckOutput,
)
from pilot_clustering.game.partitions import bell_number
from pilot_clustering.game.service import (
    PilotGame,
    dump_structure,
    dump_trace,
    exhaustive_optimum,
    load_structure,
)
from pilot_clustering.propagation.models import PropagationTable
from pilot_clustering.propagation.service import load_table
from pilot_clustering.spectral.service import cell_utilities


async def _read_table(path: str) -> PropagationTable:
    return load_table(await asyncio.to_thread(Path(path).read_text, "utf-8"))


async def game_form(input: GameFormInput) -> GameFormOutput:
    """Run the budgeted coalition-formation dynamics on a propagation table."""
    try:
        table = await _read_table(input.table_path)
        params = input.system_params(table.cells)
        initial = (
            CoalitionStructure.from_labels(input.initial_labels)
            if input.initial_labels is not None
            else None
        )
        game = PilotGame(params, table, input.scheme, input.budget)
        trace = await asyncio.to_thread(game.run, input.seed, initial)
        if input.out:
            text = dump_trace(trace)
            await asyncio.to_thread(Path(input.out).write_text, text, "utf-8")
        utilities = cell_utilities(trace.final, params, table, input.scheme)
        return GameFormOutput(
            success=True,
            trace=trace,
            utilities=utilities.tolist(),
            total_se=float(utilities.sum()),
            path=input.out,
        )
    except (PilotClusteringError, ValueError, OSError) as e:
        return GameFormOutput(success=False, error=str(e))


async def game_exhaustive(input: GameExhaustiveInput) -> GameExhaustiveOutput:
    """Find the best coalition structure by enumerating every partition."""
    try:
        table = await _read_table(input.table_path)
        params = input.system_params(table.cells)
        structure, value = await asyncio.to_thread(
            exhaustive_optimum, params, table, input.scheme, input.objective
        )
        if input.out:
            await asyncio.to_thread(
                Path(input.out).write_text, dump_structure(structure), "utf-8"
            )
        total = float(cell_utilities(structure, params, table, input.scheme).sum())
        return GameExhaustiveOutput(
            success=True,
            structure=structure,
            value=value,
            total_se=total,
            partitions=bell_number(table.cells),
            path=input.out,
        )
    except (PilotClusteringError, ValueError, OSError) as e:
        return GameExhaustiveOutput(success=False, error=str(e))


async def game_stable_check(input: GameStableCheckInput) -> GameStableCheckOutput:
    """Certify that no BS has an admissible deviation from a structure."""
    try:
        table = await _read_table(input.table_path)
        text = await asyncio.to_thread(Path(input.structure_path).read_text, "utf-8")
        structure = load_structure(text)
        params = input.system_params(table.cells)
        eta = input.eta if input.eta is not None else [0] * table.cells
        if len(eta) != table.cells:
            msg = f"Expected {table.cells} search counters, got {len(eta)}"
            return GameStableCheckOutput(success=False, error=msg)
        game = PilotGame(params, table, input.scheme, input.budget)
        moves = game.blocking_moves(structure, eta)
        return GameStableCheckOutput(
            success=True,
            stable=not moves,
            blocking=[
                BlockingMove(cell=cell, target=sorted(target)) for cell, target in moves
            ],
        )
    except (PilotClusteringError, ValueError, OSError) as e:
        return GameStableCheckOutput(success=False, error=str(e))


register_tool(game_form, "game_form", GameFormInput, GameFormOutput)
register_tool(
    game_exhaustive, "game_exhaustive", GameExhaustiveInput, GameExhaustiveOutput
)
register_tool(
    game_stable_check, "game_stable_check", GameStableCheckInput, GameStableCheckOutput
)
