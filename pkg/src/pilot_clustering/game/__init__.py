"""Game tools: coalition formation, stability certification and exhaustive search."""

from pilot_clustering.game.tools import game_exhaustive, game_form, game_stable_check

__all__ = [
    "game_form",
    "game_exhaustive",
    "game_stable_check",
]
