"""Discrete multi-player position-building trading game.

Exact cost model, DP best response, best-response dynamics, linearized FTPL
no-regret dynamics, a tree swap-regret wrapper, and equilibrium diagnostics.
"""

from tradegame._backend import BACKEND
from tradegame.game import (
    ActionSpace,
    GameSpec,
    Profile,
    Schedule,
    decomposition_check,
    perm_cost,
    perm_mean_cost,
    potential,
    temp_cost,
    total_cost,
)

__version__ = "0.1.0"

__all__ = [
    "ActionSpace",
    "GameSpec",
    "Profile",
    "Schedule",
    "temp_cost",
    "perm_cost",
    "total_cost",
    "perm_mean_cost",
    "potential",
    "decomposition_check",
    "BACKEND",
    "__version__",
]
