"""Uniform-ish random feasible schedules and profiles (tests, validation)."""

from __future__ import annotations

import numpy as np

from tradegame.game import ActionSpace, GameSpec, Profile, Schedule


def random_schedule(space: ActionSpace, rng: np.random.Generator) -> Schedule:
    """Sequentially sample increments, keeping the remaining volume reachable.

    Not exactly uniform over the action set; cheap and covers it fully."""
    incs = []
    rem = space.target_volume
    for t in range(space.horizon):
        left = space.horizon - t - 1
        lo = max(space.theta_lower, rem - space.theta_upper * left)
        hi = min(space.theta_upper, rem - space.theta_lower * left)
        k = int(rng.integers(lo, hi + 1))
        incs.append(k)
        rem -= k
    return Schedule(incs, space)


def random_profile(spec: GameSpec, rng: np.random.Generator) -> Profile:
    return Profile([random_schedule(sp, rng) for sp in spec.players])


def random_space(
    rng: np.random.Generator,
    max_horizon: int = 5,
    theta_bound: int = 5,
) -> ActionSpace:
    T = int(rng.integers(1, max_horizon + 1))
    tl = int(rng.integers(-theta_bound, theta_bound + 1))
    tu = int(rng.integers(tl, theta_bound + 1))
    V = int(rng.integers(tl * T, tu * T + 1))
    return ActionSpace(V, T, tl, tu)
