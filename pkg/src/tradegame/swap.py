"""Block/tree reduction turning the FTPL learner into a no-swap-regret learner.

Each player runs d leveled FTPL instances over the same action space. Level l
(0-indexed) advances one step every M^(d-1-l) rounds, is fed the exact running
mean of the cost vectors observed during its block, and is reset whenever its
parent level advances. The action played each round is drawn uniformly from
the d levels' current recommendations. With depth 1 this degenerates to the
base learner: same seed, identical history.

The guarantee this construction targets is swap regret bounded by the base
learner's regret at horizon M plus 3/d; the exact tree mechanics are validated
empirically rather than taken as given (see tests).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from tradegame.ftpl import FtplState, cost_vector
from tradegame.game import GameSpec, Profile
from tradegame.history import PlayHistory


@dataclass(frozen=True)
class TreeSwapConfig:
    block_size: int  # M
    depth: int  # d

    def __post_init__(self):
        if self.block_size < 1 or self.depth < 1:
            raise ValueError("block_size and depth must be positive")

    @property
    def total_rounds(self) -> int:
        return self.block_size**self.depth

    def validate_rounds(self, rounds: int) -> None:
        m, d = self.block_size, self.depth
        if not m ** (d - 1) <= rounds <= m**d:
            raise ValueError(
                f"rounds {rounds} violates M^(d-1) <= R <= M^d for M={m}, d={d}"
            )


class _TreePlayer:
    def __init__(self, space, kappa: float, eta: float, seed, cfg: TreeSwapConfig):
        self.cfg = cfg
        d = cfg.depth
        # level 0 reuses the bare player seed so depth-1 matches plain FTPL
        self.levels = [
            FtplState(
                space,
                kappa,
                eta,
                np.random.default_rng(seed if l == 0 else [seed, l]),
            )
            for l in range(d)
        ]
        self.select_rng = np.random.default_rng([seed, d, 0xC0FFEE])
        self.blocks = [cfg.block_size ** (d - 1 - l) for l in range(d)]
        self.recs = [None] * d
        self.block_sums = [np.zeros(2 * space.horizon) for _ in range(d)]
        self.block_counts = [0] * d

    def draw(self, r: int):
        """Advance due levels (resetting children of advancing parents first)
        and return (played schedule, level that supplied it)."""
        for l in range(self.cfg.depth):
            if r % self.blocks[l] == 0:
                if l > 0 and r % self.blocks[l - 1] == 0:
                    self.levels[l].reset()
                self.recs[l] = self.levels[l].perturbed_best_response()
        if self.cfg.depth == 1:
            level = 0
        else:
            level = int(self.select_rng.integers(0, self.cfg.depth))
        return self.recs[level], level

    def feed(self, r: int, h) -> None:
        h = np.asarray(h, dtype=float)
        for l in range(self.cfg.depth):
            self.block_sums[l] += h
            self.block_counts[l] += 1
            if (r + 1) % self.blocks[l] == 0:
                self.levels[l].observe(self.block_sums[l] / self.block_counts[l])
                self.block_sums[l] = np.zeros_like(h)
                self.block_counts[l] = 0


@dataclass
class SwapRunResult:
    history: PlayHistory
    levels: list[tuple[int, ...]]  # per round, per player: level that played


def run_swap_dynamics(
    spec: GameSpec, cfg: TreeSwapConfig, eta: float, seeds: list[int]
) -> SwapRunResult:
    """All players run the tree reduction for R = M^d rounds."""
    rounds = cfg.total_rounds
    cfg.validate_rounds(rounds)
    if len(seeds) != spec.n_players:
        raise ValueError("need one seed per player")
    T = spec.horizon
    players = [
        _TreePlayer(sp, spec.kappa, eta, sd, cfg)
        for sp, sd in zip(spec.players, seeds)
    ]
    history = []
    levels = []
    for r in range(rounds):
        drawn = [p.draw(r) for p in players]
        played = [s for s, _ in drawn]
        levels.append(tuple(l for _, l in drawn))
        history.append(Profile(played))
        for i, p in enumerate(players):
            others = [s for j, s in enumerate(played) if j != i]
            p.feed(r, cost_vector(others, spec.kappa, T))
    return SwapRunResult(PlayHistory(tuple(history), spec), levels)
