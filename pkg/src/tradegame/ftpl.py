"""Linearized follow-the-perturbed-leader over trading schedules.

A player's cost is bilinear after lifting both sides to 2T dimensions:
embed_strategy(a) carries the increments and the self-impact products,
cost_vector(opponents) carries the aggregated opponent terms plus a constant
block, and their inner product reproduces the trading cost exactly. The
leader's perturbed argmin is then a linear-cost DP, so each round costs
O(theta^2 T^2) instead of an exponential enumeration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from tradegame import dp
from tradegame.game import ActionSpace, GameSpec, Profile, Schedule
from tradegame.history import PlayHistory


def embed_strategy(a: Schedule, kappa):
    """2T-dim lift f(a): first T entries a'(t), last T entries
    a'(t) * (a'(t) + kappa * a(t-1))."""
    incs = a.increments
    held = a.holdings()
    head = list(incs)
    tail = [incs[t] * (incs[t] + kappa * held[t]) for t in range(len(incs))]
    return head + tail


def cost_vector(opponents: list[Schedule], kappa, horizon: int):
    """2T-dim opponent aggregate h(a_{-i}): entry t is
    sum_j (a'_j(t) + kappa * a_j(t-1)), last T entries are 1."""
    head = [0] * horizon
    for s in opponents:
        incs = s.increments
        held = s.holdings()
        for t in range(horizon):
            head[t] = head[t] + incs[t] + kappa * held[t]
    return head + [1] * horizon


def inner(f, h):
    """<f, h>; exact when both sides hold ints/Fractions."""
    return sum(x * y for x, y in zip(f, h, strict=True))


@dataclass
class FtplState:
    """One learner's cumulative observed cost vector plus its private noise."""

    space: ActionSpace
    kappa: float
    eta: float
    rng: np.random.Generator
    cumulative: np.ndarray = field(init=False)
    round: int = field(init=False, default=0)

    def __post_init__(self):
        self.cumulative = np.zeros(2 * self.space.horizon)

    def observe(self, h) -> None:
        self.cumulative += np.asarray(h, dtype=float)
        self.round += 1

    def reset(self) -> None:
        """Clear history; the noise stream keeps running."""
        self.cumulative = np.zeros(2 * self.space.horizon)
        self.round = 0

    def perturbed_best_response(self) -> Schedule:
        noise = self.rng.uniform(0.0, self.eta, 2 * self.space.horizon)
        weights = self.cumulative + noise
        cost = dp.LinearCost(weights, self.kappa)
        schedule, _ = dp.minimize(self.space, cost)
        return schedule


def make_state(space: ActionSpace, kappa: float, eta: float, seed) -> FtplState:
    return FtplState(space, kappa, eta, np.random.default_rng(seed))


def run_no_regret_dynamics(
    spec: GameSpec, rounds: int, eta: float, seeds: list[int]
) -> PlayHistory:
    """All players run FTPL simultaneously with private randomness; each round
    everyone draws, then observes the realized opponents' cost vector."""
    if rounds < 1:
        raise ValueError("rounds must be >= 1")
    if len(seeds) != spec.n_players:
        raise ValueError("need one seed per player")
    T = spec.horizon
    states = [make_state(sp, spec.kappa, eta, sd) for sp, sd in zip(spec.players, seeds)]
    history = []
    for _ in range(rounds):
        played = [st.perturbed_best_response() for st in states]
        profile = Profile(played)
        for i, st in enumerate(states):
            others = [s for j, s in enumerate(played) if j != i]
            st.observe(cost_vector(others, spec.kappa, T))
        history.append(profile)
    return PlayHistory(tuple(history), spec)


def regret_bound_constants(spec: GameSpec) -> tuple[float, float, float]:
    """Leading expressions for the OLO diameter D, adversary norm M, and cost
    range C of the lifted game (upper bounds; used by the eta presets and the
    regret-bound sanity check)."""
    n = spec.n_players
    T = spec.horizon
    kappa = spec.kappa
    theta = max(max(abs(p.theta_lower), abs(p.theta_upper)) for p in spec.players)
    f_norm = theta * T + theta**2 * T + kappa * theta**2 * T * (T - 1) / 2
    d_diam = 2 * f_norm
    m_norm = (n - 1) * (theta * T + kappa * theta * T * (T - 1) / 2) + T
    h_inf = max((n - 1) * theta * (1 + kappa * (T - 1)), 1)
    c_range = f_norm * h_inf
    return d_diam, m_norm, c_range


ETA_PAPER_DEFAULT = 50.0


def eta_preset(name: str, spec: GameSpec, rounds: int) -> float:
    """Named noise scales: 'paper' (50, the experiments' sqrt-rounds guideline),
    'kalai-vempala' (sqrt(2MCR/D)), 'dynamics' (n*T*sqrt(2*theta*R))."""
    if name == "paper":
        return ETA_PAPER_DEFAULT
    if name == "kalai-vempala":
        d_diam, m_norm, c_range = regret_bound_constants(spec)
        return math.sqrt(2 * m_norm * c_range * rounds / d_diam)
    if name == "dynamics":
        theta = max(max(abs(p.theta_lower), abs(p.theta_upper)) for p in spec.players)
        return spec.n_players * spec.horizon * math.sqrt(2 * theta * rounds)
    raise ValueError(f"unknown eta preset {name!r}")
