"""Equilibrium diagnostics over a play history.

Every "min over pure actions against a distribution" routes through the linear
DP on an averaged cost vector, never through enumeration, so the metrics stay
tractable at any horizon; enumeration exists only as a test oracle.
"""

from __future__ import annotations

import numpy as np

from tradegame import dp, game
from tradegame.ftpl import cost_vector, embed_strategy, inner
from tradegame.history import EmpiricalDistributions, PlayHistory

__all__ = [
    "PlayHistory",
    "EmpiricalDistributions",
    "external_regret",
    "regret_curve",
    "distance_to_cce",
    "distance_to_ne",
    "distance_to_ce",
    "swap_regret",
    "tv_distance",
    "welfare",
]


def _round_cost_vectors(history: PlayHistory, i: int) -> list[list[float]]:
    kappa = history.spec.kappa
    T = history.spec.horizon
    out = []
    for profile in history.rounds:
        others = [s for j, s in enumerate(profile.schedules) if j != i]
        out.append(cost_vector(others, kappa, T))
    return out


def _min_against(history_spec, i: int, weights) -> float:
    cost = dp.LinearCost(weights, history_spec.kappa)
    _, value = dp.minimize(history_spec.players[i], cost)
    return value


def external_regret(history: PlayHistory, i: int) -> float:
    """Average regret: realized mean cost minus the best fixed schedule's mean
    cost in hindsight (one DP call on the round-summed cost vector)."""
    R = history.n_rounds
    kappa = history.spec.kappa
    realized = sum(game.total_cost(i, p, kappa) for p in history.rounds)
    hsum = np.sum(_round_cost_vectors(history, i), axis=0)
    best = _min_against(history.spec, i, hsum)
    return (realized - best) / R


def regret_curve(history: PlayHistory, i: int, checkpoints=None):
    """(round, cumulative regret, average regret) at each checkpoint round."""
    R = history.n_rounds
    if checkpoints is None:
        checkpoints = range(1, R + 1)
    checkpoints = sorted(set(int(c) for c in checkpoints))
    if checkpoints[0] < 1 or checkpoints[-1] > R:
        raise ValueError("checkpoints out of range")
    kappa = history.spec.kappa
    hvecs = _round_cost_vectors(history, i)
    hsum = np.zeros(2 * history.spec.horizon)
    realized = 0.0
    out = []
    pending = list(checkpoints)
    for r, profile in enumerate(history.rounds, start=1):
        realized += game.total_cost(i, profile, kappa)
        hsum += np.asarray(hvecs[r - 1], dtype=float)
        if pending and r == pending[0]:
            pending.pop(0)
            best = _min_against(history.spec, i, hsum)
            cum = realized - best
            out.append((r, cum, cum / r))
    return out


def distance_to_cce(history: PlayHistory) -> float:
    """Max player external regret; the coarse-correlated baseline."""
    return max(external_regret(history, i) for i in range(history.spec.n_players))


def distance_to_ne(history: PlayHistory) -> float:
    """Gain of the best pure deviation against the product of marginals,
    maximized over players. Expectations use the bilinear lift: the expected
    cost vector under the product of the opponents' marginals is the mean of
    their per-player contributions."""
    spec = history.spec
    kappa = spec.kappa
    T = spec.horizon
    dist = EmpiricalDistributions.from_history(history)
    # per-player expected single-opponent contribution to h
    contrib = []
    for j in range(spec.n_players):
        acc = np.zeros(T)
        for key, pr in dist.marginals[j].items():
            s = dist.schedules[j][key]
            incs = s.increments
            held = s.holdings()
            acc += pr * np.array([incs[t] + kappa * held[t] for t in range(T)], dtype=float)
        contrib.append(acc)
    worst = 0.0
    for i in range(spec.n_players):
        head = np.zeros(T)
        for j in range(spec.n_players):
            if j != i:
                head += contrib[j]
        hbar = np.concatenate([head, np.ones(T)])
        fbar = np.zeros(2 * T)
        for key, pr in dist.marginals[i].items():
            s = dist.schedules[i][key]
            fbar += pr * np.asarray(embed_strategy(s, kappa), dtype=float)
        expected = float(fbar @ hbar)
        best = _min_against(spec, i, hbar)
        worst = max(worst, expected - best)
    return worst


def swap_regret(history: PlayHistory, i: int) -> float:
    """Average swap regret: the optimal action-to-action remapping gains,
    computed per support action with one DP call on the conditionally averaged
    cost vector."""
    spec = history.spec
    kappa = spec.kappa
    R = history.n_rounds
    hvecs = _round_cost_vectors(history, i)
    groups: dict[str, list[int]] = {}
    reps: dict[str, game.Schedule] = {}
    for r, profile in enumerate(history.rounds):
        key = profile[i].encode()
        groups.setdefault(key, []).append(r)
        reps.setdefault(key, profile[i])
    total = 0.0
    for key, rows in groups.items():
        hbar = np.mean([hvecs[r] for r in rows], axis=0)
        f = np.asarray(embed_strategy(reps[key], kappa), dtype=float)
        cond = float(f @ hbar)
        best = _min_against(spec, i, hbar)
        total += len(rows) / R * (cond - best)
    return total


def distance_to_ce(history: PlayHistory) -> float:
    """Max player swap regret of the empirical joint distribution."""
    return max(swap_regret(history, i) for i in range(history.spec.n_players))


def tv_distance(history: PlayHistory) -> float:
    """Support-restricted total-variation-style gap between the joint
    distribution and the product of marginals, summed over the joint support
    without the conventional 1/2 factor; lies in [0, 2]. Two-player only."""
    if history.spec.n_players != 2:
        raise ValueError("tv_distance is defined for two-player histories")
    dist = EmpiricalDistributions.from_history(history)
    total = 0.0
    for key, pr in dist.joint.items():
        k1, k2 = key.split("|")
        total += abs(pr - dist.marginals[0][k1] * dist.marginals[1][k2])
    return total


def welfare(history: PlayHistory) -> float:
    """Sum over players of expected cost under the empirical joint
    distribution (lower is better)."""
    kappa = history.spec.kappa
    R = history.n_rounds
    return sum(
        game.total_cost(i, p, kappa)
        for p in history.rounds
        for i in range(history.spec.n_players)
    ) / R
