"""Equilibrium diagnostics against small brute-force oracles."""

import itertools
import math

import numpy as np
import pytest

from tradegame import dp, ftpl, game, metrics
from tradegame.game import ActionSpace, GameSpec, Profile, Schedule
from tradegame.history import EmpiricalDistributions, PlayHistory
from tradegame.sampling import random_profile


def small_spec(kappa=1.0):
    return GameSpec([ActionSpace(2, 3, 0, 2)] * 2, kappa)


def random_history(spec, rng, rounds):
    return PlayHistory(tuple(random_profile(spec, rng) for _ in range(rounds)), spec)


def test_tv_alternating_two_profiles():
    # two distinct profiles alternating: joint mass 1/2 each, product of
    # marginals 1/4 on the support, support-restricted sum = 2 * 1/4 = 0.5
    spec = small_spec()
    p1 = Profile([Schedule([2, 0, 0]), Schedule([0, 0, 2])])
    p2 = Profile([Schedule([0, 2, 0]), Schedule([1, 1, 0])])
    history = PlayHistory((p1, p2) * 5, spec)
    assert metrics.tv_distance(history) == pytest.approx(0.5)


def test_tv_zero_for_constant_play_and_range(rng):
    spec = small_spec()
    p = random_profile(spec, rng)
    assert metrics.tv_distance(PlayHistory((p,) * 8, spec)) == 0.0
    for _ in range(20):
        h = random_history(spec, rng, 12)
        assert 0.0 <= metrics.tv_distance(h) <= 2.0


def test_tv_requires_two_players(rng):
    spec = GameSpec([ActionSpace(2, 3, 0, 2)] * 3, 0.0)
    with pytest.raises(ValueError):
        metrics.tv_distance(random_history(spec, rng, 4))


def test_external_regret_zero_at_mutual_best_response():
    # find a pure NE by brute force, play it forever: zero regret everywhere
    spec = small_spec(1.0)
    actions = list(dp.enumerate_schedules(spec.players[0]))
    ne = None
    for a, b in itertools.product(actions, actions):
        p = Profile([a, b])
        if all(
            game.total_cost(i, p, spec.kappa)
            <= min(
                game.total_cost(i, p.replace(i, s), spec.kappa) for s in actions
            )
            for i in range(2)
        ):
            ne = p
            break
    assert ne is not None
    history = PlayHistory((ne,) * 10, spec)
    for i in range(2):
        assert metrics.external_regret(history, i) == pytest.approx(0.0, abs=1e-12)
    assert metrics.distance_to_ne(history) == pytest.approx(0.0, abs=1e-12)
    assert metrics.distance_to_ce(history) == pytest.approx(0.0, abs=1e-12)


def test_external_regret_matches_enumeration(rng):
    spec = small_spec(1.0)
    actions = list(dp.enumerate_schedules(spec.players[0]))
    for _ in range(20):
        h = random_history(spec, rng, 9)
        for i in range(2):
            realized = np.mean([game.total_cost(i, p, spec.kappa) for p in h.rounds])
            best = min(
                np.mean([game.total_cost(i, p.replace(i, s), spec.kappa) for p in h.rounds])
                for s in actions
            )
            assert metrics.external_regret(h, i) == pytest.approx(realized - best)


def test_swap_regret_matches_enumeration(rng):
    spec = small_spec(1.0)
    actions = list(dp.enumerate_schedules(spec.players[0]))
    for _ in range(10):
        h = random_history(spec, rng, 9)
        for i in range(2):
            # optimal remapping: for each played action, the best replacement
            total = 0.0
            by_action = {}
            for p in h.rounds:
                by_action.setdefault(p[i].encode(), []).append(p)
            for key, rounds_with in by_action.items():
                gain = max(
                    np.mean(
                        [
                            game.total_cost(i, p, spec.kappa)
                            - game.total_cost(i, p.replace(i, s), spec.kappa)
                            for p in rounds_with
                        ]
                    )
                    for s in actions
                )
                total += len(rounds_with) / h.n_rounds * gain
            assert metrics.swap_regret(h, i) == pytest.approx(total)


def test_swap_regret_dominates_external(rng):
    spec = small_spec(2.0)
    for _ in range(20):
        h = random_history(spec, rng, 10)
        for i in range(2):
            assert metrics.swap_regret(h, i) >= metrics.external_regret(h, i) - 1e-9


def test_distance_to_ne_matches_enumeration(rng):
    spec = small_spec(1.0)
    actions = list(dp.enumerate_schedules(spec.players[0]))
    for _ in range(10):
        h = random_history(spec, rng, 8)
        dist = EmpiricalDistributions.from_history(h)
        worst = 0.0
        for i in range(2):
            j = 1 - i
            expected = 0.0
            for ki, pi in dist.marginals[i].items():
                for kj, pj in dist.marginals[j].items():
                    pair = [None, None]
                    pair[i] = dist.schedules[i][ki]
                    pair[j] = dist.schedules[j][kj]
                    expected += pi * pj * game.total_cost(i, Profile(pair), spec.kappa)
            best = min(
                sum(
                    pj * game.total_cost(
                        i,
                        Profile([s, dist.schedules[j][kj]] if i == 0 else [dist.schedules[j][kj], s]),
                        spec.kappa,
                    )
                    for kj, pj in dist.marginals[j].items()
                )
                for s in actions
            )
            worst = max(worst, expected - best)
        assert metrics.distance_to_ne(h) == pytest.approx(worst)


def test_regret_curve_consistency(rng):
    spec = small_spec(0.5)
    h = random_history(spec, rng, 20)
    curve = metrics.regret_curve(h, 0, [5, 10, 20])
    assert [r for r, _, _ in curve] == [5, 10, 20]
    # final point agrees with external_regret
    r, cum, avg = curve[-1]
    assert avg == pytest.approx(metrics.external_regret(h, 0))
    assert cum == pytest.approx(avg * 20)
    with pytest.raises(ValueError):
        metrics.regret_curve(h, 0, [0, 5])
    with pytest.raises(ValueError):
        metrics.regret_curve(h, 0, [25])


def test_welfare_is_mean_total_cost(rng):
    spec = small_spec(1.5)
    h = random_history(spec, rng, 7)
    expected = np.mean(
        [sum(game.total_cost(i, p, spec.kappa) for i in range(2)) for p in h.rounds]
    )
    assert metrics.welfare(h) == pytest.approx(expected)


def test_empirical_distributions_are_consistent(rng):
    spec = small_spec()
    h = random_history(spec, rng, 15)
    dist = EmpiricalDistributions.from_history(h)
    assert sum(dist.joint.values()) == pytest.approx(1.0)
    for m in dist.marginals:
        assert sum(m.values()) == pytest.approx(1.0)
    # marginals project the joint
    for i in range(2):
        proj = {}
        for key, pr in dist.joint.items():
            k = key.split("|")[i]
            proj[k] = proj.get(k, 0.0) + pr
        assert proj == pytest.approx(dist.marginals[i])
