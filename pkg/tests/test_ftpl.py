"""Linearized follow-the-perturbed-leader."""

import math

import numpy as np
import pytest

from tradegame import dp, ftpl, game, metrics
from tradegame.game import ActionSpace, GameSpec, Profile
from tradegame.sampling import random_profile, random_space


def test_embedding_dimensions():
    s = game.Schedule([2, 2, 1, 0, 0])
    assert len(ftpl.embed_strategy(s, 1.0)) == 10
    assert len(ftpl.cost_vector([s, s], 1.0, 5)) == 10


def test_embedding_preserves_cost_exactly(rng):
    # integer kappa: <f, h> must equal the trading cost with no float error
    for _ in range(500):
        space = random_space(rng)
        n = int(rng.integers(2, 5))
        kappa = int(rng.integers(0, 11))
        spec = GameSpec([space] * n, kappa)
        profile = random_profile(spec, rng)
        i = int(rng.integers(n))
        others = [s for j, s in enumerate(profile.schedules) if j != i]
        f = ftpl.embed_strategy(profile[i], kappa)
        h = ftpl.cost_vector(others, kappa, space.horizon)
        assert ftpl.inner(f, h) == game.total_cost(i, profile, kappa)


def test_zero_noise_ftpl_is_best_response_to_average(rng):
    space = ActionSpace(10, 5, -5, 5)
    spec = GameSpec([space, space], 2.0)
    state = ftpl.make_state(space, 2.0, 0.0, seed=1)  # eta = 0: no perturbation
    hsum = np.zeros(10)
    for _ in range(20):
        profile = random_profile(spec, rng)
        h = ftpl.cost_vector([profile[1]], 2.0, 5)
        state.observe(h)
        hsum += np.asarray(h, dtype=float)
    played = state.perturbed_best_response()
    expected, _ = dp.minimize(space, dp.LinearCost(hsum, 2.0))
    assert played.increments == expected.increments


def test_dynamics_deterministic_given_seeds():
    spec = GameSpec([ActionSpace(10, 5, -5, 5)] * 2, 2.0)
    h1 = ftpl.run_no_regret_dynamics(spec, 60, 50.0, [7, 8])
    h2 = ftpl.run_no_regret_dynamics(spec, 60, 50.0, [7, 8])
    h3 = ftpl.run_no_regret_dynamics(spec, 60, 50.0, [7, 9])
    assert [p.encode() for p in h1.rounds] == [p.encode() for p in h2.rounds]
    assert [p.encode() for p in h1.rounds] != [p.encode() for p in h3.rounds]


def test_dynamics_input_validation():
    spec = GameSpec([ActionSpace(10, 5, -5, 5)] * 2, 0.0)
    with pytest.raises(ValueError):
        ftpl.run_no_regret_dynamics(spec, 0, 50.0, [1, 2])
    with pytest.raises(ValueError):
        ftpl.run_no_regret_dynamics(spec, 10, 50.0, [1])


def test_average_regret_shrinks_with_rounds():
    spec = GameSpec([ActionSpace(10, 5, -5, 5)] * 2, 2.0)
    short = ftpl.run_no_regret_dynamics(spec, 100, 50.0, [1, 2])
    long = ftpl.run_no_regret_dynamics(spec, 1500, 50.0, [1, 2])
    r_short = max(metrics.external_regret(short, i) for i in range(2))
    r_long = max(metrics.external_regret(long, i) for i in range(2))
    assert r_long < r_short / 2


def test_eta_presets():
    spec = GameSpec([ActionSpace(10, 5, -5, 5)] * 2, 2.0)
    assert ftpl.eta_preset("paper", spec, 2500) == 50.0
    kv = ftpl.eta_preset("kalai-vempala", spec, 2500)
    dyn = ftpl.eta_preset("dynamics", spec, 2500)
    assert kv > 0 and dyn > 0
    assert dyn == 2 * 5 * math.sqrt(2 * 5 * 2500)
    with pytest.raises(ValueError):
        ftpl.eta_preset("nope", spec, 2500)


def test_regret_bound_constants_positive_and_monotone_in_kappa():
    base = GameSpec([ActionSpace(10, 5, -5, 5)] * 2, 0.0)
    heavy = GameSpec([ActionSpace(10, 5, -5, 5)] * 2, 10.0)
    d0, m0, c0 = ftpl.regret_bound_constants(base)
    d1, m1, c1 = ftpl.regret_bound_constants(heavy)
    assert all(x > 0 for x in (d0, m0, c0))
    assert d1 > d0 and m1 > m0 and c1 > c0
