"""Tree reduction from swap regret to the base FTPL learner."""

import pytest

from tradegame import ftpl, metrics
from tradegame.game import ActionSpace, GameSpec
from tradegame.swap import TreeSwapConfig, run_swap_dynamics


def spec_with(kappa):
    return GameSpec([ActionSpace(10, 5, -5, 5)] * 2, kappa)


def test_config_validation():
    cfg = TreeSwapConfig(150, 2)
    assert cfg.total_rounds == 22500
    cfg.validate_rounds(22500)
    cfg.validate_rounds(150)  # M^(d-1)
    with pytest.raises(ValueError):
        cfg.validate_rounds(149)
    with pytest.raises(ValueError):
        cfg.validate_rounds(22501)
    with pytest.raises(ValueError):
        TreeSwapConfig(0, 2)
    with pytest.raises(ValueError):
        TreeSwapConfig(10, 0)


def test_depth_one_reproduces_plain_ftpl():
    spec = spec_with(2.0)
    result = run_swap_dynamics(spec, TreeSwapConfig(80, 1), 50.0, [3, 4])
    plain = ftpl.run_no_regret_dynamics(spec, 80, 50.0, [3, 4])
    assert [p.encode() for p in result.history.rounds] == [p.encode() for p in plain.rounds]
    assert all(levels == (0, 0) for levels in result.levels)


def test_run_shape_and_levels():
    spec = spec_with(1.0)
    cfg = TreeSwapConfig(12, 2)
    result = run_swap_dynamics(spec, cfg, 50.0, [1, 2])
    assert result.history.n_rounds == 144
    assert len(result.levels) == 144
    assert all(0 <= l < 2 for levels in result.levels for l in levels)
    # both levels actually get used
    used = {l for levels in result.levels for l in levels}
    assert used == {0, 1}


def test_seed_mismatch_raises():
    with pytest.raises(ValueError):
        run_swap_dynamics(spec_with(0.0), TreeSwapConfig(10, 2), 50.0, [1])


def test_swap_regret_drops_with_more_rounds():
    spec = spec_with(0.0)
    small = run_swap_dynamics(spec, TreeSwapConfig(15, 2), 50.0, [1, 2])
    big = run_swap_dynamics(spec, TreeSwapConfig(60, 2), 50.0, [1, 2])
    s_small = max(metrics.swap_regret(small.history, i) for i in range(2))
    s_big = max(metrics.swap_regret(big.history, i) for i in range(2))
    assert s_big < s_small
