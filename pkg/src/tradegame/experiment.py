"""Kappa-sweep experiment runner: dynamics runs, CSV artifacts, manifest.

Layout under the output directory:

    kappa_<value>/run_<k>/trace.csv         one row per (round, player)
    kappa_<value>/run_<k>/regret_curve.csv  per-player regret checkpoints
    kappa_<value>/run_<k>/metrics.csv       one summary row for the run
    kappa_<value>/run_<k>/meta.json         game parameters for replay
    summary.json                            per-kappa aggregates
    manifest.json                           sha256 of every written file

Everything is a pure function of the config (seeds are derived per run and
player from the base seed), so re-running a config reproduces the manifest
hashes byte for byte.
"""

from __future__ import annotations

import csv
import hashlib
import json
import math
import os
from dataclasses import asdict, dataclass
from fractions import Fraction

import numpy as np

from tradegame import br, ftpl, game, metrics
from tradegame.game import ActionSpace, GameSpec, Profile
from tradegame.history import PlayHistory
from tradegame.sampling import random_profile, random_space
from tradegame.swap import SwapRunResult, TreeSwapConfig, run_swap_dynamics

DEFAULT_KAPPAS = (0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 5.0, 10.0)

ALGORITHMS = ("ftpl", "swap", "br")


@dataclass(frozen=True)
class ExperimentConfig:
    volumes: tuple[int, ...] = (10, 10)
    horizon: int = 5
    theta_lower: int = -5
    theta_upper: int = 5
    kappas: tuple[float, ...] = DEFAULT_KAPPAS
    rounds: int = 2500
    runs: int = 10
    eta: float | str = 50.0  # number, or preset name for ftpl.eta_preset
    seed: int = 0
    algo: str = "ftpl"
    out_dir: str = "out"
    swap_block: int = 150
    swap_depth: int = 2
    br_epsilon: float = 1.0
    br_max_sweeps: int = 1000

    def __post_init__(self):
        if self.algo not in ALGORITHMS:
            raise ValueError(f"algo must be one of {ALGORITHMS}, got {self.algo!r}")
        if self.rounds < 1 or self.runs < 1:
            raise ValueError("rounds and runs must be positive")
        if not self.kappas:
            raise ValueError("need at least one kappa")
        if any(k < 0 for k in self.kappas):
            raise ValueError("kappa values must be >= 0")
        # constructing the spaces validates nonemptiness
        self.spec(self.kappas[0])
        if self.algo == "swap":
            TreeSwapConfig(self.swap_block, self.swap_depth).validate_rounds(self.rounds)

    def spec(self, kappa: float) -> GameSpec:
        spaces = [
            ActionSpace(v, self.horizon, self.theta_lower, self.theta_upper)
            for v in self.volumes
        ]
        return GameSpec(spaces, kappa)

    def resolve_eta(self, spec: GameSpec) -> float:
        if isinstance(self.eta, str):
            return ftpl.eta_preset(self.eta, spec, self.rounds)
        return float(self.eta)

    @classmethod
    def from_file(cls, path: str, overrides: dict | None = None) -> "ExperimentConfig":
        with open(path) as fh:
            raw = json.load(fh)
        if not isinstance(raw, dict):
            raise ValueError("config file must hold a flat JSON object")
        return cls.from_dict({**raw, **(overrides or {})})

    @classmethod
    def from_dict(cls, raw: dict) -> "ExperimentConfig":
        known = {f.name for f in cls.__dataclass_fields__.values()}
        unknown = set(raw) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        kw = dict(raw)
        for key in ("volumes", "kappas"):
            if key in kw:
                kw[key] = tuple(kw[key])
        return cls(**kw)


def player_seed(base_seed: int, run_index: int, player_index: int) -> int:
    """Stable per-(run, player) seed derived by hashing the index tuple."""
    digest = hashlib.sha256(
        f"{base_seed}:{run_index}:{player_index}".encode()
    ).digest()
    return int.from_bytes(digest[:8], "big")


def kappa_label(kappa: float) -> str:
    return format(float(kappa), "g")


def regret_checkpoints(rounds: int) -> list[int]:
    """All rounds for short runs; every 10th (plus 100 and the end) for long."""
    if rounds <= 300:
        return list(range(1, rounds + 1))
    pts = set(range(10, rounds + 1, 10))
    pts.update((1, 100, rounds))
    return sorted(pts)


def _fmt(x) -> str:
    if isinstance(x, float):
        return repr(x)
    return str(x)


def _write_csv(path: str, header: list[str], rows: list[list]) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for row in rows:
            w.writerow([_fmt(x) for x in row])


def _run_dynamics(cfg: ExperimentConfig, kappa: float, run_index: int):
    """Execute one cell; returns (history, levels-or-None, br_log-or-None)."""
    spec = cfg.spec(kappa)
    seeds = [player_seed(cfg.seed, run_index, i) for i in range(spec.n_players)]
    if cfg.algo == "ftpl":
        eta = cfg.resolve_eta(spec)
        history = ftpl.run_no_regret_dynamics(spec, cfg.rounds, eta, seeds)
        return history, None, None
    if cfg.algo == "swap":
        eta = cfg.resolve_eta(spec)
        tree = TreeSwapConfig(cfg.swap_block, cfg.swap_depth)
        result: SwapRunResult = run_swap_dynamics(spec, tree, eta, seeds)
        return result.history, result.levels, None
    # best-response dynamics: deterministic, from the equal-split profile
    init = Profile([br.equal_split_schedule(sp) for sp in spec.players])
    bcfg = br.BrDynamicsConfig(cfg.br_epsilon, cfg.br_max_sweeps, kappa)
    try:
        final, log = br.run_br_dynamics(spec, init, bcfg)
    except br.NonConvergenceError as err:
        final, log = err.profile, err.log
    return PlayHistory((final,), spec), None, log


def _metrics_row(cfg: ExperimentConfig, kappa: float, run_id: str, history) -> dict:
    spec = history.spec
    row = {"run_id": run_id, "kappa": float(kappa), "rounds": history.n_rounds}
    regrets = [metrics.external_regret(history, i) for i in range(spec.n_players)]
    for i, r in enumerate(regrets, start=1):
        row[f"regret_p{i}"] = r
    row["dist_ne"] = metrics.distance_to_ne(history)
    row["dist_ce"] = metrics.distance_to_ce(history)
    row["dist_cce"] = max(regrets)
    row["tv"] = metrics.tv_distance(history) if spec.n_players == 2 else ""
    row["welfare"] = metrics.welfare(history)
    return row


def _trace_rows(run_id: str, history, kappa: float, levels) -> tuple[list[str], list[list]]:
    header = ["run_id", "round", "player", "schedule", "realized_cost"]
    if levels is not None:
        header.append("level")
    rows = []
    for r, profile in enumerate(history.rounds, start=1):
        for i in range(len(profile)):
            cost = game.total_cost(i, profile, kappa)
            row = [run_id, r, i + 1, profile[i].encode(), float(cost)]
            if levels is not None:
                row.append(levels[r - 1][i])
            rows.append(row)
    return header, rows


def run_cell(cfg: ExperimentConfig, kappa: float, run_index: int, run_dir: str) -> dict:
    """One (kappa, run) cell: run the dynamics and write its artifacts."""
    os.makedirs(run_dir, exist_ok=True)
    run_id = f"kappa_{kappa_label(kappa)}_run_{run_index}"
    history, levels, br_log = _run_dynamics(cfg, kappa, run_index)

    header, rows = _trace_rows(run_id, history, kappa, levels)
    _write_csv(os.path.join(run_dir, "trace.csv"), header, rows)

    if cfg.algo != "br":
        curve_rows = []
        pts = regret_checkpoints(history.n_rounds)
        for i in range(history.spec.n_players):
            for r, cum, avg in metrics.regret_curve(history, i, pts):
                curve_rows.append([run_id, r, i + 1, cum, avg])
        _write_csv(
            os.path.join(run_dir, "regret_curve.csv"),
            ["run_id", "round", "player", "cum_regret", "avg_regret"],
            curve_rows,
        )

    if br_log is not None:
        _write_csv(
            os.path.join(run_dir, "br_log.csv"),
            ["run_id", "step", "sweep", "player", "old_cost", "new_cost", "potential"],
            [
                [run_id, s + 1, row.sweep, row.player + 1, row.old_cost, row.new_cost, row.potential]
                for s, row in enumerate(br_log)
            ],
        )

    mrow = _metrics_row(cfg, kappa, run_id, history)
    _write_csv(
        os.path.join(run_dir, "metrics.csv"), list(mrow), [list(mrow.values())]
    )

    meta = {
        "volumes": list(cfg.volumes),
        "horizon": cfg.horizon,
        "theta_lower": cfg.theta_lower,
        "theta_upper": cfg.theta_upper,
        "kappa": float(kappa),
        "algo": cfg.algo,
        "run_index": run_index,
    }
    with open(os.path.join(run_dir, "meta.json"), "w") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return mrow


def _aggregate(rows: list[dict]) -> dict:
    out = {}
    keys = [k for k in rows[0] if isinstance(rows[0][k], (int, float)) and k != "rounds"]
    for k in keys:
        vals = np.array([float(r[k]) for r in rows])
        out[k] = {"mean": float(vals.mean()), "std": float(vals.std())}
    return out


def sha256_file(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


def run_experiment(cfg: ExperimentConfig) -> dict:
    """Full sweep over cfg.kappas x cfg.runs; returns the summary dict."""
    os.makedirs(cfg.out_dir, exist_ok=True)
    per_kappa = {}
    for kappa in cfg.kappas:
        label = kappa_label(kappa)
        rows = []
        for run_index in range(cfg.runs):
            run_dir = os.path.join(cfg.out_dir, f"kappa_{label}", f"run_{run_index}")
            rows.append(run_cell(cfg, kappa, run_index, run_dir))
        per_kappa[label] = {"runs": rows, "aggregate": _aggregate(rows)}

    # the echoed config omits out_dir so artifacts do not depend on where
    # they were written (keeps reruns byte-identical across directories)
    cfg_echo = {k: v for k, v in asdict(cfg).items() if k != "out_dir"}
    summary = {"config": cfg_echo, "kappas": per_kappa}
    spath = os.path.join(cfg.out_dir, "summary.json")
    with open(spath, "w") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True)
        fh.write("\n")

    files = {}
    for root, _, names in os.walk(cfg.out_dir):
        for name in sorted(names):
            if name == "manifest.json":
                continue
            full = os.path.join(root, name)
            files[os.path.relpath(full, cfg.out_dir)] = sha256_file(full)
    manifest = {"config": cfg_echo, "files": dict(sorted(files.items()))}
    with open(os.path.join(cfg.out_dir, "manifest.json"), "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return summary


# ---------------------------------------------------------------------------
# Self-validation: exact identities the implementation must satisfy, plus
# fault hooks that deliberately perturb a computation so the suite's failure
# detection can itself be tested.

def validate_suite(faults: frozenset[str] = frozenset(), samples: int = 100, seed: int = 7) -> dict:
    """Run the internal consistency checks; returns {'passed': bool, 'checks': {...}}.

    Known faults (for negative testing): 'decomposition_kappa' skews kappa in
    the split identity; 'dp_off_by_one' drops the last enumeration candidate
    from the oracle comparison.
    """
    rng = np.random.default_rng(seed)
    checks = {}

    checks["cycle_fixture"] = br.cycle_fixture_check()

    # weighted split of the total cost, exact over a dyadic kappa grid
    ok = True
    kappas = [0, 1, 2, Fraction(1, 2), Fraction(5, 2)]
    for _ in range(samples):
        space = random_space(rng)
        n = int(rng.integers(1, 4))
        spec = GameSpec([space] * n, 0)
        profile = random_profile(spec, rng)
        for kap in kappas:
            kap_used = kap * Fraction(11, 10) if "decomposition_kappa" in faults else kap
            c = game.temp_cost(0, profile) + kap_used * game.perm_cost(0, profile)
            rhs = (1 - Fraction(kap) / 2) * game.temp_cost(0, profile) + kap * game.perm_mean_cost(0, profile)
            if c != rhs:
                ok = False
    checks["cost_decomposition"] = ok

    # sum of constant-sum costs equals half the squared total volume
    ok = True
    for _ in range(samples):
        space = random_space(rng)
        n = int(rng.integers(1, 4))
        spec = GameSpec([space] * n, 0)
        profile = random_profile(spec, rng)
        total = sum(game.perm_mean_cost(i, profile) for i in range(n))
        vol = sum(s.volume for s in profile.schedules)
        if total != Fraction(vol * vol, 2):
            ok = False
    checks["constant_sum"] = ok

    # DP optimum matches exhaustive enumeration on small instances
    from tradegame import dp

    ok = True
    for _ in range(max(10, samples // 5)):
        space = random_space(rng, max_horizon=4, theta_bound=3)
        kappa = float(rng.choice([0.0, 0.5, 1.0, 2.0]))
        weights = rng.uniform(-5, 5, 2 * space.horizon)
        cost = dp.LinearCost(weights, kappa)
        _, value = dp.minimize(space, cost)
        totals = sorted(
            sum(cost(t + 1, sum(s.increments[:t]), s.increments[t]) for t in range(space.horizon))
            for s in dp.enumerate_schedules(space)
        )
        if "dp_off_by_one" in faults and len(totals) > 1:
            totals = totals[1:]  # drop the true optimum
        best = totals[0]
        if not math.isclose(value, best, rel_tol=1e-9, abs_tol=1e-9):
            ok = False
    checks["dp_enumeration_oracle"] = ok

    return {"passed": all(checks.values()), "checks": checks}
