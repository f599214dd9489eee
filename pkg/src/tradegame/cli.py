"""Command-line entry points: run / validate / br / metrics.

Exit codes: 0 on success, 2 on validation failure or bad inputs.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys

from tradegame import br as br_mod
from tradegame import experiment, metrics
from tradegame.game import ActionSpace, GameSpec, InvalidScheduleError, Profile, Schedule
from tradegame.history import PlayHistory

EXIT_OK = 0
EXIT_INVALID = 2


def _parse_kappas(text: str) -> tuple[float, ...]:
    return tuple(float(tok) for tok in text.split(","))


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tradegame")
    sub = p.add_subparsers(dest="command", required=True)

    runp = sub.add_parser("run", help="run the kappa-sweep experiment")
    runp.add_argument("--config", help="JSON config file (flat keys)")
    runp.add_argument("--kappa", help="comma-separated kappa values (overrides config)")
    runp.add_argument("--rounds", type=int)
    runp.add_argument("--runs", type=int)
    runp.add_argument("--eta", help="noise scale (number) or preset name")
    runp.add_argument("--seed", type=int)
    runp.add_argument("--algo", choices=experiment.ALGORITHMS)
    runp.add_argument("--out", help="output directory")

    valp = sub.add_parser("validate", help="run the internal consistency checks")
    valp.add_argument("--samples", type=int, default=100)
    valp.add_argument("--seed", type=int, default=7)
    valp.add_argument(
        "--inject-fault",
        action="append",
        default=[],
        help=argparse.SUPPRESS,  # negative testing of the checks themselves
    )

    brp = sub.add_parser("br", help="best response against fixed opponent schedules")
    brp.add_argument("opponents", nargs="*", help='opponent schedules, e.g. "2,2,1,0,0"')
    brp.add_argument("--kappa", type=float, default=0.0)
    brp.add_argument("--volume", type=int, required=True)
    brp.add_argument("--horizon", type=int, required=True)
    brp.add_argument("--theta-lower", type=int, required=True)
    brp.add_argument("--theta-upper", type=int, required=True)

    metp = sub.add_parser("metrics", help="recompute metrics from a trace.csv")
    metp.add_argument("--trace", required=True, help="path to a run's trace.csv")
    metp.add_argument("--out", help="write the metrics row to this CSV (default: stdout)")
    return p


def _cmd_run(args) -> int:
    overrides = {}
    if args.kappa is not None:
        overrides["kappas"] = _parse_kappas(args.kappa)
    for key, val in (
        ("rounds", args.rounds),
        ("runs", args.runs),
        ("seed", args.seed),
        ("algo", args.algo),
        ("out_dir", args.out),
    ):
        if val is not None:
            overrides[key] = val
    if args.eta is not None:
        try:
            overrides["eta"] = float(args.eta)
        except ValueError:
            overrides["eta"] = args.eta
    try:
        if args.config:
            cfg = experiment.ExperimentConfig.from_file(args.config, overrides)
        else:
            cfg = experiment.ExperimentConfig.from_dict(overrides)
    except (ValueError, TypeError, OSError, json.JSONDecodeError) as err:
        print(f"invalid config: {err}", file=sys.stderr)
        return EXIT_INVALID
    experiment.run_experiment(cfg)
    n_cells = len(cfg.kappas) * cfg.runs
    print(f"wrote {n_cells} runs under {cfg.out_dir}")
    print(os.path.join(cfg.out_dir, "summary.json"))
    return EXIT_OK


def _cmd_validate(args) -> int:
    report = experiment.validate_suite(
        faults=frozenset(args.inject_fault), samples=args.samples, seed=args.seed
    )
    for name, ok in report["checks"].items():
        print(f"{'PASS' if ok else 'FAIL'} {name}")
    if not report["passed"]:
        return EXIT_INVALID
    print("all checks passed")
    return EXIT_OK


def _cmd_br(args) -> int:
    try:
        space = ActionSpace(args.volume, args.horizon, args.theta_lower, args.theta_upper)
        opponents = []
        for text in args.opponents:
            s = Schedule.decode(text)
            if s.horizon != args.horizon:
                raise InvalidScheduleError(
                    f"opponent schedule {text!r} has horizon {s.horizon}, expected {args.horizon}"
                )
            opponents.append(s)
        cost = br_mod.trading_one_step_cost(opponents, args.kappa, args.horizon)
        from tradegame import dp

        schedule, value = dp.minimize(space, cost)
    except (ValueError, InvalidScheduleError) as err:
        print(f"invalid input: {err}", file=sys.stderr)
        return EXIT_INVALID
    print(schedule.encode())
    print(f"cost {value}")
    return EXIT_OK


def _read_trace(path: str):
    meta_path = os.path.join(os.path.dirname(path), "meta.json")
    if not os.path.exists(meta_path):
        raise ValueError(f"no meta.json next to {path}; cannot reconstruct the game")
    with open(meta_path) as fh:
        meta = json.load(fh)
    spaces = [
        ActionSpace(v, meta["horizon"], meta["theta_lower"], meta["theta_upper"])
        for v in meta["volumes"]
    ]
    spec = GameSpec(spaces, meta["kappa"])
    rounds: dict[int, dict[int, Schedule]] = {}
    run_id = None
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            run_id = row["run_id"]
            r = int(row["round"])
            i = int(row["player"]) - 1
            rounds.setdefault(r, {})[i] = Schedule.decode(row["schedule"], spaces[i])
    profiles = []
    for r in sorted(rounds):
        per = rounds[r]
        if sorted(per) != list(range(spec.n_players)):
            raise ValueError(f"round {r} is missing players in {path}")
        profiles.append(Profile([per[i] for i in range(spec.n_players)]))
    return PlayHistory(tuple(profiles), spec), run_id, meta


def _cmd_metrics(args) -> int:
    try:
        history, run_id, meta = _read_trace(args.trace)
    except (ValueError, OSError, KeyError, InvalidScheduleError) as err:
        print(f"invalid trace: {err}", file=sys.stderr)
        return EXIT_INVALID
    spec = history.spec
    row = {"run_id": run_id, "kappa": spec.kappa, "rounds": history.n_rounds}
    regrets = [metrics.external_regret(history, i) for i in range(spec.n_players)]
    for i, r in enumerate(regrets, start=1):
        row[f"regret_p{i}"] = r
    row["dist_ne"] = metrics.distance_to_ne(history)
    row["dist_ce"] = metrics.distance_to_ce(history)
    row["dist_cce"] = max(regrets)
    row["tv"] = metrics.tv_distance(history) if spec.n_players == 2 else ""
    row["welfare"] = metrics.welfare(history)
    if args.out:
        experiment._write_csv(args.out, list(row), [list(row.values())])
        print(args.out)
    else:
        print(",".join(row.keys()))
        print(",".join(experiment._fmt(v) for v in row.values()))
    return EXIT_OK


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "run":
        return _cmd_run(args)
    if args.command == "validate":
        return _cmd_validate(args)
    if args.command == "br":
        return _cmd_br(args)
    if args.command == "metrics":
        return _cmd_metrics(args)
    raise AssertionError("unreachable")


if __name__ == "__main__":
    raise SystemExit(main())
