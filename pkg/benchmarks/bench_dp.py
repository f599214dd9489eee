"""Benchmark the compiled linear-DP kernel against the pure-Python fallback.

Run: python benchmarks/bench_dp.py [--reps 2000]
"""

import argparse
import time

import numpy as np

from tradegame import _backend, _dpcore_py
from tradegame.game import ActionSpace


def bench(fn, cases, reps):
    # warm-up
    for args in cases[:10]:
        fn(*args)
    t0 = time.perf_counter()
    for r in range(reps):
        fn(*cases[r % len(cases)])
    return (time.perf_counter() - t0) / reps


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--reps", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    scenarios = [
        ("experiment scale (V=10, T=5, theta=+/-5)", ActionSpace(10, 5, -5, 5)),
        ("long horizon (V=20, T=20, theta=+/-5)", ActionSpace(20, 20, -5, 5)),
        ("wide limits (V=0, T=10, theta=+/-20)", ActionSpace(0, 10, -20, 20)),
    ]

    print(f"active backend: {_backend.BACKEND}")
    for name, space in scenarios:
        cases = []
        for _ in range(50):
            w = rng.uniform(-100, 100, 2 * space.horizon)
            cases.append(
                (space.target_volume, space.horizon, space.theta_lower,
                 space.theta_upper, 2.0, w)
            )
        t_c = bench(_backend.minimize_linear, cases, args.reps)
        t_p = bench(_dpcore_py.minimize_linear, cases, args.reps)
        print(
            f"{name}: compiled {t_c * 1e6:8.1f} us/call, "
            f"python {t_p * 1e6:8.1f} us/call, speedup {t_p / t_c:5.1f}x"
        )


if __name__ == "__main__":
    main()
