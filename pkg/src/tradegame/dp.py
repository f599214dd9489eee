"""Backward-induction minimizer over constrained trading schedules.

Minimizes sum_t p^t(held_before_t, purchase_t) over all schedules in an
ActionSpace. Two paths share one surface:

  * generic costs (any callable ``(t, held, k) -> real``) run the pure-Python
    recursion and can expose their tables for inspection;
  * LinearCost instances dispatch to the compiled kernel (or its pure-Python
    twin, see tradegame._backend).

Tie-breaking is deterministic: among minimizing purchases, the smallest k wins.
Costs are compared with exact floating comparison; determinism comes from the
fixed iteration order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from tradegame import _backend
from tradegame.game import ActionSpace, Schedule

OneStepCost = Callable[[int, int, int], float]

BACKEND = _backend.BACKEND


class InfeasibleError(ValueError):
    pass


@dataclass(frozen=True)
class LinearCost:
    """One-step cost linear in a 2T weight vector:

        p^t(held, k) = k * w[t] + k * (k + kappa * held) * w[T + t]

    (w 0-indexed; first T entries weight the purchase, last T the self-impact
    term). This is the form produced by cumulative cost vectors, so the hot
    kernel handles it.
    """

    weights: tuple[float, ...]
    kappa: float

    def __init__(self, weights: Sequence[float], kappa: float):
        object.__setattr__(self, "weights", tuple(float(x) for x in weights))
        object.__setattr__(self, "kappa", float(kappa))
        if len(self.weights) % 2 != 0:
            raise ValueError("weight vector must have even length 2T")

    @property
    def horizon(self) -> int:
        return len(self.weights) // 2

    def __call__(self, t: int, held: int, k: int) -> float:
        w = self.weights
        T = self.horizon
        return k * w[t - 1] + k * (k + self.kappa * held) * w[T + t - 1]


@dataclass
class DpTables:
    """OPT values and argmin purchases keyed by (t, s), where s is the number
    of shares still to buy at the start of step t. Only feasible states are
    stored. n_evals counts one-step-cost evaluations."""

    opt: dict[tuple[int, int], float]
    br: dict[tuple[int, int], int]
    n_evals: int = 0
    windows: dict[int, tuple[int, int]] = field(default_factory=dict)


def _windows(space: ActionSpace, forced: Sequence[int] = ()) -> dict[int, tuple[int, int]]:
    V, T = space.target_volume, space.horizon
    tl, tu = space.theta_lower, space.theta_upper
    win = {}
    prefix_held = 0
    for t in range(1, T + 1):
        if t <= len(forced):
            win[t] = (V - prefix_held, V - prefix_held)
            prefix_held += forced[t - 1]
        else:
            lo = max(V - tu * (t - 1), tl * (T - t + 1), V - prefix_held - tu * (t - 1 - len(forced)))
            hi = min(V - tl * (t - 1), tu * (T - t + 1), V - prefix_held - tl * (t - 1 - len(forced)))
            win[t] = (lo, hi)
    return win


def build_tables(space: ActionSpace, cost: OneStepCost, forced: Sequence[int] = ()) -> DpTables:
    """Run the backward recursion, returning full tables (pure-Python path)."""
    V, T = space.target_volume, space.horizon
    tl, tu = space.theta_lower, space.theta_upper
    win = _windows(space, forced)
    for t, (lo, hi) in win.items():
        if lo > hi:
            raise InfeasibleError(f"no feasible state at step {t}")

    tables = DpTables(opt={}, br={}, windows=win)

    def k_range(t: int) -> range:
        if t <= len(forced):
            return range(forced[t - 1], forced[t - 1] + 1)
        return range(tl, tu + 1)

    lo, hi = win[T]
    for s in range(lo, hi + 1):
        if s not in k_range(T):
            continue
        tables.opt[(T, s)] = cost(T, V - s, s)
        tables.br[(T, s)] = s
        tables.n_evals += 1

    for t in range(T - 1, 0, -1):
        lo, hi = win[t]
        nlo, nhi = win[t + 1]
        for s in range(lo, hi + 1):
            held = V - s
            best = None
            best_k = None
            for k in k_range(t):
                s2 = s - k
                if s2 < nlo or s2 > nhi or (t + 1, s2) not in tables.opt:
                    continue
                cand = tables.opt[(t + 1, s2)] + cost(t, held, k)
                tables.n_evals += 1
                if best is None or cand < best:
                    best = cand
                    best_k = k
            if best is not None:
                tables.opt[(t, s)] = best
                tables.br[(t, s)] = best_k
    if (1, V) not in tables.opt:
        raise InfeasibleError("no feasible schedule")
    return tables


def _reconstruct(tables: DpTables, space: ActionSpace) -> Schedule:
    incs = []
    s = space.target_volume
    for t in range(1, space.horizon + 1):
        k = tables.br[(t, s)]
        incs.append(k)
        s -= k
    return Schedule(incs, space)


def minimize(space: ActionSpace, cost: OneStepCost) -> tuple[Schedule, float]:
    """Globally optimal schedule and its total one-step cost.

    O((theta_U - theta_L)^2 T^2) state transitions; raises InfeasibleError on
    an empty action space.
    """
    if isinstance(cost, LinearCost):
        if cost.horizon != space.horizon:
            raise ValueError("cost horizon does not match action space")
        incs, value = _backend.minimize_linear(
            space.target_volume,
            space.horizon,
            space.theta_lower,
            space.theta_upper,
            cost.kappa,
            list(cost.weights),
        )
        return Schedule(incs, space), value
    tables = build_tables(space, cost)
    return _reconstruct(tables, space), tables.opt[(1, space.target_volume)]


def minimize_conditioned(
    space: ActionSpace, cost: OneStepCost, prefix: Sequence[int]
) -> tuple[Schedule, float]:
    """Optimal completion of a fixed prefix of purchases (prefix cost included)."""
    prefix = [int(k) for k in prefix]
    if len(prefix) > space.horizon:
        raise InfeasibleError("prefix longer than horizon")
    for k in prefix:
        if not space.theta_lower <= k <= space.theta_upper:
            raise InfeasibleError(f"prefix purchase {k} outside trading limits")
    held = sum(prefix)
    rem_steps = space.horizon - len(prefix)
    rem = space.target_volume - held
    if not space.theta_lower * rem_steps <= rem <= space.theta_upper * rem_steps:
        raise InfeasibleError("prefix cannot be extended to the target volume")
    tables = build_tables(space, cost, forced=prefix)
    return _reconstruct(tables, space), tables.opt[(1, space.target_volume)]


def enumerate_schedules(space: ActionSpace):
    """All feasible increment sequences, in lexicographic order. Test oracle
    only; exponential in the horizon."""
    V, T = space.target_volume, space.horizon
    tl, tu = space.theta_lower, space.theta_upper

    def rec(t, rem, acc):
        if t == T:
            if tl <= rem <= tu:
                yield Schedule(acc + [rem], space)
            return
        steps_left = T - t
        for k in range(tl, tu + 1):
            r2 = rem - k
            if tl * steps_left <= r2 <= tu * steps_left:
                yield from rec(t + 1, r2, acc + [k])

    yield from rec(1, V, [])
