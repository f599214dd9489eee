"""Domain types and exact cost functions for the position-building trading game.

All cost kernels accumulate in Python integers; the impact coefficient kappa
multiplies in only at the end, so identities that hold in exact arithmetic can
be tested exactly (pass kappa as an int or Fraction to stay exact).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


class InvalidScheduleError(ValueError):
    pass


@dataclass(frozen=True)
class ActionSpace:
    """Constraint tuple for one player: trade V shares in T steps, per-step
    purchases bounded to [theta_lower, theta_upper]."""

    target_volume: int
    horizon: int
    theta_lower: int
    theta_upper: int

    def __post_init__(self):
        if self.horizon < 1:
            raise ValueError(f"horizon must be >= 1, got {self.horizon}")
        if self.theta_lower > self.theta_upper:
            raise ValueError(
                f"theta_lower {self.theta_lower} > theta_upper {self.theta_upper}"
            )
        if not self.theta_lower * self.horizon <= self.target_volume <= self.theta_upper * self.horizon:
            raise ValueError(
                f"empty action set: need {self.theta_lower}*{self.horizon} <= "
                f"{self.target_volume} <= {self.theta_upper}*{self.horizon}"
            )

    def contains(self, increments: Sequence[int]) -> bool:
        return (
            len(increments) == self.horizon
            and all(self.theta_lower <= k <= self.theta_upper for k in increments)
            and sum(increments) == self.target_volume
        )


@dataclass(frozen=True)
class Schedule:
    """One player's plan: shares bought per step (negative = sold).

    Holdings are derived as prefix sums with holdings(0) = 0.
    """

    increments: tuple[int, ...]

    def __init__(self, increments: Sequence[int], space: ActionSpace | None = None):
        object.__setattr__(self, "increments", tuple(int(k) for k in increments))
        if space is not None and not space.contains(self.increments):
            raise InvalidScheduleError(
                f"increments {self.increments} violate action space {space}"
            )

    def holdings(self) -> tuple[int, ...]:
        """Cumulative position after each step; length T+1, index 0 is 0."""
        h = [0]
        for k in self.increments:
            h.append(h[-1] + k)
        return tuple(h)

    @property
    def horizon(self) -> int:
        return len(self.increments)

    @property
    def volume(self) -> int:
        return sum(self.increments)

    def encode(self) -> str:
        """Canonical text form, e.g. "2,2,1,0,0"."""
        return ",".join(str(k) for k in self.increments)

    @classmethod
    def decode(cls, text: str, space: ActionSpace | None = None) -> "Schedule":
        return cls([int(tok) for tok in text.split(",")], space)


@dataclass(frozen=True)
class GameSpec:
    """n players with a shared horizon and one market impact coefficient."""

    players: tuple[ActionSpace, ...]
    kappa: float

    def __init__(self, players: Sequence[ActionSpace], kappa):
        if len(players) < 1:
            raise ValueError("need at least one player")
        horizons = {p.horizon for p in players}
        if len(horizons) != 1:
            raise ValueError(f"players must share one horizon, got {sorted(horizons)}")
        if kappa < 0:
            raise ValueError(f"kappa must be >= 0, got {kappa}")
        object.__setattr__(self, "players", tuple(players))
        object.__setattr__(self, "kappa", kappa)

    @property
    def n_players(self) -> int:
        return len(self.players)

    @property
    def horizon(self) -> int:
        return self.players[0].horizon


@dataclass(frozen=True)
class Profile:
    """Joint action: one schedule per player, index-aligned with GameSpec."""

    schedules: tuple[Schedule, ...]

    def __init__(self, schedules: Sequence[Schedule]):
        object.__setattr__(self, "schedules", tuple(schedules))
        horizons = {s.horizon for s in self.schedules}
        if len(horizons) > 1:
            raise InvalidScheduleError("schedules have mismatched horizons")

    def __len__(self) -> int:
        return len(self.schedules)

    def __getitem__(self, i: int) -> Schedule:
        return self.schedules[i]

    def replace(self, i: int, schedule: Schedule) -> "Profile":
        s = list(self.schedules)
        s[i] = schedule
        return Profile(s)

    def encode(self) -> str:
        return "|".join(s.encode() for s in self.schedules)


def temp_cost(i: int, profile: Profile) -> int:
    """Temporary impact: sum_t a'_i(t) * sum_j a'_j(t)."""
    incs = [s.increments for s in profile.schedules]
    mine = incs[i]
    T = len(mine)
    return sum(mine[t] * sum(inc[t] for inc in incs) for t in range(T))


def perm_cost(i: int, profile: Profile) -> int:
    """Permanent impact: sum_t a'_i(t) * sum_j a_j(t-1), with a_j(0) = 0."""
    mine = profile[i].increments
    T = len(mine)
    held = [s.holdings() for s in profile.schedules]
    return sum(mine[t] * sum(h[t] for h in held) for t in range(T))


def total_cost(i: int, profile: Profile, kappa):
    """Temporary plus kappa times permanent impact.

    Exact when kappa is an int or Fraction; float kappa gives a float.
    """
    return temp_cost(i, profile) + kappa * perm_cost(i, profile)


def perm_mean_cost(i: int, profile: Profile) -> Fraction:
    """Constant-sum variant: (1/2) sum_t a'_i(t) * sum_j (a_j(t-1) + a_j(t)).

    Returned as an exact Fraction (always an integer or half-integer).
    """
    mine = profile[i].increments
    T = len(mine)
    held = [s.holdings() for s in profile.schedules]
    twice = sum(mine[t] * sum(h[t] + h[t + 1] for h in held) for t in range(T))
    return Fraction(twice, 2)


def potential(profile: Profile) -> int:
    """Potential of the temporary-impact game: sum_t sum_i a'_i(t) sum_{j>=i} a'_j(t)."""
    incs = [s.increments for s in profile.schedules]
    n = len(incs)
    T = len(incs[0])
    total = 0
    for t in range(T):
        for i in range(n):
            total += incs[i][t] * sum(incs[j][t] for j in range(i, n))
    return total


def decomposition_check(i: int, profile: Profile, kappa) -> float:
    """Residual of the weighted-split identity
    c = (1 - kappa/2) * c_temp + kappa * c_perm_mean.

    Zero in exact arithmetic (int/Fraction kappa); <= 1e-9 relative in floats.
    """
    c = total_cost(i, profile, kappa)
    ct = temp_cost(i, profile)
    cpm = perm_mean_cost(i, profile)
    if isinstance(kappa, (int, Fraction)):
        rhs = (1 - Fraction(kappa) / 2) * ct + kappa * cpm
    else:
        rhs = (1.0 - kappa / 2.0) * ct + kappa * float(cpm)
    return abs(c - rhs)
