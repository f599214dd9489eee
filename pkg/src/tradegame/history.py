"""Play histories and the empirical distributions built from them."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from tradegame.game import GameSpec, Profile, Schedule


@dataclass(frozen=True)
class PlayHistory:
    """Joint action profiles realized over the rounds of one dynamics run."""

    rounds: tuple[Profile, ...]
    spec: GameSpec

    def __post_init__(self):
        if not self.rounds:
            raise ValueError("history must be nonempty")

    @property
    def n_rounds(self) -> int:
        return len(self.rounds)


@dataclass
class EmpiricalDistributions:
    """Joint and per-player marginal frequencies, keyed by the canonical text
    encodings. Marginals are exact projections of the joint."""

    joint: dict[str, float]
    marginals: list[dict[str, float]]
    schedules: list[dict[str, Schedule]]  # key -> decoded action, per player

    @classmethod
    def from_history(cls, history: PlayHistory) -> "EmpiricalDistributions":
        R = history.n_rounds
        n = history.spec.n_players
        joint_counts: Counter[str] = Counter()
        marg_counts: list[Counter[str]] = [Counter() for _ in range(n)]
        schedules: list[dict[str, Schedule]] = [dict() for _ in range(n)]
        for profile in history.rounds:
            joint_counts[profile.encode()] += 1
            for i, s in enumerate(profile.schedules):
                key = s.encode()
                marg_counts[i][key] += 1
                schedules[i].setdefault(key, s)
        joint = {k: c / R for k, c in joint_counts.items()}
        marginals = [{k: c / R for k, c in mc.items()} for mc in marg_counts]
        return cls(joint, marginals, schedules)
