"""Local full-feedback regret minimizers over a simplex.

One instance lives at each decision node and sees gains (not losses): the
instantaneous regret of action a is gradient[a] minus the gradient's value
under the recommendation that was actually played.
"""
from __future__ import annotations

import math

__all__ = ["LocalRM"]

_VARIANTS = ("rm", "rm+")


class LocalRM:
    """Regret matching / regret matching+ over a fixed action set.

    State is a cumulative regret vector; recommendations are proportional to
    its positive part, uniform when that part is all zero. ``observe`` uses
    the recommendation that was actually returned this iteration (cached),
    not a recomputed one.
    """

    __slots__ = ("variant", "n", "cum_regret", "iterations", "_rec")

    def __init__(self, n_actions: int, variant: str = "rm+"):
        if variant not in _VARIANTS:
            raise ValueError(f"unknown variant {variant!r}")
        if n_actions < 1:
            raise ValueError("need at least one action")
        self.variant = variant
        self.n = n_actions
        self.cum_regret = [0.0] * n_actions
        self.iterations = 0
        self._rec: list[float] | None = None

    def recommend(self) -> list[float]:
        if self._rec is None:
            pos = [r if r > 0.0 else 0.0 for r in self.cum_regret]
            total = sum(pos)
            if total > 0.0:
                self._rec = [p / total for p in pos]
            else:
                self._rec = [1.0 / self.n] * self.n
        return self._rec

    def observe(self, gradient) -> None:
        for g in gradient:
            if not math.isfinite(g):
                raise ValueError(f"non-finite gradient entry {g!r}")
        rec = self.recommend()
        baseline = 0.0
        for g, p in zip(gradient, rec):
            baseline += g * p
        cum = self.cum_regret
        if self.variant == "rm+":
            for a in range(self.n):
                r = cum[a] + (gradient[a] - baseline)
                cum[a] = r if r > 0.0 else 0.0
        else:
            for a in range(self.n):
                cum[a] += gradient[a] - baseline
        self.iterations += 1
        self._rec = None
