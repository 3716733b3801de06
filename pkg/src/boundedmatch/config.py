"""Run configuration shared by both pipelines."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .hash_membership import rounds_for_epsilon

DEFAULT_EPSILON = 2.0**-20


@dataclass(frozen=True)
class RunConfig:
    deterministic: bool = False
    epsilon: float = DEFAULT_EPSILON
    # replace epsilon by the per-pipeline exponentially small bound
    paper_epsilon: bool = False
    seed: int = 0
    # re-check every weighted phase against the solver's own optimum
    check_phases: bool = False
    randomized_select: bool = False

    @property
    def mode(self) -> str:
        return "deterministic" if self.deterministic else "randomized"

    def rng(self) -> random.Random:
        return random.Random(self.seed)

    def hash_rounds(self, k: int, pipeline: str) -> int:
        """Rounds of injectivity trials.  Each round fails w.p. <= 1/2."""
        if not self.paper_epsilon:
            return rounds_for_epsilon(self.epsilon)
        if pipeline == "ugm":
            # epsilon = 2^{-k^1.5}
            return max(1, math.ceil(k ** 1.5))
        # epsilon = k^{-k^2}
        return max(1, math.ceil(k * k * math.log2(max(k, 2))))

    def epsilon_log2(self, k: int, pipeline: str) -> float:
        """log2 of the per-build failure bound actually in force."""
        if self.deterministic:
            return float("-inf")
        return -float(self.hash_rounds(k, pipeline))
