"""Streaming mean / variance accumulation with deterministic merging.

Welford updates per sample, Chan et al. pairwise combination for merging
chunk results.  Merging in a fixed chunk order makes ensemble statistics
byte-reproducible regardless of how many workers computed the chunks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass
class RunningStats:
    """Count, mean and sum of squared deviations of a scalar stream."""

    n: int = 0
    mean: float = 0.0
    m2: float = 0.0

    def add(self, value: float):
        self.n += 1
        delta = value - self.mean
        self.mean += delta / self.n
        self.m2 += delta * (value - self.mean)

    @classmethod
    def from_array(cls, values) -> "RunningStats":
        values = np.asarray(values, dtype=np.float64)
        n = int(values.size)
        if n == 0:
            return cls()
        mean = float(values.mean())
        m2 = float(np.sum((values - mean) ** 2))
        return cls(n=n, mean=mean, m2=m2)

    def merge(self, other: "RunningStats") -> "RunningStats":
        """Combined statistics of self's stream followed by other's."""
        if other.n == 0:
            return RunningStats(self.n, self.mean, self.m2)
        if self.n == 0:
            return RunningStats(other.n, other.mean, other.m2)
        n = self.n + other.n
        delta = other.mean - self.mean
        mean = self.mean + delta * other.n / n
        m2 = self.m2 + other.m2 + delta * delta * self.n * other.n / n
        return RunningStats(n, mean, m2)

    @property
    def sample_variance(self) -> float:
        if self.n < 2:
            return 0.0
        return self.m2 / (self.n - 1)

    @property
    def standard_error(self) -> float:
        """Standard error of the mean; 0 for fewer than two samples."""
        if self.n < 2:
            return 0.0
        return math.sqrt(self.sample_variance / self.n)
