import math
from dataclasses import dataclass, field
from typing import Iterable

_MASK64 = (1 << 64) - 1


@dataclass
class Summary:
    """Streaming mean, population deviation and range of a series of values."""
    total: float = field(init=False, default=0.0)
    total2: float = field(init=False, default=0.0)
    count: int = field(init=False, default=0)
    low: float = field(init=False, default=math.inf)
    high: float = field(init=False, default=-math.inf)

    @classmethod
    def of(cls, values: Iterable[float]) -> 'Summary':
        summary = cls()
        for value in values:
            summary.add(value)
        return summary

    def add(self, value: float) -> None:
        self.total += value
        self.total2 += value * value
        self.count += 1
        self.low = min(self.low, value)
        self.high = max(self.high, value)

    @property
    def mean(self) -> float:
        return self.total / self.count if self.count else math.nan

    @property
    def stddev(self) -> float:
        if self.count <= 1:
            return math.nan
        avg = self.total / self.count
        # rounding can push the variance slightly below zero
        return math.sqrt(max(0.0, self.total2 / self.count - avg * avg))


class SplitMix64:
    """
    SplitMix64 generator. Every platform produces the same stream for the same seed, which makes synthetic
    datasets reproducible bit-for-bit.
    """

    def __init__(self, seed: int):
        self._state: int = seed & _MASK64

    def next(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def random(self) -> float:
        # top 53 bits, uniform in [0, 1)
        return (self.next() >> 11) * (1.0 / (1 << 53))

    def uniform(self, low: float, high: float) -> float:
        return low + (high - low) * self.random()
