"""Reproducible random streams.

Every stochastic routine takes an explicit :class:`RngState`; there is no
module-level generator.  States map onto numpy's counter-based Philox bit
generator keyed through :class:`numpy.random.SeedSequence`, so distinct
``(seed, stream, path)`` triples give independent streams.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class RngState:
    """Seed plus stream counter identifying one random stream."""

    seed: int
    stream: int = 0
    path: tuple[int, ...] = ()

    def __post_init__(self):
        if not 0 <= self.seed <= _MASK64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if not 0 <= self.stream <= _MASK64:
            raise ValueError(f"stream must be a 64-bit unsigned integer, got {self.stream}")

    def child(self, index: int) -> "RngState":
        """Independent sub-stream, e.g. one per batch chunk."""
        return RngState(self.seed, self.stream, self.path + (int(index),))

    def with_stream(self, stream: int) -> "RngState":
        return RngState(self.seed, stream, self.path)

    def generator(self) -> np.random.Generator:
        ss = np.random.SeedSequence(self.seed, spawn_key=(self.stream,) + self.path)
        return np.random.Generator(np.random.Philox(ss))


def as_generator(rng) -> np.random.Generator:
    """Accept an RngState, a Generator, or an int seed."""
    if isinstance(rng, np.random.Generator):
        return rng
    if isinstance(rng, RngState):
        return rng.generator()
    if isinstance(rng, (int, np.integer)):
        return RngState(int(rng)).generator()
    raise TypeError(f"cannot build a generator from {type(rng).__name__}")
