"""Bivariate compound Poisson laws at time one.

``Z = sum_{j <= K} (X_j + (c, d))`` with ``K ~ Poisson(lam)`` and i.i.d.
jumps ``X_j`` drawn from a copula spec.  Batches are generated chunk by
chunk; each chunk draws from its own sub-stream, so output depends only on
the seed and the chunk size.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from scipy.special import gammaln

from .copulas import CopulaSpec, sample_copula
from .rng import RngState, as_generator

INVERSION_MAX_LAMBDA = 10.0
DEFAULT_CHUNK = 100_000


@dataclass(frozen=True)
class JumpSpec:
    copula: CopulaSpec
    shift: tuple[float, float] = (0.0, 0.0)

    def __post_init__(self):
        c, d = self.shift
        if not (math.isfinite(c) and math.isfinite(d)) or c < 0 or d < 0:
            raise ValueError(f"shift must be finite and non-negative, got {self.shift}")


@dataclass(frozen=True)
class CppParams:
    intensity: float
    jumps: JumpSpec = field(default_factory=lambda: JumpSpec(CopulaSpec.independence()))

    def __post_init__(self):
        if not (math.isfinite(self.intensity) and self.intensity > 0):
            raise ValueError(f"intensity must be positive and finite, got {self.intensity}")


class CppSample(NamedTuple):
    x: float
    y: float
    jump_count: int


class CppBatch(NamedTuple):
    x: np.ndarray
    y: np.ndarray
    jump_count: np.ndarray

    def __len__(self):
        return len(self.x)

    def points(self) -> np.ndarray:
        return np.column_stack([self.x, self.y])


def _poisson_inversion(lam, n, gen):
    u = gen.random(n)
    k = np.zeros(n, dtype=np.int64)
    p = math.exp(-lam)
    cdf = np.full(n, p)
    active = np.flatnonzero(u > cdf)
    j = 0
    while active.size:
        j += 1
        p *= lam / j
        cdf[active] += p
        k[active] = j
        active = active[u[active] > cdf[active]]
        if p == 0.0:  # cdf saturated below u through rounding; tail mass < 1e-300
            break
    return k


def _poisson_ptrs(lam, n, gen):
    # transformed rejection with squeeze (Hormann 1993)
    slam = math.sqrt(lam)
    loglam = math.log(lam)
    b = 0.931 + 2.53 * slam
    a = -0.059 + 0.02483 * b
    inv_alpha = 1.1239 + 1.1328 / (b - 3.4)
    vr = 0.9277 - 3.6224 / (b - 2)
    out = np.empty(n, dtype=np.int64)
    todo = np.arange(n)
    while todo.size:
        m = todo.size
        uv = gen.random((m, 2))
        u = uv[:, 0] - 0.5
        v = uv[:, 1]
        us = 0.5 - np.abs(u)
        k = np.floor((2 * a / us + b) * u + lam + 0.43)
        quick = (us >= 0.07) & (v <= vr)
        bad = (k < 0) | ((us < 0.013) & (v > us))
        with np.errstate(divide="ignore"):
            lhs = np.log(v) + math.log(inv_alpha) - np.log(a / (us * us) + b)
        rhs = -lam + k * loglam - gammaln(k + 1)
        ok = quick | (~bad & (lhs <= rhs))
        out[todo[ok]] = k[ok]
        todo = todo[~ok]
    return out


def sample_poisson(lam: float, n: int | None, rng):
    """Poisson(lam) counts: sequential-search inversion for lam <= 10, PTRS above.

    Returns an int for ``n=None``, else an int64 array of length ``n``.
    """
    if not lam > 0:
        raise ValueError(f"lambda must be positive, got {lam}")
    gen = as_generator(rng)
    size = 1 if n is None else int(n)
    if lam <= INVERSION_MAX_LAMBDA:
        k = _poisson_inversion(lam, size, gen)
    else:
        k = _poisson_ptrs(lam, size, gen)
    return int(k[0]) if n is None else k


def _chunk(params: CppParams, n: int, gen) -> CppBatch:
    k = sample_poisson(params.intensity, n, gen)
    jumps = sample_copula(params.jumps.copula, int(k.sum()), gen)
    owner = np.repeat(np.arange(n), k)
    x = np.bincount(owner, weights=jumps[:, 0], minlength=n)
    y = np.bincount(owner, weights=jumps[:, 1], minlength=n)
    c, d = params.jumps.shift
    if c:
        x = x + k * c
    if d:
        y = y + k * d
    return CppBatch(x, y, k)


def cpp_sample_batch(params: CppParams, n: int, rng: RngState, chunk_size: int = DEFAULT_CHUNK) -> CppBatch:
    """``n`` i.i.d. draws of the compound Poisson law.

    Chunk ``i`` uses ``rng.child(i)``; memory is bounded by the chunk's jump
    count rather than by ``n``.
    """
    n = int(n)
    if n < 1:
        raise ValueError("n must be at least 1")
    if chunk_size < 1:
        raise ValueError("chunk_size must be positive")
    parts = [
        _chunk(params, min(chunk_size, n - start), rng.child(i).generator())
        for i, start in enumerate(range(0, n, chunk_size))
    ]
    if len(parts) == 1:
        return parts[0]
    return CppBatch(*(np.concatenate(cols) for cols in zip(*parts)))


def iter_cpp_chunks(params: CppParams, n: int, rng: RngState, chunk_size: int = DEFAULT_CHUNK):
    """Yield the chunks of :func:`cpp_sample_batch` one at a time."""
    for i, start in enumerate(range(0, int(n), chunk_size)):
        yield _chunk(params, min(chunk_size, n - start), rng.child(i).generator())


def sample_cpp(params: CppParams, rng) -> CppSample:
    """One draw; equal to the first row of a batch driven by the same stream."""
    gen = as_generator(rng)
    b = _chunk(params, 1, gen)
    return CppSample(float(b.x[0]), float(b.y[0]), int(b.jump_count[0]))
