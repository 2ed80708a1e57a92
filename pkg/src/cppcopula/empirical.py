"""Empirical copulas and the grid estimate of a copula density difference.

Samples of a law are turned into samples of its copula by coordinate-wise
ranks scaled by ``1/(n+1)``.  Two samples of equal size are compared cell
by cell on the ``M x M`` grid of half-open squares
``[i/M, (i+1)/M) x [j/M, (j+1)/M)``:

    c[i, j] = (M^2 / N) * |count_X(i, j) - count_Y(i, j)|

estimates the density of the absolute difference measure in that cell, and
``sum(c) / M^2`` estimates its total mass.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from .rng import as_generator


@dataclass(frozen=True)
class GridConfig:
    m: int = 30
    n: int = 10**6
    alpha: float = 20.0

    def __post_init__(self):
        if self.m < 2:
            raise ValueError("grid resolution m must be at least 2")
        if self.n < self.m * self.m:
            raise ValueError("sample size n must be at least m^2")
        if not self.alpha > 1:
            raise ValueError("alpha must exceed 1")


@dataclass(frozen=True)
class DiffGrid:
    """Cell-wise density difference estimates ``c[i, j]`` (i indexes u, j indexes v)."""

    c: np.ndarray
    n: int
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        c = np.asarray(self.c, dtype=float)
        if c.ndim != 2 or c.shape[0] != c.shape[1]:
            raise ValueError("grid must be square")
        if not np.all(np.isfinite(c)) or np.any(c < 0):
            raise ValueError("grid entries must be finite and non-negative")
        c.setflags(write=False)
        object.__setattr__(self, "c", c)

    @property
    def m(self) -> int:
        return self.c.shape[0]


def pseudo_observations(samples, rng) -> np.ndarray:
    """Rank-transform an ``(n, 2)`` sample into ``(n, 2)`` points in (0, 1)^2.

    Ranks are divided by ``n + 1``.  Tied values, such as the atom of a
    compound Poisson law at the origin, receive their ranks in uniformly
    random order drawn from ``rng``.
    """
    pts = np.asarray(samples, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise ValueError("samples must have shape (n, 2)")
    n = pts.shape[0]
    if n < 2:
        raise ValueError("need at least two samples")
    gen = as_generator(rng)
    out = np.empty_like(pts)
    ranks = np.arange(1, n + 1) / (n + 1.0)
    for col in range(2):
        order = np.lexsort((gen.random(n), pts[:, col]))
        out[order, col] = ranks
    return out


def grid_counts(points, m: int) -> np.ndarray:
    """Count points per cell of the ``m x m`` grid; coordinate 1.0 falls in the last cell."""
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    if np.any((pts < 0) | (pts > 1)):
        raise ValueError("points must lie in the unit square")
    idx = np.minimum((pts * m).astype(np.int64), m - 1)
    flat = np.bincount(idx[:, 0] * m + idx[:, 1], minlength=m * m)
    return flat.reshape(m, m)


def density_diff(x_points, y_points, m: int, meta: dict | None = None) -> DiffGrid:
    """Grid estimate of the density of ``|P_X - P_Y|`` from two samples of equal size."""
    n = len(x_points)
    if len(y_points) != n:
        raise ValueError(f"sample sizes differ: {n} vs {len(y_points)}")
    if n == 0:
        raise ValueError("samples are empty")
    diff = np.abs(grid_counts(x_points, m) - grid_counts(y_points, m))
    return DiffGrid(diff * (m * m / n), n=n, meta=dict(meta or {}))


def total_mass(g: DiffGrid) -> float:
    """``sum(c) / M^2``: the estimated total mass of the difference measure."""
    return float(g.c.sum()) / g.m**2


def dot_counts(g: DiffGrid, alpha: float) -> np.ndarray:
    """``floor(alpha * c[i, j])`` per cell."""
    if not alpha > 1:
        raise ValueError("alpha must exceed 1")
    # guard against c * alpha landing a hair below an integer
    return np.floor(g.c * alpha + 1e-9).astype(np.int64)


def dot_mass(g: DiffGrid, alpha: float) -> float:
    """Dot count divided by ``alpha * M^2``; the floor drops sub-threshold cells."""
    return float(dot_counts(g, alpha).sum()) / (alpha * g.m**2)


def dot_render(g: DiffGrid, alpha: float, rng) -> np.ndarray:
    """Scatter ``floor(alpha * c[i, j])`` uniform points in every cell ``K[i, j]``."""
    counts = dot_counts(g, alpha).ravel()
    gen = as_generator(rng)
    m = g.m
    cell = np.repeat(np.arange(m * m), counts)
    i, j = np.divmod(cell, m)
    offs = gen.random((cell.size, 2))
    return np.column_stack([(i + offs[:, 0]) / m, (j + offs[:, 1]) / m])


def write_grid_csv(g: DiffGrid, path, delimiter=","):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, delimiter=delimiter, lineterminator="\n")
        w.writerow(["i", "j", "c"])
        for i in range(g.m):
            for j in range(g.m):
                w.writerow([i, j, f"{g.c[i, j]:.6g}"])


def write_scatter_csv(points, path, delimiter=","):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, delimiter=delimiter, lineterminator="\n")
        w.writerow(["u", "v"])
        for u, v in np.asarray(points).reshape(-1, 2):
            w.writerow([f"{u:.6g}", f"{v:.6g}"])


def read_grid_csv(path, delimiter=",") -> DiffGrid:
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh, delimiter=delimiter))
    m = max(int(r["i"]) for r in rows) + 1
    c = np.zeros((m, m))
    for r in rows:
        c[int(r["i"]), int(r["j"])] = float(r["c"])
    return DiffGrid(c, n=0)
