"""Convergence of the compound Poisson copula to its Gaussian limit.

One table cell compares ``N`` rank-transformed compound Poisson draws with
``N`` draws from the limiting Gaussian copula; the same-law noise floor
compares two independent Gaussian-copula samples of the same size.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .copulas import CopulaSpec, sample_copula
from .cpp import CppParams, JumpSpec, cpp_sample_batch
from .dependence import limit_sigma, copula_moments, shifted_moments
from .empirical import DiffGrid, density_diff, dot_mass, pseudo_observations, total_mass
from .rng import RngState

PAPER_LAMBDAS = (3.0, 5.0, 7.0, 20.0)
PAPER_THETAS = (0.0, 1.0, 2.0, 5.0)

# stream ids within one seed
CPP_STREAM = 1
TIES_STREAM = 2
LIMIT_STREAM = 3
FLOOR_STREAM = 4


def _key(x: float) -> int:
    return int(round((x + 1.0) * 1e6))


def limit_copula_for(jumps: JumpSpec) -> CopulaSpec:
    m = copula_moments(jumps.copula)
    m = shifted_moments(m, *jumps.shift)
    return limit_sigma(m).limit_copula()


def cpp_pseudo_sample(lam: float, jumps: JumpSpec, n: int, seed: int) -> np.ndarray:
    """Rank-transformed sample of the compound Poisson law with intensity ``lam``."""
    path = (_key(lam), _key(jumps.copula.param or 0.0))
    base = RngState(seed, CPP_STREAM, path)
    batch = cpp_sample_batch(CppParams(lam, jumps), n, base)
    return pseudo_observations(batch.points(), RngState(seed, TIES_STREAM, path))


def limit_sample(limit: CopulaSpec, n: int, seed: int, stream: int = LIMIT_STREAM) -> np.ndarray:
    path = (_key(limit.param or 0.0),)
    return sample_copula(limit, n, RngState(seed, stream, path))


@dataclass(frozen=True)
class CellResult:
    lam: float
    theta: float
    tau: float
    mass: float
    dot_mass: float
    grid: DiffGrid


def diff_cell(lam: float, theta: float, n: int = 10**6, m: int = 30, alpha: float = 20.0, seed: int = 0,
              shift=(0.0, 0.0)) -> CellResult:
    """Density-difference grid between the CPP copula and its Gaussian limit."""
    jumps = JumpSpec(CopulaSpec.clayton(theta), tuple(shift))
    limit = limit_copula_for(jumps)
    x = cpp_pseudo_sample(lam, jumps, n, seed)
    y = limit_sample(limit, n, seed)
    g = density_diff(x, y, m, meta={"lambda": lam, "theta": theta, "tau": limit.param, "seed": seed})
    return CellResult(lam, theta, limit.param, total_mass(g), dot_mass(g, alpha), g)


def noise_floor(tau: float, n: int = 10**6, m: int = 30, alpha: float = 20.0, seed: int = 0):
    """``(mass, dot_mass)`` between two independent samples of the same Gaussian copula."""
    spec = CopulaSpec.gaussian(tau)
    x = limit_sample(spec, n, seed, stream=LIMIT_STREAM)
    y = limit_sample(spec, n, seed, stream=FLOOR_STREAM)
    g = density_diff(x, y, m)
    return total_mass(g), dot_mass(g, alpha)
