"""Copula structure of bivariate compound Poisson processes."""

from .copulas import (
    CopulaSpec,
    clayton_conditional_cdf,
    clayton_conditional_inverse,
    copula_cdf,
    sample_copula,
)
from .cpp import CppBatch, CppParams, CppSample, JumpSpec, cpp_sample_batch, sample_cpp, sample_poisson
from .dependence import (
    CovMatrix,
    JumpMoments,
    band_moments,
    band_phi,
    clayton_euv,
    clayton_rho,
    euv_via_partial,
    limit_sigma,
    rho_from_moments,
    shifted_moments,
)
from .empirical import DiffGrid, GridConfig, density_diff, dot_mass, dot_render, grid_counts, pseudo_observations, total_mass
from .normal import normal_cdf, normal_quantile
from .rng import RngState

__version__ = "0.1.0"
