"""Second-moment dependence of jump laws and the Gaussian limit covariance.

For a jump law F with square-integrable margins, the copula of the compound
Poisson law converges as the intensity grows to the Gaussian copula whose
correlation is ``rho(F) = E[XY] / sqrt(E[X^2] E[Y^2])``.  This module
computes that functional in closed form or by quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .copulas import BAND, CLAYTON, GAUSSIAN, INDEPENDENCE, LOWER, UPPER, CopulaSpec, copula_cdf
from .quadrature import integrate_2d

DEFAULT_TOL = 1e-7


@dataclass(frozen=True)
class JumpMoments:
    """Raw moments ``E[XY], E[X^2], E[Y^2], E[X], E[Y]`` of a jump law."""

    exy: float
    ex2: float
    ey2: float
    ex: float
    ey: float

    def __post_init__(self):
        slack = 1e-12 * max(1.0, self.ex2, self.ey2)
        if self.ex2 < 0 or self.ey2 < 0:
            raise ValueError("second moments must be non-negative")
        if self.exy**2 > self.ex2 * self.ey2 + slack:
            raise ValueError("moments violate Cauchy-Schwarz")
        if self.ex**2 > self.ex2 + slack or self.ey**2 > self.ey2 + slack:
            raise ValueError("moments violate Jensen's inequality")


@dataclass(frozen=True)
class CovMatrix:
    """Symmetric 2x2 positive-semidefinite matrix ``[[s11, s12], [s12, s22]]``."""

    s11: float
    s22: float
    s12: float

    def __post_init__(self):
        if self.s11 < 0 or self.s22 < 0:
            raise ValueError("diagonal entries must be non-negative")
        if self.s12**2 > self.s11 * self.s22 * (1 + 1e-12):
            raise ValueError("matrix is not positive semidefinite")

    @property
    def ratio(self) -> float:
        """``s12 / sqrt(s11 s22)``; identifies the Gaussian copula of N(0, Sigma)."""
        if self.s11 * self.s22 <= 0:
            raise ValueError("correlation ratio undefined for a degenerate margin")
        return max(-1.0, min(1.0, self.s12 / math.sqrt(self.s11 * self.s22)))

    @property
    def degenerate(self) -> bool:
        """True when the ratio is +-1, i.e. the limit copula is M or W."""
        return abs(self.ratio) >= 1.0

    def as_array(self) -> np.ndarray:
        return np.array([[self.s11, self.s12], [self.s12, self.s22]])

    def limit_copula(self) -> CopulaSpec:
        r = self.ratio
        if r >= 1.0:
            return CopulaSpec.upper()
        if r <= -1.0:
            return CopulaSpec.lower()
        return CopulaSpec.gaussian(r)


def rho_from_moments(m: JumpMoments) -> float:
    """``E[XY] / sqrt(E[X^2] E[Y^2])``.

    Raises
    ------
    ValueError
        If either second moment is zero.
    """
    if m.ex2 * m.ey2 <= 0:
        raise ValueError("rho is undefined for a margin with zero second moment")
    return max(-1.0, min(1.0, m.exy / math.sqrt(m.ex2 * m.ey2)))


def limit_sigma(m: JumpMoments) -> CovMatrix:
    """Second-moment matrix of the jump law; the covariance of the Gaussian limit."""
    return CovMatrix(s11=m.ex2, s22=m.ey2, s12=m.exy)


def shifted_moments(m: JumpMoments, c: float, d: float) -> JumpMoments:
    """Moments of ``(X + c, Y + d)``: the jump law convolved with a point mass."""
    if c < 0 or d < 0:
        raise ValueError("shift components must be non-negative")
    return JumpMoments(
        exy=m.exy + c * m.ey + d * m.ex + c * d,
        ex2=m.ex2 + 2 * c * m.ex + c * c,
        ey2=m.ey2 + 2 * d * m.ey + d * d,
        ex=m.ex + c,
        ey=m.ey + d,
    )


def uniform_margin_moments(euv: float) -> JumpMoments:
    """Moments of a copula with ``E[UV] = euv`` (margins are U[0,1])."""
    return JumpMoments(exy=euv, ex2=1.0 / 3.0, ey2=1.0 / 3.0, ex=0.5, ey=0.5)


def euv_via_partial(dC_du, tol=DEFAULT_TOL, max_cells=100_000) -> float:
    """``E[UV] = 1/2 - int int u dC/du(u, v) dv du`` over the unit square.

    ``dC_du`` must be vectorised over ``(u, v)``.
    """
    res = integrate_2d(lambda u, v: u * dC_du(u, v), tol=tol, max_cells=max_cells)
    return 0.5 - res.value


def euv_from_cdf(spec: CopulaSpec, tol=DEFAULT_TOL, max_cells=100_000) -> float:
    """``E[UV] = int int C(u, v) du dv``, valid for any copula (uniform margins)."""
    if not spec.is_copula:
        raise ValueError("euv_from_cdf needs uniform margins")
    return integrate_2d(lambda u, v: copula_cdf(spec, u, v), tol=tol, max_cells=max_cells).value


def _clayton_u_dcdu(theta):
    # u * dC/du = u * (1 - u^t + (u/v)^t)^(-(1+t)/t); (u/v)^t may overflow to inf -> 0
    def f(u, v):
        return u * (1.0 - u**theta + (u / v) ** theta) ** (-(1.0 + theta) / theta)

    return f


def clayton_partial(theta):
    """``dC_theta/du`` as written for theta > 0, vectorised."""

    def f(u, v):
        return u ** (-theta - 1.0) * (u**-theta + v**-theta - 1.0) ** (-(1.0 + theta) / theta)

    return f


def clayton_euv(theta: float, tol=DEFAULT_TOL, max_cells=100_000) -> float:
    """``E[UV]`` under the Clayton copula ``C_theta``, theta > 0, by adaptive quadrature.

    Raises
    ------
    QuadratureError
        If the quadrature budget is exhausted before ``tol``.
    """
    if theta <= 0:
        raise ValueError("clayton_euv requires theta > 0")
    res = integrate_2d(_clayton_u_dcdu(theta), tol=tol, max_cells=max_cells)
    return 0.5 - res.value


def clayton_negative_partial(theta):
    """``dC_theta/du`` for theta in (-1, 0), zero outside the support."""
    a = -theta
    expo = (1.0 - a) / a  # -(1 + theta) / theta, positive for theta in (-1, 0)

    def f(u, v):
        base = np.maximum(u**a + v**a - 1.0, 0.0)
        return u ** (a - 1.0) * base**expo

    return f


def clayton_rho(theta: float, tol=DEFAULT_TOL) -> float:
    """rho of the Clayton copula for any theta >= -1 (theta = 0 is independence)."""
    if theta < -1:
        raise ValueError("Clayton theta must be >= -1")
    if theta == 0:
        return 0.75
    if theta == -1:
        return 0.5
    if theta > 0:
        euv = clayton_euv(theta, tol=tol)
    else:
        # the partial has an infinite-slope edge along the support boundary as
        # theta -> -1; the CDF itself is C^1 there, so integrate C directly
        euv = euv_from_cdf(CopulaSpec.clayton(theta), tol=tol)
    return rho_from_moments(uniform_margin_moments(euv))


def band_phi(eps: float) -> float:
    """rho of the uniform law on ``{|u - v| >= eps}``: ``(1-e)(3+e) / (2(e^2+2))``."""
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    return (1 - eps) * (3 + eps) / (2 * (eps * eps + 2))


def band_moments(eps: float) -> JumpMoments:
    """Closed-form moments of the band law ``U(I_eps)``."""
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    e2 = eps * eps / 6 + 1.0 / 3.0
    return JumpMoments(exy=(1 - eps) * (3 + eps) / 12, ex2=e2, ey2=e2, ex=0.5, ey=0.5)


def copula_moments(spec: CopulaSpec, tol=DEFAULT_TOL) -> JumpMoments:
    """Moments of a spec's law from closed forms or quadrature."""
    fam = spec.family
    if fam == BAND:
        return band_moments(spec.param)
    if fam == INDEPENDENCE:
        euv = 0.25
    elif fam == UPPER:
        euv = 1.0 / 3.0
    elif fam == LOWER:
        euv = 1.0 / 6.0
    elif fam == CLAYTON:
        euv = clayton_rho(spec.param, tol=tol) / 3.0
    elif fam == GAUSSIAN:
        # E[UV] = 1/4 + (1/(2 pi)) asin(tau/2), the Gaussian Spearman identity
        euv = 0.25 + math.asin(spec.param / 2) / (2 * math.pi)
    else:
        raise ValueError(fam)
    return uniform_margin_moments(euv)


def limit_tau(spec: CopulaSpec, tol=DEFAULT_TOL) -> float:
    """Correlation of the Gaussian limit copula for unshifted jumps from ``spec``."""
    return rho_from_moments(copula_moments(spec, tol=tol))
