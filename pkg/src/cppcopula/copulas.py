"""Copula families: closed-form CDFs and exact samplers.

Supported families are the Clayton copulas ``C_theta`` (theta >= -1), the
Gaussian copula with correlation ``tau``, the independence copula ``Pi``,
the Frechet-Hoeffding bounds ``W`` and ``M``, and the uniform law on the
band ``{|u - v| >= eps}``.  The band law has non-uniform margins, so it is
a jump distribution rather than a copula; it shares the interface because
it is sampled and tabulated the same way.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .normal import normal_cdf, normal_quantile
from .rng import as_generator

CLAYTON = "clayton"
GAUSSIAN = "gaussian"
INDEPENDENCE = "independence"
LOWER = "lower"
UPPER = "upper"
BAND = "band"

FAMILIES = (CLAYTON, GAUSSIAN, INDEPENDENCE, LOWER, UPPER, BAND)

BAND_MAX_ROUNDS = 10**6


@dataclass(frozen=True)
class CopulaSpec:
    """Tagged description of a bivariate copula (or the band law).

    Prefer the named constructors; ``CopulaSpec.clayton(0)`` returns the
    independence spec.
    """

    family: str
    param: float | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown copula family {self.family!r}")
        p = self.param
        if self.family == CLAYTON:
            if p is None or not math.isfinite(p) or p < -1 or p == 0:
                raise ValueError(f"Clayton theta must lie in [-1, inf) without 0, got {p}")
        elif self.family == GAUSSIAN:
            if p is None or not -1 <= p <= 1:
                raise ValueError(f"Gaussian copula tau must lie in [-1, 1], got {p}")
        elif self.family == BAND:
            if p is None or not 0 < p < 1:
                raise ValueError(f"band eps must lie in (0, 1), got {p}")
        elif p is not None:
            raise ValueError(f"{self.family} copula takes no parameter")

    @classmethod
    def clayton(cls, theta: float) -> "CopulaSpec":
        theta = float(theta)
        if theta == 0:
            return cls(INDEPENDENCE)
        return cls(CLAYTON, theta)

    @classmethod
    def gaussian(cls, tau: float) -> "CopulaSpec":
        return cls(GAUSSIAN, float(tau))

    @classmethod
    def independence(cls) -> "CopulaSpec":
        return cls(INDEPENDENCE)

    @classmethod
    def lower(cls) -> "CopulaSpec":
        return cls(LOWER)

    @classmethod
    def upper(cls) -> "CopulaSpec":
        return cls(UPPER)

    @classmethod
    def band(cls, eps: float) -> "CopulaSpec":
        return cls(BAND, float(eps))

    @property
    def is_copula(self) -> bool:
        return self.family != BAND

    def __str__(self):
        if self.param is None:
            return self.family
        return f"{self.family}({self.param:g})"


def _check_unit(u, v):
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if np.any((u < 0) | (u > 1) | np.isnan(u)) or np.any((v < 0) | (v > 1) | np.isnan(v)):
        raise ValueError("copula arguments must lie in the unit square")
    return np.broadcast_arrays(u, v)


def _clayton_cdf(u, v, theta):
    if theta < 0:
        a = -theta
        base = np.maximum(u**a + v**a - 1.0, 0.0)
        return base if a == 1 else base ** (1.0 / a)
    lo = np.minimum(u, v)
    hi = np.maximum(u, v)
    out = np.zeros_like(lo)
    pos = lo > 0
    lo, hi = lo[pos], hi[pos]
    # u^-t + v^-t - 1 = lo^-t * (1 + (lo/hi)^t - lo^t)
    s = np.expm1(theta * np.log(lo / hi)) - np.expm1(theta * np.log(lo))
    out[pos] = lo * np.exp(-np.log1p(s) / theta)
    return out


def _bvn_upper(h, k, r):
    """P(X > h, Y > k) for a standard bivariate normal with correlation r.

    Vectorised over h, k; r scalar with |r| < 1.  Genz's BVNU algorithm
    with a 20-point Gauss-Legendre rule in every branch.
    """
    x, w = np.polynomial.legendre.leggauss(20)
    x, w = x[10:], w[10:]
    h = np.asarray(h, dtype=float)
    k = np.asarray(k, dtype=float)
    hk = h * k
    twopi = 2.0 * math.pi
    if abs(r) < 0.925:
        hs = 0.5 * (h * h + k * k)
        asr = 0.5 * math.asin(r)
        total = np.zeros_like(h)
        for sgn in (-1.0, 1.0):
            sn = np.sin(asr * (1.0 + sgn * x))
            total = total + np.exp((sn[None, :] * hk[..., None] - hs[..., None]) / (1.0 - sn * sn)) @ w
        return total * asr / twopi + normal_cdf(-h) * normal_cdf(-k)

    if r < 0:
        k = -k
        hk = -hk
    one_minus = (1.0 - r) * (1.0 + r)
    a = math.sqrt(one_minus)
    bs = (h - k) ** 2
    c = (4.0 - hk) / 8.0
    d = (12.0 - hk) / 16.0
    asr = -0.5 * (bs / one_minus + hk)
    bvn = np.where(
        asr > -100,
        a * np.exp(asr) * (1 - c * (bs - one_minus) * (1 - d * bs / 5) / 3 + c * d * one_minus**2 / 5),
        0.0,
    )
    b = np.sqrt(bs)
    sp = math.sqrt(twopi) * normal_cdf(-b / a)
    bvn = bvn - np.where(hk > -100, np.exp(-0.5 * hk) * sp * b * (1 - c * bs * (1 - d * bs / 5) / 3), 0.0)
    a2 = 0.5 * a
    for sgn in (-1.0, 1.0):
        xs = (a2 * (1.0 + sgn * x)) ** 2
        rs = np.sqrt(1.0 - xs)
        asr = -0.5 * (bs[..., None] / xs + hk[..., None])
        sp = 1.0 + c[..., None] * xs * (1.0 + d[..., None] * xs)
        ep = np.exp(-hk[..., None] * xs / (2.0 * (1.0 + rs) ** 2)) / rs
        term = np.where(asr > -100, np.exp(np.maximum(asr, -100.0)) * (ep - sp), 0.0)
        bvn = bvn + a2 * (term @ w)
    bvn = -bvn / twopi
    if r > 0:
        bvn = bvn + normal_cdf(-np.maximum(h, k))
    else:
        lower = np.where(h < 0, normal_cdf(k) - normal_cdf(h), normal_cdf(-h) - normal_cdf(-k))
        bvn = np.where(h >= k, -bvn, lower - bvn)
    return bvn


def _gaussian_cdf(u, v, tau):
    if tau == 1:
        return np.minimum(u, v)
    if tau == -1:
        return np.maximum(u + v - 1.0, 0.0)
    out = np.minimum(u, v)  # exact on the edges u or v in {0, 1}
    inner = (u > 0) & (u < 1) & (v > 0) & (v < 1)
    if np.any(inner):
        h = normal_quantile(u[inner])
        k = normal_quantile(v[inner])
        out[inner] = np.clip(_bvn_upper(-h, -k, tau), 0.0, 1.0)
    return out


def _band_strip(a, b, eps):
    """Area of {(s, t) in [0,a] x [0,b] : s - t >= eps}."""
    reach = np.maximum(a - eps, 0.0)
    return np.where(reach <= b, 0.5 * reach**2, 0.5 * b**2 + b * (reach - b))


def _band_cdf(u, v, eps):
    area = _band_strip(u, v, eps) + _band_strip(v, u, eps)
    return area / (1.0 - eps) ** 2


def copula_cdf(spec: CopulaSpec, u, v):
    """Evaluate ``C(u, v)`` for the law described by ``spec``.

    Vectorised over ``u`` and ``v``; returns a float for scalar input.

    Raises
    ------
    ValueError
        If a point lies outside the unit square.
    """
    uu, vv = _check_unit(u, v)
    shape = uu.shape
    uu = uu.ravel().astype(float)
    vv = vv.ravel().astype(float)
    fam = spec.family
    if fam == INDEPENDENCE:
        out = uu * vv
    elif fam == LOWER:
        out = np.maximum(uu + vv - 1.0, 0.0)
    elif fam == UPPER:
        out = np.minimum(uu, vv)
    elif fam == CLAYTON:
        out = _clayton_cdf(uu, vv, spec.param)
    elif fam == GAUSSIAN:
        out = _gaussian_cdf(uu, vv, spec.param)
    else:
        out = _band_cdf(uu, vv, spec.param)
    return float(out[0]) if not shape else out.reshape(shape)


def clayton_conditional_cdf(theta, u, v):
    """``P(V <= v | U = u)`` under ``C_theta``, i.e. dC/du, for theta > 0."""
    if theta <= 0:
        raise ValueError("conditional CDF is implemented for theta > 0")
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    with np.errstate(divide="ignore"):
        # (1 + u^t (v^-t - 1))^(-(1+t)/t), evaluated in log space
        t = theta * np.log(u) + np.log(np.expm1(-theta * np.log(v)))
    out = np.exp(-(1.0 + theta) / theta * np.logaddexp(0.0, t))
    return float(out) if out.ndim == 0 else out


def clayton_conditional_inverse(theta, u, z):
    """Solve ``P(V <= v | U = u) = z`` for ``v`` under ``C_theta``.

    Parameters
    ----------
    theta : float
        Clayton parameter, strictly positive.
    u, z : float or ndarray
        Conditioning value and target probability, both in (0, 1).

    Returns
    -------
    float or ndarray
        ``(1 + u^-theta (z^(-theta/(1+theta)) - 1))^(-1/theta)``.
    """
    if theta <= 0:
        raise ValueError("conditional inverse requires theta > 0")
    u = np.asarray(u, dtype=float)
    z = np.asarray(z, dtype=float)
    if np.any((u <= 0) | (u >= 1)) or np.any((z <= 0) | (z >= 1)):
        raise ValueError("u and z must lie in the open interval (0, 1)")
    w = np.expm1(-theta / (1.0 + theta) * np.log(z))
    t = -theta * np.log(u) + np.log(w)
    out = np.exp(-np.logaddexp(0.0, t) / theta)
    return float(out) if out.ndim == 0 else out


def _sample_band(eps, n, gen):
    out = np.empty((n, 2))
    accept = (1.0 - eps) ** 2
    filled = 0
    rounds = 0
    while filled < n:
        rounds += 1
        if rounds > BAND_MAX_ROUNDS:
            raise RuntimeError("band rejection sampler exceeded its iteration cap; RNG is broken")
        need = n - filled
        draw = min(int(need / accept * 1.1) + 16, 4 * 10**6)
        uv = gen.random((draw, 2))
        keep = uv[np.abs(uv[:, 0] - uv[:, 1]) >= eps][:need]
        out[filled:filled + len(keep)] = keep
        filled += len(keep)
    return out


def sample_copula(spec: CopulaSpec, n: int, rng) -> np.ndarray:
    """Draw ``n`` i.i.d. points from ``spec``; returns an ``(n, 2)`` array.

    Clayton uses conditional inversion (theta > 0) or the countermonotone
    pair (theta = -1); other negative theta are rejected.  The Gaussian
    copula maps a Cholesky-correlated normal pair through the normal CDF.
    The band law uses rejection until ``|u - v| >= eps``.
    """
    n = int(n)
    if n < 0:
        raise ValueError("n must be non-negative")
    gen = as_generator(rng)
    fam = spec.family
    if fam == BAND:
        return _sample_band(spec.param, n, gen)
    if fam == GAUSSIAN:
        tau = spec.param
        xy = gen.standard_normal((n, 2))
        x = xy[:, 0]
        y = tau * x + math.sqrt(max(0.0, 1.0 - tau * tau)) * xy[:, 1]
        return np.column_stack([normal_cdf(x), normal_cdf(y)])

    uz = gen.random((n, 2))
    u = uz[:, 0]
    if fam == INDEPENDENCE:
        return uz
    if fam == UPPER:
        return np.column_stack([u, u])
    if fam == LOWER:
        return np.column_stack([u, 1.0 - u])
    theta = spec.param
    if theta == -1:
        return np.column_stack([u, 1.0 - u])
    if theta < 0:
        raise ValueError("Clayton sampling supports theta > 0 and theta = -1 only")
    # random() can return exactly 0; the inverse needs the open interval
    u = np.where(u > 0, u, 2.0**-53)
    z = np.where(uz[:, 1] > 0, uz[:, 1], 2.0**-53)
    return np.column_stack([u, clayton_conditional_inverse(theta, u, z)])
