"""Standard normal CDF and quantile."""

import numpy as np
from scipy import special


def normal_cdf(x):
    """Standard normal CDF, accurate to double precision."""
    return special.ndtr(x)


def normal_quantile(p):
    """Inverse of :func:`normal_cdf` on the open interval (0, 1).

    Raises
    ------
    ValueError
        If any ``p`` lies outside (0, 1).
    """
    p_arr = np.asarray(p, dtype=float)
    if np.any((p_arr <= 0.0) | (p_arr >= 1.0)) or np.any(np.isnan(p_arr)):
        raise ValueError("normal_quantile is defined on the open interval (0, 1)")
    out = special.ndtri(p_arr)
    return float(out) if np.ndim(p) == 0 else out
