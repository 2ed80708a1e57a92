import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from cppcopula.normal import normal_cdf, normal_quantile


def test_symmetry_points():
    assert normal_cdf(0.0) == 0.5
    assert normal_quantile(0.5) == 0.0


def test_975_quantile():
    # mpmath at 40 digits gives 0.97500000002688...
    assert abs(normal_cdf(1.959963985) - 0.975) < 1e-9


def test_cdf_against_mpmath():
    mpmath.mp.dps = 30
    for x in np.linspace(-8, 8, 161):
        ref = float(mpmath.ncdf(mpmath.mpf(float(x))))
        assert abs(normal_cdf(x) - ref) <= 1e-10


@given(st.floats(min_value=1e-12, max_value=1 - 1e-12))
def test_quantile_inverts_cdf(p):
    assert abs(normal_cdf(normal_quantile(p)) - p) <= 1e-9


@pytest.mark.parametrize("p", [0.0, 1.0, -0.1, 1.5])
def test_quantile_domain(p):
    with pytest.raises(ValueError):
        normal_quantile(p)


def test_vectorised():
    p = np.array([0.1, 0.5, 0.9])
    q = normal_quantile(p)
    assert q.shape == (3,)
    assert np.allclose(normal_cdf(q), p)
