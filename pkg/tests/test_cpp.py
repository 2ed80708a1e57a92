import math

import numpy as np
import pytest
from scipy import stats

from cppcopula.copulas import CopulaSpec
from cppcopula.cpp import CppParams, JumpSpec, cpp_sample_batch, iter_cpp_chunks, sample_cpp, sample_poisson
from cppcopula.dependence import clayton_euv
from cppcopula.rng import RngState

N = 10**6


def _within(est, expect, se, k=4):
    return abs(est - expect) <= k * se


@pytest.mark.parametrize("lam", [3.0, 7.0])
def test_zero_frequency(lam):
    k = sample_poisson(lam, N, RngState(1))
    p = math.exp(-lam)
    assert _within((k == 0).mean(), p, math.sqrt(p * (1 - p) / N))


def test_poisson_mean_large_lambda():
    k = sample_poisson(20.0, N, RngState(2))
    assert _within(k.mean(), 20.0, math.sqrt(20.0 / N))


@pytest.mark.parametrize("lam", [0.5, 3.0, 10.0, 10.5, 20.0, 150.0])
def test_poisson_goodness_of_fit(lam):
    k = sample_poisson(lam, 400_000, RngState(3))
    lo = max(0, int(lam - 6 * math.sqrt(lam)))
    hi = int(lam + 6 * math.sqrt(lam)) + 2
    obs = np.bincount(np.clip(k, lo, hi) - lo, minlength=hi - lo + 1)
    p = stats.poisson.pmf(np.arange(lo, hi + 1), lam)
    p[0] += stats.poisson.cdf(lo - 1, lam)
    p[-1] += stats.poisson.sf(hi, lam)
    assert stats.chisquare(obs, p * len(k)).pvalue > 1e-4


def test_poisson_scalar_and_domain():
    assert isinstance(sample_poisson(4.0, None, RngState(0)), int)
    with pytest.raises(ValueError):
        sample_poisson(0.0, 5, RngState(0))


def test_params_validation():
    with pytest.raises(ValueError):
        CppParams(-1.0)
    with pytest.raises(ValueError):
        CppParams(float("inf"))
    with pytest.raises(ValueError):
        JumpSpec(CopulaSpec.independence(), (-1.0, 0.0))


def test_clayton5_moments():
    lam = 5.0
    b = cpp_sample_batch(CppParams(lam, JumpSpec(CopulaSpec.clayton(5.0))), N, RngState(4))
    assert _within(b.x.mean(), lam / 2, b.x.std() / math.sqrt(N))
    x2 = b.x**2
    assert _within(x2.mean(), lam / 3 + (lam / 2) ** 2, x2.std() / math.sqrt(N))


@pytest.mark.slow
@pytest.mark.parametrize("lam", [3.0, 5.0, 7.0, 20.0])
@pytest.mark.parametrize("theta", [0.0, 1.0, 2.0, 5.0])
def test_wald_moments(lam, theta):
    n = 200_000
    b = cpp_sample_batch(CppParams(lam, JumpSpec(CopulaSpec.clayton(theta))), n, RngState(5, 1, (int(lam), int(theta))))
    euv = 0.25 if theta == 0 else clayton_euv(theta)
    for est, expect in [
        (b.x, lam / 2),
        (b.x**2, lam / 3 + (lam / 2) ** 2),
        (b.x * b.y, lam * euv + lam**2 / 4),
    ]:
        assert _within(est.mean(), expect, est.std() / math.sqrt(n))


def test_atom_at_origin():
    lam = 3.0
    b = cpp_sample_batch(CppParams(lam), N, RngState(6))
    zero = b.jump_count == 0
    assert np.all(b.x[zero] == 0) and np.all(b.y[zero] == 0)
    assert np.all(b.x[~zero] > 0)
    p = math.exp(-lam)
    assert _within(zero.mean(), p, math.sqrt(p * (1 - p) / N))


def test_shift_equivariance_pathwise():
    spec = CopulaSpec.clayton(2.0)
    base = cpp_sample_batch(CppParams(4.0, JumpSpec(spec)), 50_000, RngState(7))
    shifted = cpp_sample_batch(CppParams(4.0, JumpSpec(spec, (1.5, 0.25))), 50_000, RngState(7))
    assert np.array_equal(shifted.jump_count, base.jump_count)
    assert np.array_equal(shifted.x, base.x + base.jump_count * 1.5)
    assert np.array_equal(shifted.y, base.y + base.jump_count * 0.25)


def test_batch_deterministic_and_chunked():
    params = CppParams(5.0, JumpSpec(CopulaSpec.clayton(5.0)))
    a = cpp_sample_batch(params, 25_000, RngState(8), chunk_size=10_000)
    b = cpp_sample_batch(params, 25_000, RngState(8), chunk_size=10_000)
    assert np.array_equal(a.x, b.x) and np.array_equal(a.jump_count, b.jump_count)
    chunks = list(iter_cpp_chunks(params, 25_000, RngState(8), chunk_size=10_000))
    assert [len(c) for c in chunks] == [10_000, 10_000, 5_000]
    assert np.array_equal(np.concatenate([c.x for c in chunks]), a.x)


def test_batch_of_one_is_sample_cpp():
    params = CppParams(6.0, JumpSpec(CopulaSpec.gaussian(0.5)))
    one = sample_cpp(params, RngState(9).child(0))
    b = cpp_sample_batch(params, 1, RngState(9))
    assert one == (b.x[0], b.y[0], b.jump_count[0])
    assert one.jump_count >= 0


def test_batch_rejects_bad_n():
    with pytest.raises(ValueError):
        cpp_sample_batch(CppParams(1.0), 0, RngState(0))
