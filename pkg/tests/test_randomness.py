import math

import numpy as np
import pytest
from scipy import stats

from netdecomp.randomness import (
    RandomStream,
    derive_stream,
    exponential_from_uniform,
    phase_radii,
    sample_exponential,
    vertex_uniforms,
)


def _draws(beta, size, seed=11):
    # one sample per vertex stream of a single phase
    return phase_radii(seed, 0, np.arange(size), beta)


def test_unit_uniform_gives_zero():
    assert exponential_from_uniform(1.0, 3.0) == 0.0


@pytest.mark.parametrize("beta", [0.0, -1.0])
def test_nonpositive_beta_rejected(beta):
    with pytest.raises(ValueError):
        sample_exponential(derive_stream(1, 0, 0), beta)


def test_uniforms_in_half_open_unit_interval():
    u = vertex_uniforms(5, 2, np.arange(200_000))
    assert u.min() > 0.0
    assert u.max() <= 1.0


def test_same_inputs_same_first_hundred_samples():
    a, b = derive_stream(42, 3, 17), derive_stream(42, 3, 17)
    assert [sample_exponential(a, 0.7) for _ in range(100)] == [sample_exponential(b, 0.7) for _ in range(100)]


def test_neighbouring_vertex_and_seed_differ():
    base = sample_exponential(derive_stream(42, 3, 17), 1.0)
    assert sample_exponential(derive_stream(42, 3, 18), 1.0) != base
    assert sample_exponential(derive_stream(43, 3, 17), 1.0) != base
    assert sample_exponential(derive_stream(42, 4, 17), 1.0) != base


def test_vector_path_matches_scalar_path():
    vs = np.arange(3000)
    vec = phase_radii(99, 6, vs, 0.37)
    scalar = [sample_exponential(derive_stream(99, 6, int(v)), 0.37) for v in vs]
    assert vec.tolist() == scalar


def test_later_draws_of_a_stream():
    s = derive_stream(8, 1, 4)
    first, second = s.uniform(), s.uniform()
    assert vertex_uniforms(8, 1, [4], draw=0)[0] == first
    assert vertex_uniforms(8, 1, [4], draw=1)[0] == second
    assert isinstance(s, RandomStream) and s.counter == 2


def test_seed_range_checked():
    with pytest.raises(ValueError):
        derive_stream(-1, 0, 0)
    with pytest.raises(ValueError):
        derive_stream(2**64, 0, 0)
    derive_stream(2**64 - 1, 0, 0)


def test_exponential_mean():
    x = _draws(2.0, 1_000_000)
    assert abs(x.mean() - 0.5) <= 0.01 * 0.5


def test_overflow_probability_matches_tail():
    c, n = 10, 100
    k = math.ceil(math.log(c * n))
    beta = math.log(c * n) / k
    x = _draws(beta, 1_000_000, seed=3)
    p = math.exp(-beta * (k + 1))
    freq = np.mean(x >= k + 1)
    assert abs(freq - p) <= 3 * math.sqrt(p * (1 - p) / x.size)


@pytest.mark.parametrize("beta", [0.1, 1.0, 5.0])
def test_kolmogorov_smirnov(beta):
    x = _draws(beta, 100_000, seed=int(beta * 10))
    res = stats.kstest(x, stats.expon(scale=1 / beta).cdf)
    assert res.pvalue > 0.001


def test_memorylessness():
    beta, a, b = 0.8, 0.7, 1.1
    x = _draws(beta, 1_000_000, seed=21)
    tail = x[x > a]
    cond = np.mean(tail > a + b)
    p = np.mean(x > b)
    sigma = math.sqrt(p * (1 - p) / tail.size + p * (1 - p) / x.size)
    assert abs(cond - p) <= 3 * sigma


def test_phase_streams_look_independent():
    u0 = vertex_uniforms(1, 0, np.arange(50_000))
    u1 = vertex_uniforms(1, 1, np.arange(50_000))
    assert abs(np.corrcoef(u0, u1)[0, 1]) < 4 / math.sqrt(50_000)
