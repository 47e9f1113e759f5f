import math

import numpy as np
import pytest
from scipy import integrate, stats

from zeta_sampler.config import Config
from zeta_sampler.exceptions import DomainError, EmptyBatch, InvalidParameter
from zeta_sampler.gamma_process import (
    GammaParams, char_fn, empirical_char_fn, gamma_density, gamma_mean_variance,
    log_moment_array, log_moment_fn, sample_batch)


class TestGammaParams:

    @pytest.mark.parametrize('t', [0.0, -1.0, math.inf, math.nan])
    def test_invalid(self, t):
        with pytest.raises(InvalidParameter):
            GammaParams(t)


class TestDensity:

    def test_normalised(self):
        params = GammaParams(3.5)
        total, _ = integrate.quad(lambda x: gamma_density(x, params), 0, np.inf)
        assert total == pytest.approx(1.0, abs=1e-9)

    def test_matches_scipy(self):
        x = np.linspace(0.1, 400.0, 50)
        for t in (0.4, 1.0, 150.0):
            assert np.allclose(gamma_density(x, GammaParams(t)),
                               stats.gamma.pdf(x, t), rtol=1e-10, atol=1e-300)

    @pytest.mark.parametrize('t', [0.5, 1.0, 10.0, 100.0])
    def test_integrates_to_one(self, t):
        params = GammaParams(t)
        upper = t + 40 * math.sqrt(t) + 40
        total, _ = integrate.quad(lambda x: gamma_density(x, params), 0, upper,
                                  points=[t], limit=200, epsabs=1e-13)
        assert total == pytest.approx(1.0, abs=1e-8)

    @pytest.mark.parametrize('t', [2.0, 10.0, 100.0])
    def test_mode(self, t):
        step = 1e-4
        x = np.arange(t - 1.5, t - 0.5 + step / 2, step)
        peak = x[np.argmax(gamma_density(x, GammaParams(t)))]
        assert abs(peak - (t - 1)) <= step

    def test_zero_below_support(self):
        assert gamma_density(-1.0, GammaParams(2.0)) == 0.0

    def test_mean_variance(self):
        assert gamma_mean_variance(GammaParams(7.0)) == (7.0, 7.0)


class TestSampleBatch:

    def test_reproducible(self):
        a = sample_batch(GammaParams(5.0), 1000, seed=7)
        b = sample_batch(GammaParams(5.0), 1000, seed=7)
        c = sample_batch(GammaParams(5.0), 1000, seed=8)
        assert np.array_equal(a.values, b.values)
        assert not np.array_equal(a.values, c.values)

    def test_prefix_of_longer_batch(self):
        short = sample_batch(GammaParams(2.0), Config.SAMPLE_BLOCK + 10, seed=3)
        long = sample_batch(GammaParams(2.0), 3 * Config.SAMPLE_BLOCK, seed=3)
        assert np.array_equal(short.values, long.values[:len(short)])

    def test_independent_of_workers(self):
        one = sample_batch(GammaParams(12.0), 3 * Config.SAMPLE_BLOCK, 11, workers=1)
        two = sample_batch(GammaParams(12.0), 3 * Config.SAMPLE_BLOCK, 11, workers=2)
        assert np.array_equal(one.values, two.values)

    def test_empty(self):
        with pytest.raises(EmptyBatch):
            sample_batch(GammaParams(1.0), 0, seed=1)

    def test_positive(self):
        values = sample_batch(GammaParams(0.05), 20000, seed=5).values
        assert np.all(values > 0)

    @pytest.mark.parametrize('t', [0.3, 1.0, 10.0, 100.0])
    def test_moments(self, t):
        n = 200000
        values = sample_batch(GammaParams(t), n, seed=42).values
        assert abs(values.mean() - t) <= 5 * math.sqrt(t / n)
        assert abs(values.var(ddof=1) - t) <= 5 * t * math.sqrt((3 + 6 / t) / n)

    @pytest.mark.parametrize('t', [0.3, 2.0, 40.0])
    def test_kolmogorov_smirnov(self, t):
        values = sample_batch(GammaParams(t), 20000, seed=2024).values
        assert stats.kstest(values, stats.gamma(t).cdf).pvalue > 1e-4

    def test_additivity(self):
        """Sum of independent gamma(1.5) and gamma(2.5) draws is gamma(4)."""
        n = 10000
        first = sample_batch(GammaParams(1.5), n, seed=1).values
        second = sample_batch(GammaParams(2.5), n, seed=2).values
        combined = first + second
        assert stats.kstest(combined, stats.gamma(4.0).cdf).pvalue > 1e-4
        reference = sample_batch(GammaParams(4.0), n, seed=3).values
        assert stats.ks_2samp(combined, reference).statistic < 1.63 * math.sqrt(2.0 / n)


class TestCharacteristicFunction:

    def test_at_zero(self):
        assert complex(char_fn(0.0, GammaParams(4.0))) == 1

    @pytest.mark.parametrize('t', [1.0, 10.0, 100.0])
    def test_empirical_agrees(self, t):
        n = 100000
        batch = sample_batch(GammaParams(t), n, seed=42)
        for u in (-2.0, -1.0, 1.0, 2.0):
            exact = complex(char_fn(u, GammaParams(t)))
            assert abs(complex(empirical_char_fn(batch, u)) - exact) <= 5 / math.sqrt(n)

    def test_literal_values(self):
        value = complex(char_fn(1.0, GammaParams(1.0)))
        assert abs(value - complex(0.5, 0.5)) < 1e-15
        assert abs(char_fn(2.0, GammaParams(50.0))) == pytest.approx(5.0 ** -25, rel=1e-12)

    def test_single_sample(self):
        batch = sample_batch(GammaParams(3.0), 1, seed=4)
        x = float(batch.values[0])
        value = complex(empirical_char_fn(batch, 1.7))
        assert abs(value - complex(math.cos(1.7 * x), math.sin(1.7 * x))) < 1e-15

    def test_error_halves_when_samples_quadruple(self):
        params = GammaParams(10.0)
        grid = np.linspace(-3.0, 3.0, 7)
        exact = [complex(char_fn(u, params)) for u in grid]

        def rms_error(count, seeds):
            squares = []
            for seed in seeds:
                batch = sample_batch(params, count, seed)
                squares.extend(abs(complex(empirical_char_fn(batch, u)) - e) ** 2
                               for u, e in zip(grid, exact) if u != 0)
            return math.sqrt(np.mean(squares))

        ratio = rms_error(4000, range(100)) / rms_error(16000, range(1000, 1100))
        assert 1.5 <= ratio <= 2.7


class TestLogMoment:

    def test_known_values(self):
        assert complex(log_moment_fn(1.0, GammaParams(9.0))) == 1
        value = complex(log_moment_fn(math.e, GammaParams(2.0)))
        assert abs(value - (-0.5j)) < 1e-15

    def test_array_agrees(self):
        u = np.array([0.1, 0.5, 2.0, 30.0])
        expected = [complex(log_moment_fn(x, GammaParams(6.5))) for x in u]
        assert np.allclose(log_moment_array(u, 6.5), expected, rtol=1e-14)

    def test_non_positive(self):
        with pytest.raises(DomainError):
            log_moment_fn(0.0, GammaParams(1.0))

    def test_empirical_log_moment(self):
        """E u^(-i X_t) via samples."""
        n = 50000
        values = sample_batch(GammaParams(20.0), n, seed=9).values
        u = 3.0
        empirical = np.mean(np.exp(-1j * values * math.log(u)))
        exact = complex(log_moment_fn(u, GammaParams(20.0)))
        assert abs(empirical - exact) <= 5 / math.sqrt(n)
