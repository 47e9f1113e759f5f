import math

import mpmath
import numpy as np
import pytest
from scipy import optimize

from zeta_sampler.config import Config
from zeta_sampler.exceptions import ConfigError, DomainError, InvalidParameter
from zeta_sampler.zeta_eval import (
    EvalConfig, ZetaArgument, accuracy_floor, evaluate_em, evaluate_integral,
    expected_zeta, expected_zeta_ibp, first_moment_tail, hardy_z,
    naive_tail_bound, zeta_em, zeta_em_array, zeta_integral_repr)


def mp_zeta(sigma, t):
    return complex(mpmath.zeta(mpmath.mpc(sigma, t)))


class TestZetaArgument:

    def test_pole(self):
        with pytest.raises(DomainError):
            ZetaArgument(1.0, 0.0)

    @pytest.mark.parametrize('sigma', [0.0, -0.5, 4.5])
    def test_sigma_range(self, sigma):
        with pytest.raises(DomainError):
            ZetaArgument(sigma, 1.0)


class TestZetaEm:

    def test_basel(self):
        value = complex(zeta_em(ZetaArgument(2.0)))
        assert abs(value - math.pi ** 2 / 6) <= 1e-10

    @pytest.mark.parametrize('sigma,t', [(0.5, 100.0), (0.3, 30.0), (0.7, 1.0),
                                         (0.5, 0.0), (3.0, 5.0), (0.5, 5000.0)])
    def test_against_mpmath(self, sigma, t):
        value = complex(zeta_em(ZetaArgument(sigma, t)))
        assert abs(value - mp_zeta(sigma, t)) <= 1e-8

    def test_first_zero(self):
        zero = optimize.brentq(hardy_z, 14.0, 14.2, xtol=1e-13)
        assert zero == pytest.approx(float(mpmath.zetazero(1).imag), abs=1e-8)
        assert abs(zeta_em(ZetaArgument(0.5, zero))) < 1e-8

    def test_conjugate_symmetry(self):
        up = complex(zeta_em(ZetaArgument(0.5, 20.0)))
        down = complex(zeta_em(ZetaArgument(0.5, -20.0)))
        assert abs(up - down.conjugate()) < 1e-12

    def test_terms_below_floor(self):
        with pytest.raises(ConfigError):
            zeta_em(ZetaArgument(0.5, 1000.0), EvalConfig(series_terms=5))

    def test_error_estimate_reported(self):
        result = evaluate_em(ZetaArgument(0.5, 50.0))
        assert 0 < result.error <= EvalConfig().quad_tolerance

    def test_array_matches_scalar(self):
        ts = np.array([0.0, 3.0, 17.5, 250.0])
        values = zeta_em_array(0.5, ts)
        for t, v in zip(ts, values):
            assert abs(v - complex(zeta_em(ZetaArgument(0.5, t)))) < 1e-9

    def test_array_independent_of_workers(self):
        ts = np.linspace(100.0, 200.0, 64)
        one = zeta_em_array(0.5, ts, EvalConfig.for_height(200.0), workers=1)
        two = zeta_em_array(0.5, ts, EvalConfig.for_height(200.0), workers=2)
        assert np.array_equal(one, two)

    def test_accuracy_floor(self):
        assert accuracy_floor(2 * math.pi) == 3
        assert accuracy_floor(-8 * math.pi) == 6


class TestZetaIntegral:

    @pytest.mark.parametrize('sigma', [0.3, 0.5, 0.7])
    @pytest.mark.parametrize('t', [0.0, 1.0, 10.0, 30.0])
    def test_agrees_with_em(self, sigma, t):
        s = ZetaArgument(sigma, t)
        assert abs(complex(zeta_integral_repr(s)) - complex(zeta_em(s))) <= 1e-8

    def test_series_form(self):
        value = complex(evaluate_integral(ZetaArgument(2.0), mode='series').value)
        assert abs(value - math.pi ** 2 / 6) <= 1e-9

    def test_mode_domain(self):
        with pytest.raises(DomainError):
            evaluate_integral(ZetaArgument(2.0), mode='continuation')
        with pytest.raises(DomainError):
            evaluate_integral(ZetaArgument(0.5, 3.0), mode='series')

    def test_naive_bound_dominates_error(self):
        s = ZetaArgument(0.5, 10.0)
        result = evaluate_integral(s)
        assert result.error < naive_tail_bound(s, EvalConfig().tail_cutoff)


class TestEvalConfig:

    def test_defaults_follow_overrides(self):
        default_terms = EvalConfig.for_height(100.0).series_terms
        with Config.overridden({'em-correction-order': '2', 'tail-cutoff': '500',
                                'quad-tolerance': '1e-7'}):
            cfg = EvalConfig()
            assert cfg.em_correction_order == 2
            assert cfg.tail_cutoff == 500.0
            assert cfg.quad_tolerance == 1e-7
            overridden_terms = EvalConfig.for_height(100.0, tolerance=1e-10).series_terms
        assert overridden_terms > default_terms
        assert EvalConfig().em_correction_order == Config.EM_CORRECTION_ORDER == 8
        assert EvalConfig().tail_cutoff == 1e4

    def test_tail_cutoff_override_reaches_integral(self):
        s = ZetaArgument(0.5, 10.0)
        with Config.overridden({'tail-cutoff': '1'}):
            with pytest.raises(InvalidParameter):
                evaluate_integral(s)
        assert abs(complex(evaluate_integral(s).value) - mp_zeta(0.5, 10.0)) < 1e-8


class TestHardyZ:

    def test_sign_change_at_first_zero(self):
        assert hardy_z(14.0) * hardy_z(14.2) < 0

    def test_real_and_modulus(self):
        t = 33.0
        assert abs(hardy_z(t)) == pytest.approx(abs(mp_zeta(0.5, t)), rel=1e-6)


class TestExpectedZeta:

    def test_close_to_one(self):
        assert abs(complex(expected_zeta(100.0)) - 1) <= 1e-3

    def test_gap_decreases(self):
        gaps = [abs(complex(expected_zeta(t)) - 1) for t in (50.0, 100.0, 200.0, 400.0)]
        assert all(b < a for a, b in zip(gaps, gaps[1:]))

    def test_against_mpmath_quadrature(self):
        """1 - int_{-inf}^{log 2} e^(y/2) (1 + i y)^(-t) dy."""
        t = 20.0
        with mpmath.workdps(30):
            integral = mpmath.quad(
                lambda y: mpmath.exp(y / 2) * (1 + 1j * y) ** (-t),
                [-mpmath.inf, -20, -5, 0, mpmath.log(2)])
            expected = complex(1 - integral)
        assert abs(complex(expected_zeta(t)) - expected) < 1e-9

    def test_below_domain(self):
        with pytest.raises(InvalidParameter):
            expected_zeta(5.0)

    @pytest.mark.parametrize('n_fold', [0, 1, 3, 6])
    def test_integration_by_parts_identity(self, n_fold):
        t = 50.0
        direct = complex(expected_zeta(t))
        folded = complex(expected_zeta_ibp(t, n_fold))
        assert abs(direct - folded) < 1e-10

    def test_ibp_fold_limit(self):
        with pytest.raises(InvalidParameter):
            expected_zeta_ibp(12.0, n_fold=11)

    def test_first_moment_tail_small(self):
        assert abs(first_moment_tail(50.0)) < 1e-3

    def test_first_moment_tail_against_mpmath(self):
        """int_2^inf {u} g'(u) du with g(u) = u^(-1/2) (1 + i log u)^(-t), panel by panel."""
        t = 50

        def integrand(n):
            def weighted_slope(u):
                base = 1 + 1j * mpmath.log(u)
                return (u - n) * u ** -1.5 * base ** -t * (-0.5 - 1j * t / base)
            return weighted_slope

        with mpmath.workdps(30):
            expected = complex(mpmath.fsum(
                mpmath.quad(integrand(n), [n, n + 1]) for n in range(2, 40)))
        value = complex(first_moment_tail(float(t)))
        assert abs(value - expected) < 1e-9
        assert abs(value) == pytest.approx(1.94524e-6, rel=1e-3)

    @pytest.mark.parametrize('t', [100.0, 200.0])
    def test_first_moment_tail_negligible(self, t):
        assert abs(first_moment_tail(t)) < 1e-8
