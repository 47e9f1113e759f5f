import cmath
import math

import mpmath
import numpy as np
import pytest

from zeta_sampler.complex_core import (
    ComplexValue, KernelArgs, compensated_sum, kernel, kernel_array,
    log_one_plus_iw, pow_positive_base, principal_log, stable_pow,
    taylor_deviation, taylor_kernel)
from zeta_sampler.exceptions import DomainError, InvalidParameter, KernelOverflow


class TestLogOnePlusIw:
    """log(1 + i w) for real w."""

    def test_matches_numpy_away_from_zero(self):
        w = np.array([-50.0, -3.0, -0.5, 1.0, 7.0, 1e3])
        assert np.allclose(log_one_plus_iw(w), np.log(1 + 1j * w),
                           rtol=1e-14, atol=0)

    def test_small_argument_keeps_relative_accuracy(self):
        """The real part w^2/2 must not vanish in rounding."""
        w = 1e-9
        value = complex(log_one_plus_iw(w))
        assert value.real == pytest.approx(w * w / 2, rel=1e-12)
        assert value.imag == pytest.approx(w, rel=1e-12)

    def test_series_branch_is_continuous(self):
        below = complex(log_one_plus_iw(0.99e-4))
        with mpmath.workdps(40):
            expected = complex(mpmath.log(1 + 1j * mpmath.mpf(0.99e-4)))
        assert abs(below - expected) <= 1e-18


class TestStablePow:

    def test_against_mpmath(self):
        base, exponent = complex(1.0, 2.0), -3.5
        expected = complex(mpmath.power(mpmath.mpc(1, 2), exponent))
        assert abs(complex(stable_pow(base, exponent)) - expected) < 1e-14

    def test_negative_real_part_uses_principal_branch(self):
        base = complex(-1.0, 1e-3)
        expected = cmath.exp(-2.5 * cmath.log(base))
        assert abs(complex(stable_pow(base, -2.5)) - expected) < 1e-12

    def test_zero_base(self):
        with pytest.raises(DomainError):
            stable_pow(0j, 2.0)

    def test_overflow(self):
        with pytest.raises(KernelOverflow):
            stable_pow(complex(1e-300, 0.0), -5.0)

    def test_array_version_agrees(self):
        bases = 1.0 + 1j * np.linspace(-5, 5, 11)
        values = pow_positive_base(bases, -7.25)
        for b, v in zip(bases, values):
            assert abs(complex(stable_pow(b, -7.25)) - v) < 1e-14

    def test_literal_inverse(self):
        value = complex(stable_pow(complex(1.0, -1.0), -1.0))
        assert abs(value - complex(0.5, 0.5)) < 1e-15

    def test_modulus_identity(self):
        w, t = 0.5, 100.0
        modulus = abs(stable_pow(complex(1.0, w), -t))
        assert modulus == pytest.approx(math.exp(-t / 2 * math.log1p(w * w)), rel=1e-12)

    def test_exponent_additivity(self):
        rng = np.random.default_rng(7)
        for _ in range(500):
            base = complex(*rng.normal(size=2))
            e1, e2 = rng.uniform(-20.0, 20.0, size=2)
            joint = complex(stable_pow(base, e1 + e2))
            split = complex(stable_pow(base, e1)) * complex(stable_pow(base, e2))
            assert abs(split - joint) <= 1e-10 * abs(joint)


class TestPrincipalLog:

    def test_branch_cut(self):
        value = principal_log(-1.0)
        assert value.re == 0.0
        assert value.im == pytest.approx(math.pi)

    def test_zero(self):
        with pytest.raises(DomainError):
            principal_log(0)

    def test_literal_values(self):
        assert complex(principal_log(1.0)) == 0j
        value = principal_log(1j)
        assert value.re == 0.0
        assert value.im == pytest.approx(math.pi / 2)

    def test_negative_zero_imaginary_part(self):
        assert principal_log(complex(-2.0, -0.0)).im == math.pi

    def test_argument_range_random(self):
        rng = np.random.default_rng(11)
        parts = rng.normal(size=(100000, 2)) * 10.0 ** rng.integers(-6, 6, (100000, 1))
        for re, im in parts:
            value = principal_log(complex(re, im))
            assert -math.pi < value.im <= math.pi
            assert value.im == pytest.approx(math.atan2(im, re), abs=1e-15)


class TestKernel:

    def test_diagonal_is_one(self):
        value = kernel(KernelArgs(u=3.0, v=3.0, t=12.5, p=2))
        assert value.re == 1.0 and value.im == 0.0

    def test_modulus_bounded_by_one(self):
        u = np.linspace(1.0, 50.0, 200)
        values = kernel_array(u, 7.0, 40.0, 2)
        assert np.all(np.abs(values) <= 1.0 + 1e-15)

    def test_conjugate_under_swap(self):
        a = complex(kernel(KernelArgs(u=2.0, v=5.0, t=10.0)))
        b = complex(kernel(KernelArgs(u=5.0, v=2.0, t=10.0)))
        assert abs(a - b.conjugate()) < 1e-15

    def test_squared_modulus_identity(self):
        rng = np.random.default_rng(5)
        for u, v, t in zip(rng.uniform(1.0, 1e3, 300), rng.uniform(1.0, 1e3, 300),
                           rng.uniform(1.0, 50.0, 300)):
            w = math.log(u) - math.log(v)
            expected = math.exp(-t * math.log1p(w * w))
            value = abs(kernel(KernelArgs(u=u, v=v, t=t))) ** 2
            assert value == pytest.approx(expected, rel=1e-10)

    def test_ratio_e(self):
        """u/v = e, t = 10: (1 + i)^(-10) = 2^(-5) exp(-10 i atan 1) = -i/32."""
        value = complex(kernel(KernelArgs(u=math.e, v=1.0, t=10.0)))
        with mpmath.workdps(34):
            expected = complex(mpmath.mpf(2) ** -5 * mpmath.exp(-10j * mpmath.atan(1)))
        assert abs(value - expected) < 1e-15
        assert abs(value - (-1j / 32)) < 1e-15

    def test_invalid_arguments(self):
        with pytest.raises(DomainError):
            KernelArgs(u=0.0, v=1.0, t=2.0)
        with pytest.raises(InvalidParameter):
            KernelArgs(u=1.0, v=1.0, t=2.0, p=-1)
        with pytest.raises(InvalidParameter):
            KernelArgs(u=1.0, v=1.0, t=0.5)


class TestTaylorKernel:

    def test_small_z(self):
        z, t = 0.01, 10.0
        exact = (1 + z) ** -t
        approx = complex(taylor_kernel(z, t))
        assert abs(approx - exact) / abs(exact) == pytest.approx(
            taylor_deviation(z, t), rel=1e-6)
        assert taylor_deviation(z, t) < 1e-5

    def test_real_argument(self):
        with mpmath.workdps(40):
            z, t = mpmath.mpf('0.01'), 100
            exact = (1 + z) ** -t
            deviation = abs((exact - mpmath.exp(-t * (z - z * z / 2))) / exact)
        assert taylor_deviation(0.01, 100.0) == pytest.approx(float(deviation), rel=1e-8)
        assert taylor_deviation(0.01, 100.0) <= 1e-3

    def test_at_zero(self):
        assert complex(taylor_kernel(0.0, 50.0)) == 1.0
        assert taylor_deviation(0.0, 50.0) == 0.0

    @staticmethod
    def _fitted_constant(t):
        radius = 2 * math.sqrt(math.log(t) / t)
        worst = 0.0
        for r in np.linspace(radius / 20, radius, 20):
            for theta in np.linspace(0.0, 2 * math.pi, 72, endpoint=False):
                z = cmath.rect(r, theta)
                worst = max(worst, taylor_deviation(z, t) / (t * r ** 3))
        return worst

    def test_cubic_bound_at_largest_height(self):
        assert self._fitted_constant(1e4) <= 2.0

    def test_cubic_bound_global_constant(self):
        constants = [self._fitted_constant(t) for t in (1e2, 1e3, 1e4)]
        assert max(constants) <= 4.0

    def test_outside_disc(self):
        with pytest.raises(DomainError):
            taylor_kernel(1.5, 3.0)


class TestCompensatedSum:

    def test_cancellation(self):
        assert compensated_sum([1e16, 1.0, -1e16]) == 1.0

    def test_order_independent(self):
        rng = np.random.default_rng(1)
        values = rng.normal(size=1000) * 10.0 ** rng.integers(-8, 8, 1000)
        values = values + 1j * values[::-1]
        assert compensated_sum(values) == compensated_sum(values[::-1])


class TestComplexValue:

    def test_non_finite(self):
        with pytest.raises(DomainError):
            ComplexValue(math.nan, 0.0)

    def test_round_trip(self):
        z = complex(0.25, -3.0)
        assert complex(ComplexValue.from_complex(z)) == z
        assert abs(ComplexValue.from_complex(z)) == abs(z)
