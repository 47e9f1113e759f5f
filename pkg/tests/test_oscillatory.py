import cmath
import math

import numpy as np
import pytest
from scipy import special

from zeta_sampler.complex_core import compensated_sum
from zeta_sampler.config import Config
from zeta_sampler.exceptions import IntervalTooLong, InvalidParameter, InvariantViolated
from zeta_sampler.oscillatory import (
    FAMILIES, ExpSumSpec, Phase, VdCParams, build_family, exp_sum_direct,
    oscillatory_integral, vdc_check, vdc_corpus, vdc_lemma22, vdc_lemma23)


def _ones(x):
    return np.ones_like(np.asarray(x, dtype=float))


class TestPhase:

    def test_numerical_derivatives(self):
        phase = Phase(lambda x: x ** 3)
        assert phase.derivative(np.array([2.0]))[0] == pytest.approx(12.0, rel=1e-8)
        second, noise = phase.second(np.array([2.0]))
        assert second[0] == pytest.approx(12.0, rel=1e-3)
        assert noise[0] > 0


class TestExpSumDirect:

    def test_full_periods_cancel(self):
        spec = build_family('linear', n=100, slope=0.25)
        assert abs(exp_sum_direct(spec)) < 1e-12

    def test_geometric_sum(self):
        slope, n = 0.1, 37
        spec = build_family('linear', n=n, slope=slope)
        z = np.exp(2j * math.pi * slope)
        expected = z * (1 - z ** n) / (1 - z)
        assert abs(complex(exp_sum_direct(spec)) - expected) < 1e-12

    def test_open_interval(self):
        spec = ExpSumSpec(Phase(lambda x: 0 * x), _ones, 1.0, 5.0)
        assert exp_sum_direct(spec).re == 3.0

    def test_too_long(self, monkeypatch):
        monkeypatch.setattr(Config, 'MAX_DIRECT_TERMS', 10)
        spec = ExpSumSpec(Phase(lambda x: 0 * x), _ones, 0.0, 100.0)
        with pytest.raises(IntervalTooLong):
            exp_sum_direct(spec)

    def test_empty_interval_rejected(self):
        with pytest.raises(InvalidParameter):
            ExpSumSpec(Phase(lambda x: x), _ones, 2.0, 2.0)

    def test_permutation_invariant(self):
        spec = build_family('quadratic-sqrt', n=500)
        first, last = spec.integers()
        n = np.arange(first, last + 1, dtype=float)
        phase = spec.phase(n)
        angle = 2 * math.pi * (phase - np.floor(phase))
        terms = spec.amplitude(n) * (np.cos(angle) + 1j * np.sin(angle))
        expected = complex(exp_sum_direct(spec))
        rng = np.random.default_rng(3)
        for _ in range(5):
            assert abs(compensated_sum(rng.permutation(terms)) - expected) <= 1e-12


class TestOscillatoryIntegral:

    def test_linear_phase(self):
        """int_0^1 e(3.3 x) dx."""
        value = complex(oscillatory_integral(_ones, lambda x: 3.3 * x, 0.0, 1.0))
        expected = (np.exp(2j * math.pi * 3.3) - 1) / (2j * math.pi * 3.3)
        assert abs(value - expected) < 1e-10

    def test_shift(self):
        """e(f(x) - m x) with f = m x is constant."""
        value = complex(oscillatory_integral(_ones, lambda x: 4 * x, 0.0, 2.0, m=4))
        assert abs(value - 2.0) < 1e-10

    def test_tolerance(self):
        with pytest.raises(InvalidParameter):
            oscillatory_integral(_ones, lambda x: x, 0.0, 1.0, tol=0.0)

    def test_fresnel(self):
        """int_0^10 e(x^2/2) dx = (C(10 sqrt 2) + i S(10 sqrt 2)) / sqrt 2."""
        value = complex(oscillatory_integral(_ones, lambda x: x * x / 2, 0.0, 10.0))
        s, c = special.fresnel(10 * math.sqrt(2))
        assert abs(value - complex(c, s) / math.sqrt(2)) < 1e-9

    def test_gaussian_linear_phase(self):
        """int e^(-x^2) e(c x) dx = sqrt(pi) exp(-pi^2 c^2)."""
        c = 0.7
        value = complex(oscillatory_integral(
            lambda x: np.exp(-x * x), lambda x: c * x, -8.0, 8.0))
        assert abs(value - math.sqrt(math.pi) * math.exp(-(math.pi * c) ** 2)) < 1e-9

    def test_gaussian_chirp(self):
        """int e^(-x^2) e(x^2) dx = sqrt(pi / (1 - 2 pi i))."""
        value = complex(oscillatory_integral(
            lambda x: np.exp(-x * x), lambda x: x * x, -8.0, 8.0))
        assert abs(value - cmath.sqrt(math.pi / (1 - 2j * math.pi))) < 1e-9

    @pytest.mark.parametrize('tol', [1e-6, 1e-8, 1e-10])
    def test_halving_tolerance_stays_within_previous(self, tol):
        cases = [(_ones, lambda x: x * x / 2, 0.0, 10.0),
                 (lambda x: 1 / np.sqrt(x), lambda x: x * x / 200, 1.0, 100.0),
                 (lambda x: np.exp(-x * x), lambda x: 3.3 * x, -6.0, 6.0)]
        for g, f, a, b in cases:
            coarse = complex(oscillatory_integral(g, f, a, b, tol=tol))
            fine = complex(oscillatory_integral(g, f, a, b, tol=tol / 2))
            assert abs(coarse - fine) <= tol

    def test_default_tolerance_read_at_call_time(self):
        with Config.overridden({'quad-tolerance': '-1'}):
            with pytest.raises(InvalidParameter):
                oscillatory_integral(_ones, lambda x: x, 0.0, 1.0)
        assert abs(complex(oscillatory_integral(_ones, lambda x: 0 * x, 0.0, 1.0)) - 1) < 1e-12


class TestLemmas:

    def test_lemma21_quadratic(self):
        check = vdc_check('21', build_family('quadratic', n=50))
        assert check.passed
        assert check.row()['lemma'] == '21'

    def test_lemma22_half_slope(self):
        check = vdc_check('22', build_family('half-slope', n=200))
        assert check.passed

    def test_lemma23_quadratic(self):
        spec = build_family('quadratic', n=100)
        check = vdc_check('23', spec, VdCParams.for_spec(spec, eta=10.0))
        assert check.passed

    def test_lemma22_slope_condition(self):
        spec = build_family('quadratic', n=50)
        with pytest.raises(InvariantViolated):
            vdc_lemma22(spec, VdCParams.for_spec(spec))

    def test_lemma22_linear_phase_rejected(self):
        spec = build_family('linear', n=100, slope=0.25)
        with pytest.raises(InvariantViolated):
            vdc_lemma22(spec, VdCParams.for_spec(spec))

    def test_lemma23_interval_of_length_two_rejected(self):
        spec = ExpSumSpec(build_family('quadratic', n=100).phase, _ones, 1.5, 3.5)
        with pytest.raises(InvariantViolated):
            vdc_lemma23(spec, VdCParams.for_spec(spec, eta=10.0))

    def test_concavity_rejected(self):
        phase = Phase(lambda x: -x * x / 400, lambda x: -x / 200,
                      lambda x: np.full_like(x, -1 / 200))
        spec = ExpSumSpec(phase, _ones, 1.0, 50.0)
        with pytest.raises(InvariantViolated):
            vdc_check('21', spec)

    def test_unknown_lemma(self):
        with pytest.raises(InvalidParameter):
            vdc_check('24', build_family('quadratic', n=20))

    def test_unknown_family(self):
        with pytest.raises(InvalidParameter):
            build_family('cubic')

    def test_params_validation(self):
        with pytest.raises(InvalidParameter):
            VdCParams(alpha=1.0, beta=0.0)
        with pytest.raises(InvalidParameter):
            VdCParams(alpha=0.0, beta=1.0, theta=1.0)


class TestCorpus:

    def test_size_and_families(self):
        corpus = vdc_corpus()
        assert len(corpus) >= 20
        assert {spec.name for _, spec, _ in corpus} <= set(FAMILIES)
        assert {lemma for lemma, _, _ in corpus} == {'21', '22', '23'}

    @pytest.mark.slow
    def test_every_setting_within_ceiling(self):
        ratios = [vdc_check(*entry).ratio for entry in vdc_corpus()]
        assert max(ratios) <= Config.VDC_CEILING
