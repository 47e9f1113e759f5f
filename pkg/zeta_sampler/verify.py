"""
验收检查。每个检查用 @check(name) 注册，返回 CheckResult；
quick=True 时使用缩小的 t 网格和样本数。
"""
import math
from dataclasses import dataclass, field

import numpy as np

from zeta_sampler.config import Config
from zeta_sampler.decomposition import (
    band_sums, compute_decomposition, diagonal_F_sum, diagonal_G_sum, evaluate_A)
from zeta_sampler.exceptions import InvalidUsage, ZetaSamplerException
from zeta_sampler.gamma_process import (
    GammaParams, char_fn, empirical_char_fn, sample_batch)
from zeta_sampler.log import log
from zeta_sampler.moments import estimate_moments, residual_analysis, sweep
from zeta_sampler.oscillatory import vdc_check, vdc_corpus
from zeta_sampler.response import json
from zeta_sampler.zeta_eval import (
    EvalConfig, ZetaArgument, evaluate_em, evaluate_integral, expected_zeta)

CHECKS = {}


@dataclass
class CheckResult:
    name: str
    passed: bool
    details: dict = field(default_factory=dict)

    def to_dict(self):
        return {'name': self.name, 'pass': self.passed, 'details': self.details}


def check(name):
    """注册一个验收检查"""
    def decorator(handler):
        CHECKS[name] = handler
        return handler
    return decorator


@check('char-fn')
def check_char_fn(quick, seed, workers):
    count = 20000 if quick else 100000
    worst = 0.0
    for t in (1.0, 10.0, 100.0):
        batch = sample_batch(GammaParams(t), count, seed, workers)
        for u in (-2.0, -1.0, 1.0, 2.0):
            exact = complex(char_fn(u, GammaParams(t)))
            worst = max(worst, abs(complex(empirical_char_fn(batch, u)) - exact))
    bound = 5 / math.sqrt(count)
    return worst <= bound, {'max_deviation': worst, 'bound': bound, 'N': count}


@check('sampler-moments')
def check_sampler_moments(quick, seed, workers):
    t = 100.0
    count = 100000 if quick else 1000000
    values = sample_batch(GammaParams(t), count, seed, workers).values
    mean, variance = float(values.mean()), float(values.var(ddof=1))
    mean_bound = 5 * math.sqrt(t / count)
    variance_bound = 5 * t * math.sqrt(3.0 / count)
    passed = abs(mean - t) <= mean_bound and abs(variance - t) <= variance_bound
    return passed, {'mean': mean, 'variance': variance, 'N': count,
                    'mean_bound': mean_bound, 'variance_bound': variance_bound}


@check('zeta-cross')
def check_zeta_cross(quick, seed, workers):
    worst = 0.0
    for sigma in (0.3, 0.5, 0.7):
        for t in (0.0, 1.0, 10.0, 30.0):
            s = ZetaArgument(sigma, t)
            em = complex(evaluate_em(s).value)
            integral = complex(evaluate_integral(s).value)
            worst = max(worst, abs(em - integral))
    basel = abs(complex(evaluate_em(ZetaArgument(2.0)).value) - math.pi ** 2 / 6)
    return worst <= 1e-8 and basel <= 1e-10, {
        'max_deviation': worst, 'basel_deviation': basel}


@check('expected-zeta')
def check_expected_zeta(quick, seed, workers):
    grid = (50.0, 100.0, 200.0, 400.0)
    gaps = [abs(complex(expected_zeta(t)) - 1) for t in grid]
    decreasing = all(b < a for a, b in zip(gaps, gaps[1:]))
    samples = 2000 if quick else 10000
    estimate = estimate_moments(200.0, samples, seed, workers)
    mc_gap = abs(complex(estimate.first_moment) - 1)
    passed = gaps[1] <= 1e-3 and decreasing and mc_gap <= 3 * estimate.se_first
    return passed, {'t': list(grid), 'gap': gaps, 'mc_first_moment':
                    estimate.first_moment, 'se_first': estimate.se_first}


@check('second-moment')
def check_second_moment(quick, seed, workers):
    if quick:
        grid, samples, se_ceiling = (1e3, 1e4, 1e5), 5000, 0.5
    else:
        grid, samples, se_ceiling = (1e3, 1e4, 1e5, 1e6), 40000, 0.2
    rows = sweep(grid, samples, seed, workers, se_target=se_ceiling,
                 max_samples=16 * samples)
    analysis = residual_analysis(rows)
    worst_se = max(row.se2 for row in rows)
    passed = analysis.passed and analysis.ratio_decreasing and worst_se <= se_ceiling
    return passed, {'rows': [row.to_dict() for row in rows],
                    'analysis': analysis.to_dict(), 'max_se': worst_se}


@check('decomposition')
def check_decomposition(quick, seed, workers):
    tol = 1e-6
    grid, samples = ((20.0,), 2000) if quick else ((20.0, 50.0), 10000)
    reports = [compute_decomposition(t, tol, samples, seed, workers, direct=False)
               for t in grid]
    closed = complex(evaluate_A(50.0, '2-closed', tol).value)
    direct = complex(evaluate_A(50.0, '2-direct', tol).value)
    a2_gap = abs(direct - closed)
    passed = all(r.passed for r in reports) and a2_gap <= 2 * tol
    return passed, {'reports': [r.to_dict() for r in reports], 'a2_gap': a2_gap}


@check('diagonal')
def check_diagonal(quick, seed, workers):
    harmonic = math.fsum(1.0 / (n + 1) for n in range(1, 101))
    harmonic_gap = abs(complex(diagonal_F_sum(100)) - harmonic)
    rows = []
    for t in ((1e3, 1e4) if quick else (1e3, 1e4, 1e5)):
        residual = (complex(diagonal_F_sum(t)) - complex(diagonal_G_sum(t))
                    - math.log(t))
        rows.append({'t': t, 'residual': residual})
    passed = harmonic_gap <= 1e-12 and all(
        abs(row['residual']) <= Config.DIAGONAL_CEILING for row in rows)
    return passed, {'harmonic_gap': harmonic_gap, 'rows': rows}


@check('van-der-corput')
def check_van_der_corput(quick, seed, workers):
    checks = [vdc_check(lemma, spec, params) for lemma, spec, params in vdc_corpus()]
    failed = [c.row() for c in checks if not c.passed]
    return not failed, {'settings': len(checks),
                        'max_ratio': max(c.ratio for c in checks),
                        'failed': failed}


@check('band-sums')
def check_band_sums(quick, seed, workers):
    grid = (1e4,) if quick else (1e4, 1e5, 1e6)
    reports = [band_sums(t, delta, variant, workers)
               for t in grid for delta in (0.25, 0.5, 1.0)
               for variant in ('half-square', 'as-printed')]
    return all(r.passed for r in reports), {
        'reports': [r.to_dict() for r in reports]}


@check('reproducibility')
def check_reproducibility(quick, seed, workers):
    samples = 1000 if quick else 5000
    bodies = [json(estimate_moments(100.0, samples, seed, count).to_dict()).body
              for count in (1, 2)]
    batches = [sample_batch(GammaParams(10.0), 3 * Config.SAMPLE_BLOCK, seed,
                            count).values for count in (1, 2)]
    identical = bodies[0] == bodies[1] and np.array_equal(batches[0], batches[1])
    return identical, {'workers_compared': [1, 2]}


def run_checks(quick=False, seed=None, workers=None, names=None):
    """
    依次运行验收检查
    :param names: 要运行的检查名，默认全部
    :return: CheckResult 列表
    """
    seed = Config.DEFAULT_SEED if seed is None else seed
    names = list(names or CHECKS)
    unknown = [name for name in names if name not in CHECKS]
    if unknown:
        raise InvalidUsage('Unknown checks: {}'.format(', '.join(unknown)))
    results = []
    for name in names:
        log.info('Running check {}'.format(name))
        try:
            passed, details = CHECKS[name](quick, seed, workers)
        except ZetaSamplerException as e:
            log.exception('Check {} raised'.format(name))
            passed, details = False, {'error': '{}: {}'.format(type(e).__name__, e)}
        results.append(CheckResult(name, bool(passed), details))
        if not passed:
            log.error('Acceptance check failed: {}'.format(name))
    return results
