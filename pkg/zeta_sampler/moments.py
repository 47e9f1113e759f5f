"""
E zeta(1/2 + i X_t) 和 E |zeta(1/2 + i X_t)|^2 的蒙特卡洛估计、按 t 扫描以及残差分析。

二阶矩的渐近形式为 log t + O(sqrt(log t) log log t)，残差按
band = sqrt(log t) log log t 归一化。
"""
import math
from dataclasses import dataclass

import numpy as np

from zeta_sampler.complex_core import ComplexValue
from zeta_sampler.config import Config
from zeta_sampler.exceptions import InvalidParameter, TooFewRows
from zeta_sampler.gamma_process import GammaParams, sample_batch
from zeta_sampler.log import log
from zeta_sampler.zeta_eval import EvalConfig, zeta_em_array

SWEEP_COLUMNS = ('t', 'n', 'seed', 'first_re', 'first_im', 'second', 'se2',
                 'log_t', 'residual', 'band')


@dataclass(frozen=True)
class MomentEstimate:
    t: float
    n_samples: int
    seed: int
    first_moment: ComplexValue
    second_moment: float
    se_first: float
    se_second: float

    def to_dict(self):
        return {
            't': self.t,
            'n_samples': self.n_samples,
            'seed': self.seed,
            'first_moment': self.first_moment.to_dict(),
            'second_moment': self.second_moment,
            'se_first': self.se_first,
            'se_second': self.se_second,
        }


@dataclass(frozen=True)
class SweepRow:
    t: float
    n: int
    seed: int
    first_re: float
    first_im: float
    second: float
    se2: float
    log_t: float
    residual: float
    band: float

    @property
    def estimate(self):
        return self.second

    @property
    def se(self):
        return self.se2

    @classmethod
    def from_estimate(cls, estimate):
        log_t = math.log(estimate.t)
        return cls(t=estimate.t, n=estimate.n_samples, seed=estimate.seed,
                   first_re=estimate.first_moment.re,
                   first_im=estimate.first_moment.im,
                   second=estimate.second_moment, se2=estimate.se_second,
                   log_t=log_t, residual=estimate.second_moment - log_t,
                   band=band(estimate.t))

    def to_dict(self):
        return {name: getattr(self, name) for name in SWEEP_COLUMNS}


@dataclass(frozen=True)
class ResidualAnalysis:
    c_fit: float
    passed: bool
    ratio_decreasing: bool
    offset: float

    def to_dict(self):
        return {'C_fit': self.c_fit, 'pass': self.passed,
                'ratio_decreasing': self.ratio_decreasing,
                'hardy_littlewood_offset': self.offset}


@dataclass(frozen=True)
class ChebyshevCheck:
    t: float
    fraction: float
    bound: float
    se: float
    passed: bool

    def to_dict(self):
        return {'t': self.t, 'fraction': self.fraction, 'bound': self.bound,
                'se': self.se, 'pass': self.passed}


def band(t):
    """sqrt(log t) log log t"""
    log_t = math.log(t)
    return math.sqrt(log_t) * math.log(log_t)


def hardy_littlewood_offset():
    """2 gamma - 1 - log 2 pi：经典均值定理中 log t 之后的常数项"""
    return 2 * np.euler_gamma - 1 - math.log(2 * math.pi)


def sample_zeta_values(t, n_samples, seed, workers=None,
                       tolerance=None):
    """
    抽取 X_t 的样本并计算 zeta(1/2 + i x_j)
    :return: (SampleBatch, 复数数组)
    """
    tolerance = tolerance or Config.MOMENT_ZETA_TOLERANCE
    batch = sample_batch(GammaParams(t), n_samples, seed, workers)
    height = t + 10 * math.sqrt(t)
    largest = float(np.max(batch.values))
    if largest > height:
        log.info('Re-deriving zeta config: sample {:.6g} exceeds {:.6g}'.format(
            largest, height))
        height = largest
    cfg = EvalConfig.for_height(height, tolerance=tolerance)
    log.debug('t={} series_terms={}'.format(t, cfg.series_terms))
    return batch, zeta_em_array(0.5, batch.values, cfg, workers=workers)


def summarize(t, seed, values):
    """由 zeta 值计算两个矩及其标准误"""
    n = values.size
    first = values.mean()
    spread = np.abs(values - first) ** 2
    se_first = math.sqrt(spread.sum() / (n - 1) / n)
    squares = np.abs(values) ** 2
    return MomentEstimate(
        t=float(t), n_samples=int(n), seed=int(seed),
        first_moment=ComplexValue.from_complex(first),
        second_moment=float(squares.mean()),
        se_first=se_first,
        se_second=float(squares.std(ddof=1)) / math.sqrt(n))


def estimate_moments(t, n_samples, seed, workers=None):
    """
    :param t: gamma 过程参数，t >= 10
    :param n_samples: 样本数，至少 100
    :param seed: 种子
    :return: MomentEstimate
    """
    if t < 10:
        raise InvalidParameter('estimate_moments needs t >= 10, got {}'.format(t))
    if n_samples < 100:
        raise InvalidParameter(
            'estimate_moments needs at least 100 samples, got {}'.format(n_samples))
    _, values = sample_zeta_values(t, n_samples, seed, workers)
    estimate = summarize(t, seed, values)
    log.info('t={} n={}: E|zeta|^2 = {:.6f} +- {:.6f}'.format(
        t, n_samples, estimate.second_moment, estimate.se_second))
    return estimate


def estimate_to_precision(t, n_samples, seed, se_target, max_samples=None,
                          workers=None):
    """
    样本数从 n_samples 起逐次加倍，直到 se_second <= se_target 或达到 max_samples。
    同一种子下短批次是长批次的前缀，结果只取决于参数
    """
    if not se_target > 0:
        raise InvalidParameter('se_target must be positive, got {}'.format(se_target))
    max_samples = max_samples or 64 * n_samples
    estimate = estimate_moments(t, n_samples, seed, workers)
    while estimate.se_second > se_target and estimate.n_samples < max_samples:
        count = min(2 * estimate.n_samples, max_samples)
        log.info('t={}: se_second {:.4f} above {}, growing to {} samples'.format(
            t, estimate.se_second, se_target, count))
        estimate = estimate_moments(t, count, seed, workers)
    if estimate.se_second > se_target:
        log.warning('t={}: se_second {:.4f} still above {} at {} samples'.format(
            t, estimate.se_second, se_target, estimate.n_samples))
    return estimate


def sweep(t_values, n_samples, seed, workers=None, se_target=None,
          max_samples=None):
    """
    对每个 t 估计一次矩
    :param t_values: 升序且每个不小于 100
    :param se_target: 给出时每个 t 的样本数加倍，直到 se_second <= se_target
    :return: SweepRow 列表
    """
    t_values = [float(t) for t in t_values]
    if not t_values:
        return []
    if any(t < 100 for t in t_values):
        raise InvalidParameter('sweep needs every t >= 100')
    if t_values != sorted(t_values):
        raise InvalidParameter('sweep needs t values in ascending order')
    if se_target is None:
        return [SweepRow.from_estimate(estimate_moments(t, n_samples, seed, workers))
                for t in t_values]
    return [SweepRow.from_estimate(estimate_to_precision(
        t, n_samples, seed, se_target, max_samples, workers)) for t in t_values]


def ratio_trend(rows):
    """|residual| / log t 沿扫描递减（允许 2 se 的松弛）"""
    for before, after in zip(rows, rows[1:]):
        slack = 2 * (before.se2 / before.log_t + after.se2 / after.log_t)
        ratio_before = abs(before.residual) / before.log_t
        if abs(after.residual) / after.log_t > ratio_before + slack:
            return False
    return True


def residual_analysis(rows):
    """
    C_fit = max over rows of max(|residual| - 2 se, 0) / band
    """
    if len(rows) < 3:
        raise TooFewRows('residual_analysis needs at least 3 rows, got {}'.format(
            len(rows)))
    c_fit = max(max(abs(row.residual) - 2 * row.se2, 0.0) / row.band
                for row in rows)
    analysis = ResidualAnalysis(
        c_fit=c_fit, passed=c_fit <= Config.RESIDUAL_CEILING,
        ratio_decreasing=ratio_trend(rows), offset=hardy_littlewood_offset())
    log.info('Residual analysis: C_fit = {:.4f} ({})'.format(
        c_fit, 'pass' if analysis.passed else 'FAIL'))
    return analysis


def chebyshev_check(t, n_samples, seed, workers=None):
    """
    |zeta| > log t 的经验频率不超过 E|zeta|^2 / (log t)^2 加 3 个二项标准误
    """
    _, values = sample_zeta_values(t, n_samples, seed, workers)
    log_t = math.log(t)
    fraction = float(np.mean(np.abs(values) > log_t))
    bound = float(np.mean(np.abs(values) ** 2)) / log_t ** 2
    p = min(max(bound, fraction), 1.0)
    se = math.sqrt(p * (1 - p) / values.size)
    return ChebyshevCheck(t=float(t), fraction=fraction, bound=bound, se=se,
                          passed=fraction <= bound + 3 * se)
