"""
临界线附近的 zeta(sigma + i t) 求值。

两种相互独立的方法：
  - evaluate_em: 截断 Dirichlet 级数加 Euler-Maclaurin 修正（快速路径）
  - evaluate_integral: 分数部分表示
        zeta(s) = 1 - int_0^1 u^(-s) du + int_1^inf {u} d/du u^(-s) du
    在每个单位区间上自适应积分（基准路径）
"""
import math
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import NamedTuple

import numpy as np
from scipy.special import bernoulli, loggamma

from zeta_sampler.complex_core import (
    ComplexValue, log_one_plus_iw, pow_positive_base)
from zeta_sampler.config import Config
from zeta_sampler.exceptions import (
    ConfigError, DomainError, InvalidParameter, QuadratureError)
from zeta_sampler.log import log
from zeta_sampler.quadrature import integrate, integrate_panels, split_panels
from zeta_sampler.workers import parallel_map

CONTOUR_SHIFT = 1.0             # E zeta 积分围道向下平移的距离
CONTOUR_LEFT = -80.0            # y = log u 的左截断点


@dataclass(frozen=True)
class ZetaArgument:
    sigma: float
    t: float = 0.0

    def __post_init__(self):
        if not 0 < self.sigma <= 4:
            raise DomainError('sigma must lie in (0, 4], got {}'.format(self.sigma))
        if self.sigma == 1 and self.t == 0:
            raise DomainError('zeta has a pole at s = 1')

    @property
    def s(self):
        return complex(self.sigma, self.t)


@dataclass(frozen=True)
class EvalConfig:
    series_terms: int = None            # None 表示按精度自动推导
    # 默认值在构造时读取，以便 Config.overridden 生效
    em_correction_order: int = field(
        default_factory=lambda: int(Config.EM_CORRECTION_ORDER))
    tail_cutoff: float = field(default_factory=lambda: float(Config.TAIL_CUTOFF))
    quad_tolerance: float = field(
        default_factory=lambda: float(Config.QUAD_TOLERANCE))

    @classmethod
    def for_height(cls, t, sigma=0.5, tolerance=None, **kwargs):
        """
        为高度 t 推导满足容差的级数项数
        """
        cfg = cls(**kwargs)
        tolerance = tolerance or cfg.quad_tolerance
        terms = required_terms(complex(sigma, abs(t)), cfg.em_correction_order,
                               tolerance)
        return replace(cfg, series_terms=terms)

    def to_dict(self):
        return {
            'series_terms': self.series_terms,
            'em_correction_order': self.em_correction_order,
            'tail_cutoff': self.tail_cutoff,
            'quad_tolerance': self.quad_tolerance,
        }


class Evaluation(NamedTuple):
    value: ComplexValue
    error: float

    def to_dict(self):
        return {'value': self.value.to_dict(), 'error_estimate': self.error}


def accuracy_floor(t):
    """临界线上级数项数的下限 ceil(3 sqrt(|t| / 2 pi))"""
    return int(math.ceil(3.0 * math.sqrt(abs(t) / (2.0 * math.pi))))


@lru_cache(maxsize=None)
def _bernoulli_coefficients(order):
    """B_2k / (2k)!，k = 1..order"""
    numbers = bernoulli(2 * order)
    return tuple(float(numbers[2 * k]) / math.factorial(2 * k)
                 for k in range(1, order + 1))


def _log_abs_rising(s, count):
    """log |s (s+1) ... (s+count-1)|"""
    return sum(math.log(abs(s + j)) for j in range(count))


def em_remainder(s, terms, order):
    """
    Euler-Maclaurin 余项估计：第一个省略项乘以 |s+2m+1|/(sigma+2m+1)
    """
    k = order + 1
    coefficient = abs(_bernoulli_coefficients(k)[-1])
    logs = (math.log(coefficient) + _log_abs_rising(s, 2 * k - 1)
            - (s.real + 2 * k - 1) * math.log(terms))
    factor = abs(s + 2 * k - 1) / (s.real + 2 * k - 1)
    return factor * math.exp(logs)


def required_terms(s, order, tolerance):
    """满足余项估计的最小项数（不低于精度下限，至少 10）"""
    terms = max(10, accuracy_floor(s.imag))
    while em_remainder(s, terms, order) > tolerance:
        terms = int(terms * 1.2) + 1
    return terms


def _em_chunk(job):
    """
    一组 t 的 Euler-Maclaurin 求值
    :param job: (sigma, t 数组, 项数, 修正阶数)
    """
    sigma, ts, terms, order = job
    n = np.arange(1, terms + 1, dtype=float)
    log_n = np.log(n)
    amplitude = np.exp(-sigma * log_n)
    s = sigma + 1j * ts
    partial = (amplitude[None, :] * np.exp(-1j * np.outer(ts, log_n))).sum(axis=1)

    log_terms = math.log(terms)
    n_pow = np.exp(-s * log_terms)                       # N^(-s)
    value = partial - 0.5 * n_pow + terms * n_pow / (s - 1.0)
    rising = s.copy()
    power = n_pow / terms                                # N^(-s-1)
    for k, coefficient in enumerate(_bernoulli_coefficients(order), start=1):
        value = value + coefficient * rising * power
        rising = rising * (s + 2 * k - 1) * (s + 2 * k)
        power = power / (terms * terms)
    return value


def _resolve_terms(cfg, height, sigma, tolerance=None):
    """补全 series_terms，或检查其不低于精度下限"""
    cfg = cfg or EvalConfig()
    if cfg.series_terms is None:
        terms = required_terms(complex(sigma, height), cfg.em_correction_order,
                               tolerance or cfg.quad_tolerance)
        return replace(cfg, series_terms=terms)
    if cfg.series_terms < accuracy_floor(height):
        raise ConfigError(
            'series_terms={} below accuracy floor {} for t={}'.format(
                cfg.series_terms, accuracy_floor(height), height))
    return cfg


def zeta_em_array(sigma, ts, cfg=None, tolerance=None, workers=None):
    """
    固定 sigma 下对一组 t 求 zeta（分块，结果与进程数无关）
    :return: 复数数组
    """
    ts = np.atleast_1d(np.asarray(ts, dtype=float))
    if ts.size == 0:
        return np.zeros(0, dtype=complex)
    if sigma == 1 and np.any(ts == 0):
        raise DomainError('zeta has a pole at s = 1')
    cfg = _resolve_terms(cfg, float(np.max(np.abs(ts))), sigma, tolerance)
    terms = int(cfg.series_terms)
    rows = max(1, int(Config.ZETA_CHUNK_ELEMENTS) // terms)
    jobs = [(sigma, ts[i:i + rows], terms, cfg.em_correction_order)
            for i in range(0, ts.size, rows)]
    return np.concatenate(parallel_map(_em_chunk, jobs, workers))


def evaluate_em(s, cfg=None):
    """
    Euler-Maclaurin 求值
    :param s: ZetaArgument
    :param cfg: EvalConfig，series_terms 为空时自动推导
    :return: Evaluation(value, error)
    """
    cfg = _resolve_terms(cfg, abs(s.t), s.sigma)
    value = zeta_em_array(s.sigma, [s.t], cfg, workers=1)[0]
    error = em_remainder(s.s, cfg.series_terms, cfg.em_correction_order)
    return Evaluation(ComplexValue.from_complex(value), error)


def zeta_em(s, cfg=None):
    """截断级数加 Euler-Maclaurin 修正"""
    return evaluate_em(s, cfg).value


def naive_tail_bound(s, cutoff):
    """|s| cutoff^(-sigma) / sigma：截断分数部分积分的粗略上界"""
    return abs(s.s) * cutoff ** (-s.sigma) / s.sigma


def _sawtooth_tail(s, cutoff, order):
    """
    int_M^inf {u} d/du u^(-s) du 的 Euler-Maclaurin 展开
        = -M^(-s)/2 + sum_k B_2k/(2k)! s(s+1)...(s+2k-2) M^(-s-2k+1)
    :return: (值, 第一个省略项的大小)
    """
    m_pow = _real_pow(cutoff, -s)
    value = -0.5 * m_pow
    rising = s
    power = m_pow / cutoff
    for k, coefficient in enumerate(_bernoulli_coefficients(order), start=1):
        value += coefficient * rising * power
        rising *= (s + 2 * k - 1) * (s + 2 * k)
        power /= cutoff * cutoff
    return value, em_remainder(s, cutoff, order)


def _real_pow(x, exponent):
    """正实数 x 的复数次幂"""
    return complex(np.exp(exponent * math.log(x)))


def evaluate_integral(s, cfg=None, mode='auto'):
    """
    分数部分表示求值
    :param s: ZetaArgument
    :param mode: 'continuation' (0 < sigma < 1)、'series' (sigma > 1) 或 'auto'
    """
    cfg = cfg or EvalConfig()
    if mode == 'auto':
        mode = 'continuation' if s.sigma < 1 else 'series'
    if mode == 'continuation' and not 0 < s.sigma < 1:
        raise DomainError(
            'Continuation form needs 0 < sigma < 1, got {}'.format(s.sigma))
    if mode == 'series' and not s.sigma > 1:
        raise DomainError('Series form needs sigma > 1, got {}'.format(s.sigma))

    z = s.s
    cutoff = int(cfg.tail_cutoff)
    if cutoff < 2:
        raise InvalidParameter('tail_cutoff must be at least 2')
    # 两种形式的首项都化为 1 + 1/(s-1)：连续化形式来自 int_0^1 u^(-s) du = 1/(1-s)，
    # 级数形式来自 int_1^inf u^(-s) du = 1/(s-1)
    head = 1.0 + 1.0 / (z - 1.0)

    def integrand(u):
        return (u - np.floor(u)) * (-z) * np.exp(-(z + 1.0) * np.log(u))

    starts = np.arange(1, cutoff, dtype=float)
    counts = np.ceil(abs(s.t) / (2.0 * starts)).astype(np.int64) + 1
    lo, hi, owner = split_panels(starts, starts + 1.0, counts)
    values, quad_error = integrate_panels(
        integrand, lo, hi, cfg.quad_tolerance, owner=np.zeros_like(owner),
        n_owners=1)
    tail, tail_error = _sawtooth_tail(z, float(cutoff), cfg.em_correction_order)
    error = quad_error + tail_error
    if error > 100 * cfg.quad_tolerance:
        raise QuadratureError(
            'Tolerance {} unreachable at cutoff {} (error {})'.format(
                cfg.quad_tolerance, cutoff, error))
    return Evaluation(ComplexValue.from_complex(head + values[0] + tail), error)


def zeta_integral_repr(s, cfg=None, mode='auto'):
    """分数部分表示"""
    return evaluate_integral(s, cfg, mode).value


def hardy_z(t, cfg=None):
    """
    Z(t) = exp(i theta(t)) zeta(1/2 + i t)，实值，零点处变号
    """
    theta = float(loggamma(0.25 + 0.5j * t).imag) - 0.5 * t * math.log(math.pi)
    value = complex(zeta_em(ZetaArgument(0.5, t), cfg))
    return (np.exp(1j * theta) * value).real


def _contour_integral(exponent, tolerance):
    """
    int_0^2 u^(-1/2) (1 + i log u)^(-exponent) du，在 y = log u 平面上
    沿 Im y = -c 的直线再加上 y = log 2 处的竖直线段积分
    """
    c = CONTOUR_SHIFT
    log2 = math.log(2.0)

    def horizontal(x):
        y = x - 1j * c
        return np.exp(0.5 * y) * pow_positive_base((1.0 + c) + 1j * x, -exponent)

    def vertical(s):
        y = log2 - 1j * s
        base = (1.0 + s) + 1j * log2
        return 1j * np.exp(0.5 * y) * pow_positive_base(base, -exponent)

    scale = math.sqrt(2.0) * (1.0 + log2 * log2) ** (-0.5 * exponent)
    panels = max(16, int(exponent))
    first, err1 = integrate(horizontal, CONTOUR_LEFT, log2, tolerance * scale,
                            panels=panels)
    second, err2 = integrate(vertical, 0.0, c, tolerance * scale, panels=8)
    return first + second, err1 + err2


def expected_zeta_evaluation(t, cfg=None):
    """
    E zeta(1/2 + i X_t) = 1 - int_0^2 u^(-1/2) (1 + i log u)^(-t) du（至多差指数小量）
    """
    if t < 10:
        raise InvalidParameter('expected_zeta needs t >= 10, got {}'.format(t))
    cfg = cfg or EvalConfig()
    integral, error = _contour_integral(t, cfg.quad_tolerance)
    return Evaluation(ComplexValue.from_complex(1.0 - integral), error)


def expected_zeta(t, cfg=None):
    return expected_zeta_evaluation(t, cfg).value


def expected_zeta_ibp(t, n_fold=3, cfg=None, boundary=True):
    """
    N 次分部积分后的形式
        1 - (-i/2)^N / ((t-1)...(t-N)) int_0^2 u^(-1/2) (1 + i log u)^(-t+N) du
    :param boundary: 是否计入 u = 2 处的边界项；计入时与 expected_zeta 恒等
    """
    if t < 10:
        raise InvalidParameter('expected_zeta needs t >= 10, got {}'.format(t))
    if n_fold < 0 or n_fold > t - 2:
        raise InvalidParameter('n_fold must lie in [0, t - 2]')
    cfg = cfg or EvalConfig()
    log2 = math.log(2.0)
    factor = 1.0 + 0j
    edge = 0j
    for k in range(n_fold):
        exponent = t - k
        if boundary:
            value = complex(pow_positive_base(1.0 + 1j * log2, 1.0 - exponent))
            edge += factor * math.sqrt(2.0) * value / (1j * (1.0 - exponent))
        factor *= -0.5j / (exponent - 1.0)
    integral, _ = _contour_integral(t - n_fold, cfg.quad_tolerance)
    return ComplexValue.from_complex(1.0 - edge - factor * integral)


def first_moment_tail(t, cfg=None, max_cutoff=100000):
    """
    int_2^inf {u} d/du (u^(-1/2) (1 + i log u)^(-t)) du
    = sum_{n>=2} [g(n+1) - int_n^{n+1} g]
    """
    cfg = cfg or EvalConfig()

    def g(u):
        return np.exp(-0.5 * np.log(u) - t * log_one_plus_iw(np.log(u)))

    def bound(u):
        return u ** -0.5 * (1.0 + math.log(u) ** 2) ** (-0.5 * t)

    cutoff = 4
    while bound(cutoff) * cutoff > 1e-3 * cfg.quad_tolerance and cutoff < max_cutoff:
        cutoff *= 2
    starts = np.arange(2, cutoff, dtype=float)
    integrals, error = integrate_panels(g, starts, starts + 1.0,
                                        cfg.quad_tolerance)
    value = complex(np.sum(g(starts + 1.0) - integrals))
    log.debug('first_moment_tail: t={} cutoff={} error={}'.format(t, cutoff, error))
    return ComplexValue.from_complex(value)

