"""
指数和工具：直接求和、振荡积分，以及三种 van der Corput 变换
（把 sum_{a<n<b} g(n) e(f(n)) 换成若干个平移后的振荡积分）和它们误差界的经验检验。

e(x) 表示 exp(2 pi i x)。
"""
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from zeta_sampler.complex_core import ComplexValue
from zeta_sampler.config import Config
from zeta_sampler.exceptions import (
    IntervalTooLong, InvalidParameter, InvariantViolated)
from zeta_sampler.log import log
from zeta_sampler.quadrature import integrate_panels, split_panels

EPS = np.finfo(float).eps
CHECK_POINTS = 1000             # 检查 f'' 符号的采样点数
VARIATION_POINTS = 8193         # 计算 G 时的网格点数
DIRECT_CHUNK = 1 << 20


def _step(x):
    return np.maximum(1e-5, 1e-8 * np.abs(x))


class Phase:
    """
    相位函数 f 及其一阶、二阶导数；未给出的导数用中心差分代替
    """

    def __init__(self, value, derivative=None, second=None):
        self.value = value
        self._derivative = derivative
        self._second = second

    def __call__(self, x):
        return self.value(np.asarray(x, dtype=float))

    def derivative(self, x):
        x = np.asarray(x, dtype=float)
        if self._derivative is not None:
            return self._derivative(x)
        h = _step(x)
        return (self.value(x + h) - self.value(x - h)) / (2 * h)

    def second(self, x):
        """
        :return: (f''(x), 舍入噪声水平)
        """
        x = np.asarray(x, dtype=float)
        if self._second is not None:
            return self._second(x), np.zeros_like(x)
        h = _step(x)
        centre = self.value(x)
        value = (self.value(x + h) - 2 * centre + self.value(x - h)) / (h * h)
        noise = 8 * EPS * (np.abs(centre) + 1.0) / (h * h)
        return value, noise


@dataclass(frozen=True)
class ExpSumSpec:
    phase: Phase
    amplitude: object           # 向量化的实函数 g
    a: float
    b: float
    name: str = 'custom'
    settings: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.b > self.a:
            raise InvalidParameter(
                'Interval needs b > a, got [{}, {}]'.format(self.a, self.b))

    def integers(self):
        """严格位于 (a, b) 内的整数范围"""
        first = math.floor(self.a) + 1
        last = math.ceil(self.b) - 1
        return first, last


@dataclass(frozen=True)
class VdCParams:
    alpha: float
    beta: float
    epsilon: float = 0.5
    theta: float = 0.5
    eta: float = 2.0
    G: float = 0.0
    G1: float = 0.0
    G2: float = 0.0

    def __post_init__(self):
        if self.alpha > self.beta:
            raise InvalidParameter('VdCParams needs alpha <= beta')
        if not 0 < self.epsilon <= 1:
            raise InvalidParameter('epsilon must lie in (0, 1]')
        if not 0 < self.theta < 1:
            raise InvalidParameter('theta must lie in (0, 1)')

    @classmethod
    def for_spec(cls, spec, epsilon=0.5, theta=0.5, eta=2.0):
        """
        由 spec 推导 alpha、beta（f' 的范围）以及 G、G1、G2
        """
        grid = np.linspace(spec.a, spec.b, CHECK_POINTS)
        slopes = spec.phase.derivative(grid)
        variation = total_variation(spec.amplitude, spec.a, spec.b)
        g_b = abs(float(spec.amplitude(np.array([spec.b]))[0]))
        return cls(alpha=float(np.min(slopes)), beta=float(np.max(slopes)),
                   epsilon=epsilon, theta=theta, eta=eta,
                   G=g_b + variation, G1=g_b + variation,
                   G2=edge_maximum(spec.amplitude, spec.a, spec.b))

    def to_dict(self):
        return {'alpha': self.alpha, 'beta': self.beta,
                'epsilon': self.epsilon, 'theta': self.theta, 'eta': self.eta,
                'G': self.G, 'G1': self.G1, 'G2': self.G2}


class Transform(NamedTuple):
    value: ComplexValue
    term_count: int
    error_budget: float


def total_variation(g, a, b, points=VARIATION_POINTS):
    """int_a^b |g'| 的网格近似（对分段单调的 g 精确到网格分辨率）"""
    values = np.asarray(g(np.linspace(a, b, points)), dtype=float)
    return float(np.sum(np.abs(np.diff(values))))


def edge_maximum(g, a, b, points=257):
    """max |g| 在 [a, a+1] 和 [b-1, b] 上"""
    left = np.linspace(a, min(a + 1.0, b), points)
    right = np.linspace(max(b - 1.0, a), b, points)
    return float(np.max(np.abs(g(np.concatenate([left, right])))))


def exp_sum_direct(spec):
    """
    sum_{a<n<b} g(n) e(f(n))，相位先对 1 取模，补偿求和
    """
    if spec.b - spec.a > Config.MAX_DIRECT_TERMS:
        raise IntervalTooLong(
            'Direct sum over {} terms exceeds {}'.format(
                spec.b - spec.a, Config.MAX_DIRECT_TERMS))
    first, last = spec.integers()
    re_parts, im_parts = [], []
    for start in range(first, last + 1, DIRECT_CHUNK):
        n = np.arange(start, min(start + DIRECT_CHUNK, last + 1), dtype=float)
        phase = spec.phase(n)
        angle = 2 * math.pi * (phase - np.floor(phase))
        weight = np.asarray(spec.amplitude(n), dtype=float)
        re_parts.append(math.fsum((weight * np.cos(angle)).tolist()))
        im_parts.append(math.fsum((weight * np.sin(angle)).tolist()))
    return ComplexValue(math.fsum(re_parts), math.fsum(im_parts))


def _oscillation_panels(phase, a, b, m, segments=256):
    """面板宽度不超过局部波长 1/(|f' - m| + 1)"""
    edges = np.linspace(a, b, segments + 1)
    slope = np.abs(phase.derivative(edges) - m)
    local = np.maximum(slope[:-1], slope[1:]) + 1.0
    counts = np.ceil((edges[1:] - edges[:-1]) * local).astype(np.int64)
    return split_panels(edges[:-1], edges[1:], counts)


def oscillatory_integral(g, f, a, b, m=0, tol=None):
    """
    int_a^b g(x) e(f(x) - m x) dx
    :param g: 振幅函数
    :param f: Phase
    :param m: 整数平移
    :param tol: 绝对容差
    """
    tol = Config.QUAD_TOLERANCE if tol is None else tol
    if not tol > 0:
        raise InvalidParameter('tol must be positive')
    if not isinstance(f, Phase):
        f = Phase(f)

    def integrand(x):
        phase = f(x) - m * x
        return g(x) * np.exp(2j * math.pi * (phase - np.floor(phase)))

    lo, hi, owner = _oscillation_panels(f, a, b, m)
    values, _ = integrate_panels(integrand, lo, hi, tol,
                                 owner=np.zeros_like(owner), n_owners=1)
    return ComplexValue.from_complex(values[0])


def _shift_range(lower, upper):
    """严格位于 (lower, upper) 内的整数"""
    return range(math.floor(lower) + 1, math.ceil(upper))


def _check_convex(spec):
    grid = np.linspace(spec.a, spec.b, CHECK_POINTS)
    curvature, noise = spec.phase.second(grid)
    if not np.all(curvature > noise):
        raise InvariantViolated("Phase needs f'' > 0 on [a, b]")


def _transform_sum(spec, shifts, tol):
    total = 0j
    for m in shifts:
        total += complex(oscillatory_integral(
            spec.amplitude, spec.phase, spec.a, spec.b, m, tol))
    return total


def vdc_lemma21(spec, params, tol=None):
    """
    f'' > 0 时的变换：sum over alpha - eps < m < beta + eps
    :return: Transform(value, term_count, error_budget)，
             error_budget = G (1/eps + log(beta - alpha + 2))
    """
    _check_convex(spec)
    slopes = spec.phase.derivative(np.array([spec.a, spec.b]))
    if params.alpha > slopes[0] + 1e-12 or slopes[1] > params.beta + 1e-12:
        raise InvariantViolated("Need alpha <= f'(a) <= f'(b) <= beta")
    shifts = _shift_range(params.alpha - params.epsilon,
                          params.beta + params.epsilon)
    value = _transform_sum(spec, shifts, tol)
    budget = params.G * (1.0 / params.epsilon
                         + math.log(params.beta - params.alpha + 2.0))
    return Transform(ComplexValue.from_complex(value), len(shifts), budget)


def vdc_lemma22(spec, params, tol=None):
    """
    |f'| <= 1 - theta 且 f'' 不为零时，和近似为单个积分
    """
    grid = np.linspace(spec.a, spec.b, CHECK_POINTS)
    if np.any(np.abs(spec.phase.derivative(grid)) > 1.0 - params.theta + 1e-12):
        raise InvariantViolated("Phase needs |f'| <= 1 - theta")
    curvature, noise = spec.phase.second(grid)
    if not (np.all(curvature > noise) or np.all(curvature < -noise)):
        raise InvariantViolated("Phase needs f'' != 0 on [a, b]")
    return oscillatory_integral(spec.amplitude, spec.phase, spec.a, spec.b, 0, tol)


def lemma22_budget(params):
    return params.G / params.theta


def vdc_lemma23(spec, params, tol=None):
    """
    b - a > 2、eta > 1 的变体：sum over alpha - eta < m < beta + eta，
    误差 G1 (1/eta + log(1 + (beta - alpha)/eta)) + G2 (beta - alpha + eta)
    """
    if not spec.b - spec.a > 2:
        raise InvariantViolated('Interval needs b - a > 2')
    if not params.eta > 1:
        raise InvariantViolated('eta must exceed 1')
    _check_convex(spec)
    shifts = _shift_range(params.alpha - params.eta, params.beta + params.eta)
    value = _transform_sum(spec, shifts, tol)
    spread = params.beta - params.alpha
    budget = (params.G1 * (1.0 / params.eta + math.log1p(spread / params.eta))
              + params.G2 * (spread + params.eta))
    return Transform(ComplexValue.from_complex(value), len(shifts), budget)


@dataclass
class VdCCheck:
    lemma: str
    spec: ExpSumSpec
    params: VdCParams
    direct: ComplexValue
    transform: ComplexValue
    budget: float

    @property
    def deviation(self):
        return abs(complex(self.direct) - complex(self.transform))

    @property
    def ratio(self):
        return self.deviation / self.budget if self.budget > 0 else math.inf

    @property
    def passed(self):
        return self.ratio <= Config.VDC_CEILING

    def row(self):
        return {
            'family': self.spec.name, 'lemma': self.lemma,
            'a': self.spec.a, 'b': self.spec.b,
            'alpha': self.params.alpha, 'beta': self.params.beta,
            'direct_re': self.direct.re, 'direct_im': self.direct.im,
            'transform_re': self.transform.re, 'transform_im': self.transform.im,
            'budget': self.budget, 'ratio': self.ratio,
        }


def vdc_check(lemma, spec, params=None):
    """
    直接求和并与变换比较
    :param lemma: '21'、'22' 或 '23'
    """
    params = params or VdCParams.for_spec(spec)
    direct = exp_sum_direct(spec)
    if lemma == '21':
        result = vdc_lemma21(spec, params)
        transform, budget = result.value, result.error_budget
    elif lemma == '22':
        transform, budget = vdc_lemma22(spec, params), lemma22_budget(params)
    elif lemma == '23':
        result = vdc_lemma23(spec, params)
        transform, budget = result.value, result.error_budget
    else:
        raise InvalidParameter('Unknown lemma: {}'.format(lemma))
    check = VdCCheck(lemma, spec, params, direct, transform, budget)
    log.debug('vdc {} {}: ratio={:.4g}'.format(lemma, spec.name, check.ratio))
    return check


#
# 命名的测试族，family(name)(**settings) 返回 ExpSumSpec
#

FAMILIES = {}


def family(name):
    def decorator(builder):
        FAMILIES[name] = builder
        return builder
    return decorator


def build_family(name, **settings):
    try:
        builder = FAMILIES[name]
    except KeyError:
        raise InvalidParameter('Unknown family: {}'.format(name))
    return builder(**{k: v for k, v in settings.items() if v is not None})


def _inverse_sqrt(x):
    return 1.0 / np.sqrt(x)


def _ones(x):
    return np.ones_like(np.asarray(x, dtype=float))


def _quadratic(name, n, scale, amplitude):
    n = int(n)
    phase = Phase(lambda x: x * x / (scale * n),
                  lambda x: 2 * x / (scale * n),
                  lambda x: np.full_like(x, 2.0 / (scale * n)))
    return ExpSumSpec(phase, amplitude, 1.0, float(n), name, {'n': n})


@family('quadratic')
def quadratic(n=50, **_):
    """f(x) = x^2/(2n), g = 1，[1, n]"""
    return _quadratic('quadratic', n, 2.0, _ones)


@family('quadratic-sqrt')
def quadratic_sqrt(n=100, **_):
    return _quadratic('quadratic-sqrt', n, 2.0, _inverse_sqrt)


@family('half-slope')
def half_slope(n=200, **_):
    """f(x) = x^2/(4n)：f' <= 1/2"""
    return _quadratic('half-slope', n, 4.0, _ones)


@family('half-slope-sqrt')
def half_slope_sqrt(n=200, **_):
    return _quadratic('half-slope-sqrt', n, 4.0, _inverse_sqrt)


@family('linear')
def linear(n=100, slope=0.25, **_):
    """f(x) = slope x，f'' = 0"""
    phase = Phase(lambda x: slope * x, lambda x: np.full_like(x, slope),
                  lambda x: np.zeros_like(x))
    return ExpSumSpec(phase, _ones, 0.5, n + 0.5, 'linear',
                      {'n': n, 'slope': slope})


@family('log-window')
def log_window(t=1000.0, n=1000, **_):
    """
    f(x) = -(t/2 pi) log(x/n)，g(x) = x^(-1/2) exp(-(t/2) log^2(x/n))，
    x 位于 n exp(+-2 sqrt(log t / t)) 之间
    """
    t, n = float(t), float(n)
    width = 2 * math.sqrt(math.log(t) / t)
    c = t / (2 * math.pi)
    phase = Phase(lambda x: -c * np.log(x / n), lambda x: -c / x,
                  lambda x: c / (x * x))

    def amplitude(x):
        return np.exp(-0.5 * np.log(x) - 0.5 * t * np.log(x / n) ** 2)

    return ExpSumSpec(phase, amplitude, n * math.exp(-width), n * math.exp(width),
                      'log-window', {'t': t, 'n': n})


@family('band-row')
def band_row(t=1e4, k=3, delta=1.0, **_):
    """
    f(x) = (t/2 pi)((k-d)^2/(2(x+d)^2) - (k-d)/(x+d))，
    g(x) = (x+d)^(-1/2) (x+k)^(-1/2) exp(-t (k-d)^2/(x+d)^2)，
    x + d 位于 [sqrt(t log t), t) 内
    """
    t, k, d = float(t), float(k), float(delta)
    q = k - d
    if not q > 0:
        raise InvalidParameter('band-row needs k > delta')
    c = t / (2 * math.pi)

    def value(x):
        y = x + d
        return c * (q * q / (2 * y * y) - q / y)

    def derivative(x):
        y = x + d
        return c * (-q * q / y ** 3 + q / (y * y))

    def second(x):
        y = x + d
        return c * (3 * q * q / y ** 4 - 2 * q / y ** 3)

    def amplitude(x):
        y = x + d
        return np.exp(-0.5 * np.log(y) - 0.5 * np.log(x + k) - t * q * q / (y * y))

    a = math.sqrt(t * math.log(t)) - d
    return ExpSumSpec(Phase(value, derivative, second), amplitude, a, t - d,
                      'band-row', {'t': t, 'k': k, 'delta': d})


def vdc_corpus():
    """
    检验语料：(lemma, spec, params) 三元组，至少 20 组设置
    """
    corpus = []
    for n in (20, 50, 100, 200):
        for epsilon in (0.5, 1.0):
            spec = quadratic(n)
            corpus.append(('21', spec, VdCParams.for_spec(spec, epsilon=epsilon)))
        spec = quadratic_sqrt(n)
        corpus.append(('21', spec, VdCParams.for_spec(spec)))
    for n in (50, 200, 500):
        for theta in (0.5, 0.25):
            spec = half_slope(n)
            corpus.append(('22', spec, VdCParams.for_spec(spec, theta=theta)))
        spec = half_slope_sqrt(n)
        corpus.append(('22', spec, VdCParams.for_spec(spec)))
    for n, eta in ((50, 2.0), (100, 10.0), (200, 5.0)):
        spec = quadratic(n)
        corpus.append(('23', spec, VdCParams.for_spec(spec, eta=eta)))
    spec = log_window(1000.0, 1000)
    corpus.append(('23', spec, VdCParams.for_spec(spec, eta=math.log(1000.0))))
    for k in (2, 5):
        spec = band_row(1e4, k)
        corpus.append(('22', spec, VdCParams.for_spec(spec)))
    return corpus
