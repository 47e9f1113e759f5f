"""
二阶矩证明中间量的数值检验：

  - A1、A2、A3 三个积分，以及 A1 - 2 Re A2 + A3 与蒙特卡洛 E|zeta - 1|^2 的比较
  - 区域 R(t) 及其切片 R(n,t)、R+(n,t)、R+^delta(n,t)
  - 格点和 sum F~_{m,n} 与 sum G~_{m,n}，对角线恒等式
  - 带状和 S5、S1、S2

K_p(u/v) 表示 (1 + i log(u/v))^(-p)。
"""
import math
from dataclasses import dataclass

import numpy as np

from zeta_sampler.complex_core import (
    ComplexValue, compensated_sum, kernel_array, log_one_plus_iw,
    pow_positive_base)
from zeta_sampler.config import Config
from zeta_sampler.exceptions import InvalidParameter, QuadratureError, RegionTooLarge
from zeta_sampler.log import log
from zeta_sampler.moments import sample_zeta_values
from zeta_sampler.quadrature import (
    integrate, integrate_panels, integrate_squares, split_panels)
from zeta_sampler.workers import parallel_map
from zeta_sampler.zeta_eval import Evaluation

A_WHICH = ('1', '2-closed', '2-direct', '3', '3-correction')
VARIANTS = {'half-square': 0.5, 'as-printed': 1.0}
ROTATED_CUTOFF = 60.0           # A1 中 |d| 的截断点
INNER_CUTOFF = 80.0             # A2 内层积分的截断点
A3_ROWS_PER_BLOCK = 32
BAND_JOB_TERMS = 1 << 22


@dataclass(frozen=True)
class RegionSpec:
    t: float

    def __post_init__(self):
        if not self.t >= 3:
            raise InvalidParameter('RegionSpec needs t >= 3, got {}'.format(self.t))

    @property
    def u_max(self):
        return self.t ** 4

    @property
    def band_halfwidth(self):
        return 2 * math.sqrt(math.log(self.t) / self.t)

    def contains(self, u, v):
        u = np.asarray(u, dtype=float)
        v = np.asarray(v, dtype=float)
        inside = (u > 1) & (u < self.u_max) & (v > 1) & (v < self.u_max)
        with np.errstate(divide='ignore', invalid='ignore'):
            near = np.abs(np.log(u) - np.log(v)) < self.band_halfwidth
        return inside & near

    def _candidates(self, centre):
        w = self.band_halfwidth
        lo = max(1, int(math.floor(centre * math.exp(-w))) - 2)
        hi = int(math.ceil(centre * math.exp(w))) + 1
        return np.arange(lo, hi + 1)

    def row(self, n):
        """R(n,t)：|log((m+1)/(n+1))| < w"""
        m = self._candidates(n + 1)
        ratio = np.log(m + 1.0) - math.log(n + 1.0)
        return m[(np.abs(ratio) < self.band_halfwidth) & (m < self.u_max)]

    def plus_row(self, n):
        """R+(n,t)：0 < log((m+1)/(n+1)) < w"""
        m = self._candidates(n + 1)
        ratio = np.log(m + 1.0) - math.log(n + 1.0)
        return m[(ratio > 0) & (ratio < self.band_halfwidth)]

    def plus_delta_row(self, n, delta=1.0):
        """R+^delta(n,t)：1 < (m+1)/(n+delta) < 1 + w"""
        if not 0 < delta <= 1:
            raise InvalidParameter('delta must lie in (0, 1]')
        m = self._candidates(n + delta)
        ratio = (m + 1.0) / (n + delta)
        return m[(ratio > 1) & (ratio < 1 + self.band_halfwidth)]

    def to_dict(self):
        return {'t': self.t, 'u_max': self.u_max,
                'band_halfwidth': self.band_halfwidth}


@dataclass(frozen=True)
class DecompositionReport:
    t: float
    A1: ComplexValue
    A2: ComplexValue
    A3: ComplexValue
    combined: float
    combined_imag: float
    mc_reference: float
    mc_se: float
    quad_tol: float
    budget: float
    a2_direct: ComplexValue = None
    a3_correction: ComplexValue = None

    @property
    def deviation(self):
        return abs(self.combined - self.mc_reference)

    @property
    def passed(self):
        allowance = 3 * self.mc_se + self.budget + Config.O1_ALLOWANCE
        return self.deviation <= allowance

    def to_dict(self):
        return {
            't': self.t, 'A1': self.A1, 'A2': self.A2, 'A3': self.A3,
            'combined': self.combined, 'combined_imag': self.combined_imag,
            'mc_reference': self.mc_reference, 'mc_se': self.mc_se,
            'quad_tol': self.quad_tol, 'budget': self.budget,
            'a2_direct': self.a2_direct, 'a3_correction': self.a3_correction,
            'deviation': self.deviation, 'pass': self.passed,
        }


@dataclass(frozen=True)
class BandSumReport:
    t: float
    delta: float
    variant: str
    S5: ComplexValue
    S1: ComplexValue
    S2: ComplexValue
    terms: int = 0

    @property
    def s5_ratio(self):
        """|S5| / (sqrt(log t) log log t)"""
        log_t = math.log(self.t)
        return abs(self.S5) / (math.sqrt(log_t) * math.log(log_t))

    @property
    def s12_ratio(self):
        """(|S1| + |S2|) / log log t"""
        return (abs(self.S1) + abs(self.S2)) / math.log(math.log(self.t))

    @property
    def passed(self):
        return (self.s5_ratio <= Config.BAND_CEILING
                and self.s12_ratio <= Config.BAND_CEILING)

    def to_dict(self):
        return {'t': self.t, 'delta': self.delta, 'variant': self.variant,
                'S5': self.S5, 'S1': self.S1, 'S2': self.S2,
                'terms': self.terms, 's5_ratio': self.s5_ratio,
                's12_ratio': self.s12_ratio, 'pass': self.passed}


@dataclass(frozen=True)
class TailWindow:
    n_lo: int
    n_hi: int
    F: ComplexValue
    G: ComplexValue

    @property
    def difference(self):
        return abs(complex(self.F) - complex(self.G))

    def to_dict(self):
        return {'n_lo': self.n_lo, 'n_hi': self.n_hi, 'F': self.F, 'G': self.G,
                'difference': self.difference}


#
# A1, A2, A3
#

def _a1(t, tol):
    """
    在 d = log u - log v 坐标下 A1 = int e^(-|d|/2) (1 + i d)^(-t) dd
    """
    def integrand(d):
        return np.exp(-0.5 * np.abs(d)) * pow_positive_base(1.0 + 1j * d, -t)

    panels = max(16, int(t))
    left, err1 = integrate(integrand, -ROTATED_CUTOFF, 0.0, tol / 2, panels=panels)
    right, err2 = integrate(integrand, 0.0, ROTATED_CUTOFF, tol / 2, panels=panels)
    return left + right, err1 + err2


def _a2_cutoff(t, tol, limit=10 ** 7):
    """|{v} v^(-3/2) K| 在 [V, inf) 上的积分界小于 tol/10 的 V"""
    def tail(v):
        return 2 * v ** -0.5 * (1 + math.log(v) ** 2) ** (-0.5 * t)

    cutoff = 16
    while tail(cutoff) > tol / 10:
        cutoff *= 2
        if cutoff > limit:
            raise QuadratureError('A2 tail does not fall below {}'.format(tol))
    return cutoff


def _unit_panels(start, stop, t):
    starts = np.arange(start, stop, dtype=float)
    counts = np.ceil(t / (2 * starts)).astype(np.int64) + 1
    return split_panels(starts, starts + 1.0, counts)


def _a2_closed(t, tol):
    """A2 = -int_1^inf {v} v^(-3/2) (1 - i log v)^(-t) dv"""
    def integrand(v):
        lv = np.log(v)
        return -(v - np.floor(v)) * np.exp(-1.5 * lv - t * log_one_plus_iw(-lv))

    cutoff = _a2_cutoff(t, tol)
    lo, hi, owner = _unit_panels(1, cutoff, t)
    values, error = integrate_panels(integrand, lo, hi, tol,
                                     owner=np.zeros_like(owner), n_owners=1)
    return complex(values[0]), error + tol / 10


def _inner_h(v, t, tol):
    """
    h(v) = v^(-1/2) int_0^1 u^(-1/2) K_t(u/v) du
         = v^(-1/2) int_0^inf e^(-a/2) (1 - i(a + log v))^(-t) da
    """
    shape = np.shape(v)
    v = np.asarray(v, dtype=float).ravel()
    edges = np.concatenate([np.linspace(0.0, 4.0, int(math.ceil(2 * t)) + 1),
                            np.linspace(4.0, INNER_CUTOFF, int(t // 2) + 9)[1:]])
    k = edges.size - 1
    lo = np.tile(edges[:-1], v.size)
    hi = np.tile(edges[1:], v.size)
    owner = np.repeat(np.arange(v.size), k)
    params = np.repeat(np.log(v), k)

    def integrand(a, log_v):
        return np.exp(-0.5 * a - t * log_one_plus_iw(-(a + log_v)))

    values, _ = integrate_panels(integrand, lo, hi, tol, owner=owner,
                                 n_owners=v.size, params=params)
    return (values * v ** -0.5).reshape(shape)


def _a2_direct(t, tol):
    """
    A2 = int_1^inf {v} h'(v) dv = sum_n [h(n+1) - int_n^{n+1} h]，h 由内层积分直接求得
    """
    cutoff = _a2_cutoff(t, tol)
    lo, hi, owner = _unit_panels(1, cutoff, t)
    integrals, error = integrate_panels(
        lambda v: _inner_h(v, t, tol), lo, hi, tol,
        owner=np.zeros_like(owner), n_owners=1)
    ends = _inner_h(np.arange(2, cutoff + 1, dtype=float), t, tol)
    return compensated_sum(ends) - complex(integrals[0]), error + tol / 10


def _lattice_squares(t, n_lo, n_hi, n_max):
    """
    与 R(t) 相交的单位格子 [m, m+1] x [n, n+1]，n_lo <= n < n_hi 且 m < n_max，
    再按振荡把每个格子细分为 s x s 块
    """
    w = 2 * math.sqrt(math.log(t) / t)
    n = np.arange(n_lo, n_hi)
    m_lo = np.maximum(1, np.floor(n * math.exp(-w))).astype(np.int64)
    m_hi = np.minimum(np.ceil((n + 1) * math.exp(w)) - 1, n_max - 1).astype(np.int64)
    counts = np.maximum(m_hi - m_lo + 1, 0)
    rows = np.repeat(n, counts)
    starts = np.cumsum(counts) - counts
    cols = m_lo[np.repeat(np.arange(n.size), counts)] + (
        np.arange(rows.size) - np.repeat(starts, counts))
    s = np.minimum(np.ceil(t / np.minimum(rows, cols)).astype(np.int64) + 1, 64)
    square = np.repeat(np.arange(rows.size), s * s)
    local = np.arange(square.size) - np.repeat(np.cumsum(s * s) - s * s, s * s)
    size = s[square]
    width = 1.0 / size
    x_lo = cols[square] + (local % size) * width
    y_lo = rows[square] + (local // size) * width
    return x_lo, x_lo + width, y_lo, y_lo + width


def _a3_block(job):
    """行块 [n_lo, n_hi) 上 factor * int {u}{v}(uv)^(-3/2) K_{t+p}(u/v)"""
    t, n_lo, n_hi, n_max, tol, p, factor = job

    def integrand(u, v):
        weight = (u - np.floor(u)) * (v - np.floor(v)) * np.exp(
            -1.5 * (np.log(u) + np.log(v)))
        return factor * weight * kernel_array(u, v, t, p)

    x_lo, x_hi, y_lo, y_hi = _lattice_squares(t, n_lo, n_hi, n_max)
    return integrate_squares(integrand, x_lo, x_hi, y_lo, y_hi, tol)


def _a3(t, tol, correction=False, workers=None):
    """
    A3 ~ t(t+1) int_R {u}{v}(uv)^(-3/2) K_{t+2}，u, v < min(t^4, 4t)；
    correction=True 时给出被省略的 (1/4) int_R {u}{v}(uv)^(-3/2) K_t
    """
    n_max = int(min(t ** 4, 4 * t))
    blocks = [(n, min(n + A3_ROWS_PER_BLOCK, n_max))
              for n in range(1, n_max, A3_ROWS_PER_BLOCK)]
    p, factor = (0, 0.25) if correction else (2, t * (t + 1))
    jobs = [(t, lo, hi, n_max, tol / len(blocks), p, factor) for lo, hi in blocks]
    results = parallel_map(_a3_block, jobs, workers)
    return compensated_sum([value for value, _ in results]), sum(
        err for _, err in results)


def evaluate_A(t, which, tol=1e-8, workers=None):
    """
    :param which: '1'、'2-closed'、'2-direct'、'3' 或 '3-correction'
    :return: Evaluation(value, error)
    """
    if which not in A_WHICH:
        raise InvalidParameter('Unknown A component: {}'.format(which))
    if not tol > 0:
        raise InvalidParameter('tol must be positive')
    if which in ('1', '3', '3-correction') and not 10 <= t <= 1000:
        raise InvalidParameter('A{} needs 10 <= t <= 1000, got {}'.format(which, t))
    if not t > 1:
        raise InvalidParameter('A2 needs t > 1, got {}'.format(t))
    if which == '1':
        value, error = _a1(t, tol)
    elif which == '2-closed':
        value, error = _a2_closed(t, tol)
    elif which == '2-direct':
        value, error = _a2_direct(t, tol)
    else:
        value, error = _a3(t, tol, which == '3-correction', workers)
    log.debug('A{} at t={}: {} (error {:.3g})'.format(which, t, value, error))
    return Evaluation(ComplexValue.from_complex(value), error)


def compute_A(t, which, tol=1e-8, workers=None):
    return evaluate_A(t, which, tol, workers).value


def mc_reference(t, samples, seed, workers=None):
    """E |zeta(1/2 + i X_t) - 1|^2 的蒙特卡洛估计及标准误"""
    _, values = sample_zeta_values(t, samples, seed, workers)
    squares = np.abs(values - 1.0) ** 2
    return float(squares.mean()), float(squares.std(ddof=1)) / math.sqrt(squares.size)


def compute_decomposition(t, tol=1e-8, samples=10000, seed=None, workers=None,
                          direct=True):
    """
    A1 - 2 Re A2 + A3 及其蒙特卡洛对照
    """
    seed = Config.DEFAULT_SEED if seed is None else seed
    a1 = evaluate_A(t, '1', tol)
    a2 = evaluate_A(t, '2-closed', tol)
    a3 = evaluate_A(t, '3', tol, workers)
    correction = evaluate_A(t, '3-correction', tol, workers)
    a2_direct = evaluate_A(t, '2-direct', tol).value if direct else None
    combined = complex(a1.value) - 2 * a2.value.re + complex(a3.value)
    reference, se = mc_reference(t, samples, seed, workers)
    report = DecompositionReport(
        t=float(t), A1=a1.value, A2=a2.value, A3=a3.value,
        combined=combined.real, combined_imag=combined.imag,
        mc_reference=reference, mc_se=se, quad_tol=tol,
        budget=a1.error + 2 * a2.error + a3.error,
        a2_direct=a2_direct, a3_correction=correction.value)
    log.info('Decomposition at t={}: combined={:.6f} mc={:.6f} +- {:.6f}'.format(
        t, report.combined, reference, se))
    return report


#
# F~ 与 G~ 格点和
#

def F_tilde(m, n, t):
    """
    F~_{m,n}(t) = ((m+1)(n+1))^(-1/2) exp(-t(i L + L^2/2))，L = log((m+1)/(n+1))
    """
    m = np.asarray(m, dtype=float)
    n = np.asarray(n, dtype=float)
    ratio = np.log(m + 1) - np.log(n + 1)
    return np.exp(-t * (1j * ratio + 0.5 * ratio * ratio)) / np.sqrt((m + 1) * (n + 1))


def G_tilde(m, n, t, tol=1e-10):
    """
    G~_{m,n}(t) = (m+1)^(-1/2) int_n^{n+1} v^(-1/2) exp(-t(i L + L^2/2)) dv，
    L = log((m+1)/v)
    """
    m = np.atleast_1d(np.asarray(m, dtype=float))
    n = np.atleast_1d(np.asarray(n, dtype=float))
    m, n = np.broadcast_arrays(m, n)
    counts = np.ceil(t / (2 * n)).astype(np.int64) + 1
    lo, hi, owner = split_panels(n, n + 1.0, counts)
    params = np.log(m + 1.0)[owner]

    def integrand(v, log_m):
        ratio = log_m - np.log(v)
        return np.exp(-0.5 * (np.log(v) + log_m)
                      - t * (1j * ratio + 0.5 * ratio * ratio))

    values, _ = integrate_panels(integrand, lo, hi, tol, owner=owner,
                                 n_owners=m.size, params=params)
    return values


def _row_pairs(region, rows):
    ms, ns = [], []
    for n in rows:
        m = region.row(n)
        ms.append(m)
        ns.append(np.full(m.size, n))
    if not ms:
        return np.zeros(0), np.zeros(0)
    return np.concatenate(ms), np.concatenate(ns)


def sum_F_G(t, region=None, which='F', rows=None, tol=1e-10):
    """
    R(t) 中给定行 n 上的 sum F~_{m,n} 或 sum G~_{m,n}
    :param rows: 行 n 的序列，默认 1 <= n <= t
    """
    if which not in ('F', 'G'):
        raise InvalidParameter('which must be F or G')
    if t > 1e4:
        raise RegionTooLarge('Lattice enumeration needs t <= 1e4, got {}'.format(t))
    region = region or RegionSpec(t)
    rows = range(1, int(t) + 1) if rows is None else rows
    m, n = _row_pairs(region, rows)
    if m.size > Config.MAX_LATTICE_PAIRS:
        raise RegionTooLarge('{} lattice pairs exceed {}'.format(
            m.size, Config.MAX_LATTICE_PAIRS))
    if m.size == 0:
        return ComplexValue(0.0, 0.0)
    values = F_tilde(m, n, t) if which == 'F' else G_tilde(m, n, t, tol)
    # 每行先求和，行间补偿求和
    boundaries = np.flatnonzero(np.diff(n)) + 1
    row_sums = [chunk.sum() for chunk in np.split(values, boundaries)]
    return ComplexValue.from_complex(compensated_sum(row_sums))


def tail_windows(t, windows=10, rows_per_window=8, cap=1e5, tol=1e-10):
    """
    在 t < n < min(t^4, cap) 上按几何网格取若干行窗口，比较 sum F~ 与 sum G~
    """
    top = min(t ** 4, cap) - rows_per_window
    if top <= t + 1:
        raise InvalidParameter('No room for tail windows below {}'.format(cap))
    starts = np.unique(np.geomspace(t + 1, top, windows).astype(np.int64))
    region = RegionSpec(t)
    result = []
    for start in starts:
        rows = range(int(start), int(start) + rows_per_window)
        result.append(TailWindow(
            n_lo=rows.start, n_hi=rows.stop - 1,
            F=sum_F_G(t, region, 'F', rows, tol),
            G=sum_F_G(t, region, 'G', rows, tol)))
    return result


def diagonal_F_sum(t):
    """sum_{1<=n<=t} F~_{n,n}(t) = sum 1/(n+1)"""
    n = np.arange(1, int(t) + 1)
    return ComplexValue.from_complex(compensated_sum(F_tilde(n, n, t)))


def diagonal_G_sum(t, tol=1e-10):
    """
    sum_{1<=n<=t} int_1^{1+1/n} v^(-3/2) exp(-t(i log v + log^2 v / 2)) dv，
    用累积积分 H(x) = int_1^x 在端点 1 + 1/n 处求值
    """
    if not 1 <= t <= 1e6:
        raise InvalidParameter('diagonal_G_sum needs 1 <= t <= 1e6, got {}'.format(t))
    count = int(t)
    clip = math.exp(math.sqrt(80.0 / t))
    # 端点按升序排列：n = count, count-1, ..., 1
    ends = np.minimum(1.0 + 1.0 / np.arange(count, 0, -1), clip)
    starts = np.concatenate([[1.0], ends[:-1]])

    def integrand(v):
        lv = np.log(v)
        return np.exp(-1.5 * lv - t * (1j * lv + 0.5 * lv * lv))

    counts = np.ceil(t * (np.log(ends) - np.log(starts)) / 2).astype(np.int64) + 1
    lo, hi, owner = split_panels(starts, ends, counts)
    pieces, _ = integrate_panels(integrand, lo, hi, tol, owner=owner,
                                 n_owners=count)
    return ComplexValue.from_complex(compensated_sum(np.cumsum(pieces)))


#
# S5、S1、S2
#

def _band_terms(t, delta, c, k, n):
    """g_k^t(n) e(f_k^t(n)) 在 k、n 的外积网格上"""
    k = np.asarray(k, dtype=float)[:, None]
    n = np.asarray(n, dtype=float)[None, :]
    y = n + delta
    q = k - delta
    phase = (t / (2 * math.pi)) * (q * q / (2 * y * y) - q / y)
    amplitude = np.exp(-0.5 * np.log(y) - 0.5 * np.log(n + k) - c * t * q * q / (y * y))
    return amplitude * np.exp(2j * math.pi * (phase - np.floor(phase)))


def _band_job(job):
    """一组矩形 (k_lo, k_hi, n_lo, n_hi)，每个矩形求和"""
    t, delta, c, rectangles = job
    sums = []
    for k_lo, k_hi, n_lo, n_hi in rectangles:
        if k_hi < k_lo or n_hi < n_lo:
            continue
        terms = _band_terms(t, delta, c, np.arange(k_lo, k_hi + 1),
                            np.arange(n_lo, n_hi + 1))
        sums.append(complex(terms.sum()))
    return sums


def _open_range(lower, upper):
    """严格位于 (lower, upper) 内的整数"""
    return int(math.floor(lower)) + 1, int(math.ceil(upper)) - 1


def _half_open_range(lower, upper):
    """位于 [lower, upper) 内的整数"""
    return int(math.ceil(lower)), int(math.ceil(upper)) - 1


def band_rectangles(t, delta):
    """
    S5、S1、S2 的求和范围，每个矩形的 k 或 n 只有一个取值
    :return: {'S5': [...], 'S1': [...], 'S2': [...]}
    """
    log_t = math.log(t)
    r = math.sqrt(log_t / t)
    root = math.sqrt(t * log_t)
    k_first = int(math.floor(delta)) + 1                # k - delta > 0

    s5 = []
    n_lo, n_hi = _open_range(0.5 * math.sqrt(t / log_t) - delta, root - delta)
    for n in range(max(n_lo, 1), n_hi + 1):
        k_hi = int(math.floor(delta + 2 * (n + delta) * r))
        s5.append((k_first, k_hi, n, n))

    s1 = []
    n_lo, n_hi = _half_open_range(root - delta, t - delta)   # n + delta >= root
    for k in range(k_first, int(math.floor(delta + 2 * log_t)) + 1):
        s1.append((k, k, max(n_lo, 1), n_hi))

    s2 = []
    k_lo, k_hi = _open_range(2 * log_t + delta, 2 * root + delta)
    for k in range(max(k_lo, k_first), k_hi + 1):
        lower, upper = _open_range(0.5 * math.sqrt(t / log_t) * (k - delta) - delta,
                                   t - delta)
        s2.append((k, k, max(lower, 1), upper))
    return {'S5': s5, 'S1': s1, 'S2': s2}


def _batch(rectangles, limit=BAND_JOB_TERMS):
    jobs, current, size = [], [], 0
    for rect in rectangles:
        terms = max(rect[1] - rect[0] + 1, 0) * max(rect[3] - rect[2] + 1, 0)
        if current and size + terms > limit:
            jobs.append(current)
            current, size = [], 0
        current.append(rect)
        size += terms
    if current:
        jobs.append(current)
    return jobs


def band_sums(t, delta=1.0, variant='half-square', workers=None):
    """
    :param delta: (0, 1] 内的平移
    :param variant: 'half-square' 使用 exp(-(t/2)(k-d)^2/(n+d)^2)，
                    'as-printed' 使用 exp(-t(k-d)^2/(n+d)^2)
    :return: BandSumReport
    """
    if not 0 < delta <= 1:
        raise InvalidParameter('delta must lie in (0, 1], got {}'.format(delta))
    if variant not in VARIANTS:
        raise InvalidParameter('Unknown variant: {}'.format(variant))
    if not 16 <= t <= 1e6:
        raise InvalidParameter('band_sums needs 16 <= t <= 1e6, got {}'.format(t))
    c = VARIANTS[variant]
    totals = {}
    count = 0
    for name, rectangles in band_rectangles(t, delta).items():
        count += sum(max(r[1] - r[0] + 1, 0) * max(r[3] - r[2] + 1, 0)
                     for r in rectangles)
        jobs = [(t, delta, c, batch) for batch in _batch(rectangles)]
        sums = [s for part in parallel_map(_band_job, jobs, workers) for s in part]
        totals[name] = ComplexValue.from_complex(compensated_sum(sums))
    report = BandSumReport(t=float(t), delta=float(delta), variant=variant,
                           terms=count, **totals)
    log.info('Band sums at t={} delta={} ({}): S5 ratio {:.3f}, S1+S2 ratio {:.3f}'
             .format(t, delta, variant, report.s5_ratio, report.s12_ratio))
    return report
