"""
参数 a = b = 1 的 gamma 过程 X_t：密度、矩、特征函数和可复现的批量采样。

采样使用 Marsaglia-Tsang 挤压/拒绝法；形状参数小于 1 时先把形状加 1，
再乘以 U^(1/t)。样本按固定大小的块生成，第 j 块的随机流由
SeedSequence(seed, spawn_key=(j,)) 派生，因此结果只取决于 (t, count, seed)。
"""
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from zeta_sampler.complex_core import ComplexValue, log_one_plus_iw, stable_pow
from zeta_sampler.config import Config
from zeta_sampler.exceptions import DomainError, EmptyBatch, InvalidParameter
from zeta_sampler.workers import parallel_map

TINY = np.finfo(float).tiny


@dataclass(frozen=True)
class GammaParams:
    t: float

    def __post_init__(self):
        if not (self.t > 0 and math.isfinite(self.t)):
            raise InvalidParameter('Gamma process needs t > 0, got {}'.format(self.t))


@dataclass
class SampleBatch:
    t: float
    seed: int
    values: np.ndarray

    def __len__(self):
        return int(self.values.size)

    def rows(self):
        """(index, value) 行，用于 CSV 导出"""
        return [(i, float(x)) for i, x in enumerate(self.values)]


def gamma_density(x, params):
    """
    1_{(0,inf)}(x) x^(t-1) e^(-x) / Gamma(t)，按对数形式计算以免大 t 时上溢
    """
    x = np.asarray(x, dtype=float)
    t = params.t
    positive = x > 0
    safe = np.where(positive, x, 1.0)
    logs = (t - 1.0) * np.log(safe) - safe - gammaln(t)
    out = np.where(positive, np.exp(logs), 0.0)
    return float(out) if out.ndim == 0 else out


def gamma_mean_variance(params):
    """均值和方差都等于 t"""
    return params.t, params.t


def _marsaglia_tsang(rng, shape, size):
    """
    shape >= 1 的标准 gamma 变量，向量化的拒绝循环
    """
    d = shape - 1.0 / 3.0
    c = 1.0 / math.sqrt(9.0 * d)
    out = np.empty(size)
    pending = np.arange(size)
    while pending.size:
        x = rng.standard_normal(pending.size)
        u = rng.random(pending.size)
        v = 1.0 + c * x
        positive = v > 0
        v = np.where(positive, v, 1.0) ** 3
        x2 = x * x
        squeeze = u < 1.0 - 0.0331 * x2 * x2
        with np.errstate(divide='ignore'):
            full = np.log(u) < 0.5 * x2 + d * (1.0 - v + np.log(v))
        accept = positive & (squeeze | full)
        out[pending[accept]] = d * v[accept]
        pending = pending[~accept]
    return out


def _sample_block(job):
    """
    生成第 block 块的全部样本
    :param job: (t, seed, block, block_size)
    """
    t, seed, block, block_size = job
    sequence = np.random.SeedSequence(entropy=int(seed) & (2 ** 64 - 1),
                                      spawn_key=(int(block),))
    rng = np.random.Generator(np.random.Philox(sequence))
    if t >= 1:
        return _marsaglia_tsang(rng, t, block_size)
    # 形状加 1，再乘以 U^(1/t)
    boosted = _marsaglia_tsang(rng, t + 1.0, block_size)
    u = rng.random(block_size)
    with np.errstate(divide='ignore'):
        values = np.exp(np.log(boosted) + np.log(u) / t)
    return np.maximum(values, TINY)


def sample_batch(params, count, seed, workers=None):
    """
    独立同分布的 gamma(t, 1) 样本
    :param params: GammaParams
    :param count: 样本数
    :param seed: 64 位整数种子
    :param workers: 进程数，不影响结果
    """
    if count < 1:
        raise EmptyBatch('sample_batch needs count >= 1, got {}'.format(count))
    block_size = int(Config.SAMPLE_BLOCK)
    n_blocks = -(-int(count) // block_size)
    jobs = [(params.t, seed, j, block_size) for j in range(n_blocks)]
    blocks = parallel_map(_sample_block, jobs, workers)
    values = np.concatenate(blocks)[:count]
    return SampleBatch(t=params.t, seed=int(seed), values=values)


def char_fn(u, params):
    """特征函数 E exp(i u X_t) = (1 - i u)^(-t)"""
    return stable_pow(complex(1.0, -u), -params.t)


def empirical_char_fn(batch, u):
    """(1/N) sum_j exp(i u x_j)"""
    if len(batch) == 0:
        raise EmptyBatch('Empirical characteristic function of an empty batch')
    phase = u * batch.values
    return ComplexValue(float(np.mean(np.cos(phase))),
                        float(np.mean(np.sin(phase))))


def log_moment_fn(u, params):
    """E u^(-i X_t) = (1 + i log u)^(-t)"""
    if not u > 0:
        raise DomainError('log_moment_fn needs u > 0, got {}'.format(u))
    return stable_pow(complex(1.0, math.log(u)), -params.t)


def log_moment_array(u, t):
    """log_moment_fn 的数组版本"""
    return np.exp(-t * log_one_plus_iw(np.log(u)))
