"""
数值稳定的复数核函数：主值对数、实指数幂，以及振荡核 (1 + i log(u/v))^(-t-p)。

所有底数实部为正的幂都走 log(re) + log(1 + i w) 的稳定路径，
小 |w| 时用级数展开，避免 log|1 + i w| 的抵消误差。
"""
import cmath
import math
from dataclasses import dataclass

import numpy as np

from zeta_sampler.exceptions import DomainError, InvalidParameter, KernelOverflow

SMALL_W = 1e-4                  # 小参数阈值，低于此值使用级数
MAX_EXP = 709.78                # exp 上溢阈值


@dataclass(frozen=True)
class ComplexValue:
    re: float
    im: float

    def __post_init__(self):
        if not (math.isfinite(self.re) and math.isfinite(self.im)):
            raise DomainError(
                'Non-finite complex value ({}, {})'.format(self.re, self.im))

    @classmethod
    def from_complex(cls, z):
        z = complex(z)
        return cls(z.real, z.imag)

    def __complex__(self):
        return complex(self.re, self.im)

    def __abs__(self):
        return math.hypot(self.re, self.im)

    def conjugate(self):
        return ComplexValue(self.re, -self.im)

    def to_dict(self):
        return {'re': self.re, 'im': self.im}


@dataclass(frozen=True)
class KernelArgs:
    u: float
    v: float
    t: float
    p: int = 0

    def __post_init__(self):
        if not (self.u > 0 and self.v > 0):
            raise DomainError('Kernel needs u > 0 and v > 0')
        if not self.t >= 1:
            raise InvalidParameter('Kernel needs t >= 1, got {}'.format(self.t))
        if int(self.p) != self.p or self.p < 0:
            raise InvalidParameter('Kernel offset p must be a non-negative integer')


def _as_complex(z):
    if isinstance(z, ComplexValue):
        return complex(z)
    return complex(z)


def log_one_plus_iw(w):
    """
    log(1 + i w)，w 为实数（标量或数组）
    |w| < 1e-4 时使用级数 w^2/2 - w^4/4 + w^6/6 和 w - w^3/3 + w^5/5 - w^7/7
    """
    w = np.asarray(w, dtype=float)
    w2 = w * w
    small = np.abs(w) < SMALL_W
    re = np.where(small, w2 * (0.5 - w2 * (0.25 - w2 / 6.0)),
                  0.5 * np.log1p(w2))
    im = np.where(small, w * (1.0 - w2 * (1.0 / 3.0 - w2 * (0.2 - w2 / 7.0))),
                  np.arctan(w))
    return re + 1j * im


def log_positive_base(base):
    """
    实部为正的复数底数的主值对数，数组版本
    """
    base = np.asarray(base, dtype=complex)
    if np.any(base.real <= 0):
        raise DomainError('Stable path needs a base with positive real part')
    return np.log(base.real) + log_one_plus_iw(base.imag / base.real)


def pow_positive_base(base, exponent):
    """
    base ** exponent，base 实部为正（数组版本，exponent 可为标量或数组）
    """
    logs = np.asarray(exponent) * log_positive_base(base)
    if np.any(logs.real > MAX_EXP):
        raise KernelOverflow('Overflow in complex power')
    return np.exp(logs)


def principal_log(z):
    """
    主值对数 log|z| + i arg(z)，arg 取值 (-pi, pi]
    """
    z = _as_complex(z)
    if z == 0:
        raise DomainError('Logarithm of zero')
    arg = math.atan2(z.imag, z.real)
    if arg == -math.pi:
        arg = math.pi       # 分支切割的约定
    if z.real > 0:
        re = math.log(z.real) + float(log_one_plus_iw(z.imag / z.real).real)
    else:
        re = math.log(math.hypot(z.real, z.imag))
    return ComplexValue(re, arg)


def stable_pow(base, exponent):
    """
    exp(exponent * principal_log(base))
    :param base: 底数，不可为 0
    :param exponent: 实指数
    """
    b = _as_complex(base)
    if b == 0:
        raise DomainError('Power of zero base')
    if b.real > 0:
        log_b = math.log(b.real) + complex(log_one_plus_iw(b.imag / b.real))
    else:
        log_b = complex(principal_log(b))
    modulus_log = exponent * log_b.real
    if modulus_log > MAX_EXP:
        raise KernelOverflow(
            'exp overflow in stable_pow: log-modulus {}'.format(modulus_log))
    phase = exponent * log_b.imag
    modulus = math.exp(modulus_log)
    return ComplexValue(modulus * math.cos(phase), modulus * math.sin(phase))


def kernel(args):
    """
    (1 + i log(u/v))^(-t-p)，log(u/v) 按 log u - log v 计算
    """
    w = math.log(args.u) - math.log(args.v)
    return stable_pow(complex(1.0, w), -(args.t + args.p))


def kernel_array(u, v, t, p=0):
    """kernel 的数组版本"""
    w = np.log(u) - np.log(v)
    return np.exp(-(t + p) * log_one_plus_iw(w))


def _log1p_minus_quadratic(z):
    """
    log(1 + z) - z + z^2/2，小 |z| 时用级数避免抵消
    """
    if abs(z) < 0.1:
        total = 0j
        power = z * z
        for k in range(3, 40):
            power = power * z
            term = power / k if k % 2 else -power / k
            total += term
            if abs(term) < 1e-18 * max(abs(total), 1e-300):
                break
        return total
    return cmath.log(1 + z) - z + z * z / 2


def taylor_kernel(z, t):
    """
    (1 + z)^(-t) 的近似 exp(-t(z - z^2/2))
    """
    z = _as_complex(z)
    if not abs(z) < 1:
        raise DomainError('taylor_kernel needs |z| < 1')
    value = cmath.exp(-t * (z - z * z / 2))
    return ComplexValue.from_complex(value)


def taylor_deviation(z, t):
    """
    |(1+z)^(-t) - exp(-t(z - z^2/2))| / |(1+z)^(-t)|
    = |expm1(t (log(1+z) - z + z^2/2))|
    """
    z = _as_complex(z)
    if not abs(z) < 1:
        raise DomainError('taylor_deviation needs |z| < 1')
    q = t * _log1p_minus_quadratic(z)
    if abs(q) < 1e-5:
        return abs(q + q * q / 2 + q * q * q / 6)
    return abs(cmath.exp(q) - 1)


def compensated_sum(values):
    """
    精确舍入的复数求和（math.fsum 分别作用于实部和虚部），与求和顺序无关
    """
    values = np.asarray(values, dtype=complex).ravel()
    return complex(math.fsum(values.real.tolist()),
                   math.fsum(values.imag.tolist()))
