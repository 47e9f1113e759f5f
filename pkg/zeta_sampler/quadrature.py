"""
向量化的自适应 Gauss-Legendre 面板积分。

每个面板用 n 点和 n/2 点两条规则求值，两者之差作为误差估计；
不满足局部容差的面板二分后重新求值。所有归约都在固定顺序下完成，
所以结果只取决于输入。
"""
from functools import lru_cache

import numpy as np

from zeta_sampler.config import Config
from zeta_sampler.exceptions import QuadratureError
from zeta_sampler.log import log

PANEL_CHUNK = 1 << 15            # 单次求值的面板数上限
SQUARE_CHUNK = 4096


@lru_cache(maxsize=16)
def gauss_legendre(order):
    """[-1, 1] 上的节点和权重"""
    return np.polynomial.legendre.leggauss(order)


def _panel_rule(func, mid, half, order, params=None, chunk=PANEL_CHUNK):
    nodes, weights = gauss_legendre(order)
    sums, scales = [], []
    for i in range(0, mid.size, chunk):
        m, h = mid[i:i + chunk], half[i:i + chunk]
        x = m[:, None] + h[:, None] * nodes[None, :]
        if params is None:
            values = np.asarray(func(x))
        else:
            values = np.asarray(func(x, params[i:i + chunk, None]))
        sums.append(h * (values * weights[None, :]).sum(axis=1))
        scales.append(h * (np.abs(values) * weights[None, :]).sum(axis=1))
    if not sums:
        return np.zeros(0, dtype=complex), np.zeros(0)
    return np.concatenate(sums), np.concatenate(scales)


def _accumulate(owner, values, n_owners):
    re = np.bincount(owner, weights=values.real, minlength=n_owners)
    im = np.bincount(owner, weights=values.imag, minlength=n_owners)
    return re + 1j * im


def split_panels(lo, hi, counts):
    """
    把每个区间 [lo_i, hi_i] 等分为 counts_i 段
    :return: (子区间下界, 子区间上界, 所属区间下标)
    """
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    counts = np.maximum(np.asarray(counts, dtype=np.int64), 1)
    owner = np.repeat(np.arange(lo.size), counts)
    starts = np.cumsum(counts) - counts
    local = np.arange(owner.size) - starts[owner]
    width = (hi - lo)[owner] / counts[owner]
    sub_lo = lo[owner] + local * width
    sub_hi = np.where(local == counts[owner] - 1, hi[owner], sub_lo + width)
    return sub_lo, sub_hi, owner


def integrate_panels(func, lo, hi, tol, owner=None, n_owners=None,
                     order=16, max_panels=None, params=None):
    """
    在一组面板上自适应积分
    :param func: 向量化被积函数，接收任意形状的数组
    :param lo: 面板下界数组
    :param hi: 面板上界数组
    :param tol: 总绝对容差，按面板宽度分摊
    :param owner: 每个面板所属的结果下标，默认每个面板各自独立
    :param n_owners: 结果数组长度
    :param params: 每个面板的附加参数，给出时以 func(x, params) 调用
    :return: (每个 owner 的积分值, 误差估计)
    """
    lo = np.atleast_1d(np.asarray(lo, dtype=float))
    hi = np.atleast_1d(np.asarray(hi, dtype=float))
    if owner is None:
        owner = np.arange(lo.size)
    owner = np.atleast_1d(np.asarray(owner, dtype=np.int64))
    if params is not None:
        params = np.broadcast_to(np.asarray(params), lo.shape).copy()
    if n_owners is None:
        n_owners = int(owner.max()) + 1 if owner.size else 0
    max_panels = max(max_panels or Config.MAX_PANELS, 4 * lo.size)

    total = np.zeros(n_owners, dtype=complex)
    error = 0.0
    total_width = float(np.sum(hi - lo))
    if total_width <= 0:
        return total, error
    density = tol / total_width
    processed = 0

    while lo.size:
        processed += lo.size
        if processed > max_panels:
            log.warning('Panel budget of {} exhausted'.format(max_panels))
            raise QuadratureError(
                'Quadrature did not converge within {} panels'.format(max_panels))
        mid = 0.5 * (lo + hi)
        half = 0.5 * (hi - lo)
        fine, scale = _panel_rule(func, mid, half, order, params)
        coarse, _ = _panel_rule(func, mid, half, order // 2, params)
        err = np.abs(fine - coarse)
        if not np.all(np.isfinite(fine)):
            raise QuadratureError('Non-finite integrand value')
        # 误差已到舍入水平或面板不可再分时接受
        done = ((err <= density * (hi - lo)) | (err <= 1e-14 * scale)
                | (half <= 1e-13 * np.maximum(1.0, np.abs(mid))))
        if np.any(done):
            total += _accumulate(owner[done], fine[done], n_owners)
            error += float(np.sum(err[done]))
        keep = ~done
        lo, hi, owner, mid = lo[keep], hi[keep], owner[keep], mid[keep]
        lo, hi = np.concatenate([lo, mid]), np.concatenate([mid, hi])
        owner = np.concatenate([owner, owner])
        if params is not None:
            params = params[keep]
            params = np.concatenate([params, params])
    return total, error


def integrate(func, a, b, tol, panels=1, order=16, max_panels=None):
    """
    单个区间上的自适应积分，初始等分为 panels 段
    :return: (积分值, 误差估计)
    """
    lo, hi, owner = split_panels([a], [b], [panels])
    values, error = integrate_panels(func, lo, hi, tol, owner=owner,
                                     n_owners=1, order=order,
                                     max_panels=max_panels)
    return complex(values[0]), error


def _square_rule(func, xm, xh, ym, yh, order, chunk=SQUARE_CHUNK):
    nodes, weights = gauss_legendre(order)
    w2 = weights[:, None] * weights[None, :]
    sums, scales = [], []
    for i in range(0, xm.size, chunk):
        s = slice(i, i + chunk)
        xs = xm[s, None, None] + xh[s, None, None] * nodes[None, :, None]
        ys = ym[s, None, None] + yh[s, None, None] * nodes[None, None, :]
        values = np.asarray(func(xs, ys))
        area = xh[s] * yh[s]
        sums.append(area * (values * w2[None, :, :]).sum(axis=(1, 2)))
        scales.append(area * (np.abs(values) * w2[None, :, :]).sum(axis=(1, 2)))
    if not sums:
        return np.zeros(0, dtype=complex), np.zeros(0)
    return np.concatenate(sums), np.concatenate(scales)


def integrate_squares(func, x_lo, x_hi, y_lo, y_hi, tol, order=12,
                      max_panels=None):
    """
    矩形面板上的二维自适应张量 Gauss-Legendre 积分。
    容差按第一轮估计的 |f| 质量分摊到各面板。
    :param func: func(x, y) 向量化被积函数
    :return: (积分值, 误差估计)
    """
    x_lo = np.atleast_1d(np.asarray(x_lo, dtype=float))
    x_hi = np.atleast_1d(np.asarray(x_hi, dtype=float))
    y_lo = np.atleast_1d(np.asarray(y_lo, dtype=float))
    y_hi = np.atleast_1d(np.asarray(y_hi, dtype=float))
    max_panels = max(max_panels or Config.MAX_PANELS, 4 * x_lo.size)

    total = []
    error = 0.0
    processed = 0
    mass = None
    while x_lo.size:
        processed += x_lo.size
        if processed > max_panels:
            log.warning('Panel budget of {} exhausted'.format(max_panels))
            raise QuadratureError(
                '2-D quadrature did not converge within {} panels'.format(
                    max_panels))
        xm, xh = 0.5 * (x_lo + x_hi), 0.5 * (x_hi - x_lo)
        ym, yh = 0.5 * (y_lo + y_hi), 0.5 * (y_hi - y_lo)
        fine, scale = _square_rule(func, xm, xh, ym, yh, order)
        coarse, _ = _square_rule(func, xm, xh, ym, yh, order // 2)
        if not np.all(np.isfinite(fine)):
            raise QuadratureError('Non-finite integrand value')
        if mass is None:
            mass = max(float(scale.sum()), 1e-300)
        err = np.abs(fine - coarse)
        done = ((err <= tol * scale / mass) | (err <= 1e-13 * scale)
                | (np.minimum(xh, yh) <= 1e-12))
        total.append(fine[done])
        error += float(err[done].sum())
        keep = ~done
        xl, xr, xm = x_lo[keep], x_hi[keep], xm[keep]
        yl, yr, ym = y_lo[keep], y_hi[keep], ym[keep]
        x_lo = np.concatenate([xl, xm, xl, xm])
        x_hi = np.concatenate([xm, xr, xm, xr])
        y_lo = np.concatenate([yl, yl, ym, ym])
        y_hi = np.concatenate([ym, ym, yr, yr])
    if not total:
        return 0j, 0.0
    return complex(np.concatenate(total).sum()), error
