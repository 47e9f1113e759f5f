from multiprocessing import Pool

from zeta_sampler.config import Config
from zeta_sampler.log import log


def parallel_map(func, items, workers=None):
    """
    把 func 应用到 items 的每一项，结果保持输入顺序。
    workers 为 1 时在当前进程内执行，否则启动进程池；
    工作单元的划分由调用方固定，所以结果与进程数无关。
    :param func: 模块级函数（需要可以被 pickle）
    :param items: 工作单元序列
    :param workers: 进程数，默认 Config.WORKERS
    """
    items = list(items)
    workers = int(workers or Config.WORKERS)
    if workers <= 1 or len(items) <= 1:
        return [func(item) for item in items]

    workers = min(workers, len(items))
    log.info('Spinning up {} workers...'.format(workers))
    with Pool(processes=workers) as pool:
        return pool.map(func, items, chunksize=1)
