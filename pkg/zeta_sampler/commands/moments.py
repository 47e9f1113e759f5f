from ujson import dumps as json_dumps

from zeta_sampler.blueprints import Blueprint
from zeta_sampler.log import log
from zeta_sampler.moments import (
    SWEEP_COLUMNS, chebyshev_check, estimate_moments, residual_analysis, sweep)
from zeta_sampler.response import csv, json, jsonable
from zeta_sampler.zeta_eval import expected_zeta

moments = Blueprint('moments')


@moments.command('moment', '--t:number', '--samples:int=10000',
                 '--chebyshev:flag',
                 help='Monte Carlo moments of zeta(1/2 + i X_t)')
def moment(invocation, t, samples, chebyshev):
    """
    一阶矩、二阶矩及其标准误，附带 E zeta 的积分值作为对照
    """
    estimate = estimate_moments(t, samples, invocation.seed, invocation.workers)
    body = dict(estimate.to_dict(), expected_first_moment=expected_zeta(t))
    if chebyshev:
        body['chebyshev'] = chebyshev_check(t, samples, invocation.seed,
                                            invocation.workers)
    return json(body, invocation.config)


@moments.command('sweep', '--t-list:numbers', '--samples:int=10000',
                 '--se-target:number=', '--max-samples:int=',
                 help='second moment over a grid of t')
def run_sweep(invocation, t_list, samples, se_target, max_samples):
    """
    CSV 每行一个 t；行数不少于 3 时记录残差分析。
    给出 --se-target 时每个 t 的样本数加倍到标准误不超过它
    """
    rows = sweep(t_list, samples, invocation.seed, invocation.workers,
                 se_target=se_target, max_samples=max_samples)
    if len(rows) >= 3:
        analysis = residual_analysis(rows)
        log.info('Residual analysis: {}'.format(
            json_dumps(jsonable(analysis), sort_keys=True)))
    return csv([row.to_dict() for row in rows], SWEEP_COLUMNS, invocation.config)
