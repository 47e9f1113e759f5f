from zeta_sampler.blueprints import Blueprint
from zeta_sampler.config import Config
from zeta_sampler.response import json
from zeta_sampler.zeta_eval import (
    EvalConfig, ZetaArgument, evaluate_em, evaluate_integral)

zeta = Blueprint('zeta')


@zeta.command('zeta', '--sigma:number', '--t:number=0',
              '--method:em|integral=em', '--terms:int=',
              '--tolerance:number=', '--cutoff:number=',
              help='evaluate zeta(sigma + i t)')
def evaluate(invocation, sigma, t, method, terms, tolerance, cutoff):
    """
    :param terms: Euler-Maclaurin 级数项数，默认按容差推导
    :param cutoff: 分数部分积分的截断点
    """
    s = ZetaArgument(sigma, t)
    cfg = EvalConfig(series_terms=terms,
                     tail_cutoff=cutoff or Config.TAIL_CUTOFF,
                     quad_tolerance=tolerance or Config.QUAD_TOLERANCE)
    if method == 'em':
        result = evaluate_em(s, cfg)
    else:
        result = evaluate_integral(s, cfg)
    body = dict(result.to_dict(), sigma=sigma, t=t, method=method,
                eval_config=cfg.to_dict())
    return json(body, invocation.config)
