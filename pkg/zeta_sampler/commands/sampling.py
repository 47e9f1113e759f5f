from zeta_sampler.blueprints import Blueprint
from zeta_sampler.gamma_process import GammaParams, sample_batch
from zeta_sampler.response import csv

sampling = Blueprint('sampling')

SAMPLE_COLUMNS = ('index', 'value')


@sampling.command('sample', '--t:number', '--count:int',
                  help='draw X_t samples')
def sample(invocation, t, count):
    """
    X_t 的样本，CSV 两列 (index, value)
    """
    batch = sample_batch(GammaParams(t), count, invocation.seed,
                         invocation.workers)
    return csv(batch.rows(), SAMPLE_COLUMNS, invocation.config)
