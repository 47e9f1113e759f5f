from zeta_sampler.blueprints import Blueprint
from zeta_sampler.oscillatory import VdCParams, build_family, vdc_check, vdc_corpus
from zeta_sampler.response import EXIT_FAILURE, EXIT_OK, csv

vdc = Blueprint('vdc')

VDC_COLUMNS = ('family', 'lemma', 'a', 'b', 'alpha', 'beta', 'direct_re',
               'direct_im', 'transform_re', 'transform_im', 'budget', 'ratio')


@vdc.command('vdc', '--lemma:21|22|23=21', '--family:string=quadratic',
             '--n:int=', '--t:number=', '--k:int=', '--delta:number=',
             '--slope:number=', '--epsilon:number=0.5', '--theta:number=0.5',
             '--eta:number=2', '--corpus:flag',
             help='compare an exponential sum with its van der Corput transform')
def run_vdc(invocation, lemma, family, n, t, k, delta, slope, epsilon, theta,
            eta, corpus):
    """
    单个设置输出一行；--corpus 输出整套检验语料。
    任何一行超出常数上限时退出码为 1
    """
    if corpus:
        checks = [vdc_check(*entry) for entry in vdc_corpus()]
    else:
        spec = build_family(family, n=n, t=t, k=k, delta=delta, slope=slope)
        params = VdCParams.for_spec(spec, epsilon=epsilon, theta=theta, eta=eta)
        checks = [vdc_check(lemma, spec, params)]
    status = EXIT_OK if all(c.passed for c in checks) else EXIT_FAILURE
    return csv([c.row() for c in checks], VDC_COLUMNS, invocation.config,
               status=status)
