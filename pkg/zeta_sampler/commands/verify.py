from zeta_sampler.blueprints import Blueprint
from zeta_sampler.response import EXIT_FAILURE, EXIT_OK, json
from zeta_sampler.verify import run_checks

verify = Blueprint('verify')


@verify.command('verify-all', '--quick:flag', '--check:string=',
                help='run the acceptance suite')
def verify_all(invocation, quick, check):
    """
    :param check: 逗号分隔的检查名，默认全部
    """
    names = [name.strip() for name in check.split(',')] if check else None
    results = run_checks(quick, invocation.seed, invocation.workers, names)
    failed = [r.name for r in results if not r.passed]
    body = {'quick': quick, 'checks': results, 'failed': failed,
            'pass': not failed}
    return json(body, invocation.config,
                status=EXIT_FAILURE if failed else EXIT_OK)
