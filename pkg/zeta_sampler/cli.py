from zeta_sampler.app import ZetaSampler
from zeta_sampler.commands import BLUEPRINTS
from zeta_sampler.log import log
from zeta_sampler.response import EXIT_OK

app = ZetaSampler('zeta_sampler')
for blueprint in BLUEPRINTS:
    app.blueprint(blueprint)


@app.middleware
def announce(invocation):
    log.info('Running {} with seed {}'.format(invocation.subcommand,
                                              invocation.seed))


@app.middleware('response')
def report_status(invocation, report):
    if report.status != EXIT_OK:
        log.warning('{} finished with exit status {}'.format(
            invocation.subcommand, report.status))
