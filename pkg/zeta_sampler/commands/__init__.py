from zeta_sampler.commands.decompose import decompose
from zeta_sampler.commands.moments import moments
from zeta_sampler.commands.sampling import sampling
from zeta_sampler.commands.vdc import vdc
from zeta_sampler.commands.verify import verify
from zeta_sampler.commands.zeta import zeta

BLUEPRINTS = (sampling, zeta, moments, vdc, decompose, verify)

__all__ = ['BLUEPRINTS', 'sampling', 'zeta', 'moments', 'vdc', 'decompose',
           'verify']
