from zeta_sampler.app import ZetaSampler
from zeta_sampler.blueprints import Blueprint

__version__ = '0.1.0'

__all__ = ['ZetaSampler', 'Blueprint']    # 指定直接引用的包
