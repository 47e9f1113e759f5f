import logging

log = logging.getLogger('zeta_sampler')  # 获取名为 zeta_sampler 的 logger
