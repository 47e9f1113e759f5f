import os
from contextlib import contextmanager
from dataclasses import dataclass, field

from zeta_sampler.exceptions import InvalidUsage
from zeta_sampler.response import CSV_VERSION_LINE


class Config:
    DEFAULT_SEED = 42                   # 默认随机种子
    SEED_ENV = 'ZS_SEED'                # 种子环境变量
    CSV_VERSION_LINE = CSV_VERSION_LINE

    EM_CORRECTION_ORDER = 8             # Euler-Maclaurin 修正阶数
    TAIL_CUTOFF = 1e4                   # 分数部分积分截断点
    QUAD_TOLERANCE = 1e-10              # 默认积分容差
    MOMENT_ZETA_TOLERANCE = 1e-6        # 蒙特卡洛中 zeta 的精度
    MAX_PANELS = 4000000                # 自适应积分的最大面板数

    SAMPLE_BLOCK = 4096                 # 每个随机流块的样本数
    ZETA_CHUNK_ELEMENTS = 1 << 21       # 批量 zeta 求值时单块矩阵元素上限
    MAX_LATTICE_PAIRS = 2000000         # 格点对数量上限
    MAX_DIRECT_TERMS = 10 ** 9          # 指数和直接求和的长度上限

    VDC_CEILING = 10.0                  # van der Corput 常数上限
    RESIDUAL_CEILING = 3.0              # 二阶矩残差常数上限
    O1_ALLOWANCE = 2.0                  # 分解与蒙特卡洛比较时 O(1) 项的允许量
    DIAGONAL_CEILING = 3.0
    BAND_CEILING = 3.0

    WORKERS = 1                         # 进程数

    @classmethod
    def update(cls, overrides):
        """
        用 name -> value 的映射覆盖默认值
        :param overrides: 覆盖项字典，键不区分大小写
        """
        for name, value in (overrides or {}).items():
            key = name.upper().replace('-', '_')
            current = getattr(cls, key, None)
            if current is None or key.startswith('_') or callable(current):
                raise InvalidUsage('Unknown override: {}'.format(name))
            try:
                setattr(cls, key, type(current)(value))
            except (TypeError, ValueError):
                raise InvalidUsage(
                    'Override {} expects {}, got {!r}'.format(
                        name, type(current).__name__, value))

    @classmethod
    @contextmanager
    def overridden(cls, overrides):
        """
        在 with 块内应用覆盖项，退出时恢复原值
        """
        saved = dict(vars(cls))
        try:
            cls.update(overrides)
            yield cls
        finally:
            for key, value in vars(cls).copy().items():
                if key.isupper() and saved.get(key) is not value:
                    setattr(cls, key, saved[key])


def resolve_seed(flag_value=None, environ=None):
    """
    种子优先级：命令行参数 > 环境变量 ZS_SEED > 默认值 42
    """
    if flag_value is not None:
        return int(flag_value)
    environ = os.environ if environ is None else environ
    raw = environ.get(Config.SEED_ENV)
    if raw:
        try:
            return int(raw)
        except ValueError:
            raise InvalidUsage(
                '{} must be an integer, got {!r}'.format(Config.SEED_ENV, raw))
    return Config.DEFAULT_SEED


@dataclass
class RunConfig:
    """一次命令行调用的完整配置，写入每个输出文件"""
    subcommand: str
    seed: int = Config.DEFAULT_SEED
    output_path: str = None
    overrides: dict = field(default_factory=dict)
    arguments: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            'subcommand': self.subcommand,
            'seed': self.seed,
            'output_path': self.output_path,
            'overrides': dict(sorted(self.overrides.items())),
            'arguments': dict(sorted(self.arguments.items())),
        }
