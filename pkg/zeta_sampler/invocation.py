from zeta_sampler.config import RunConfig, resolve_seed
from zeta_sampler.exceptions import InvalidUsage


def parse_overrides(items):
    """
    把 ['name=value', ...] 解析为字典
    """
    overrides = {}
    for item in items or ():
        name, sep, value = item.partition('=')
        if not sep or not name:
            raise InvalidUsage(
                'Override must look like name=value, got {!r}'.format(item))
        overrides[name.strip()] = value.strip()
    return overrides


class Invocation(dict):
    """一次子命令调用：子命令名、参数以及公共选项（种子、输出、进程数）"""

    # 插槽，阻止动态创建属性
    __slots__ = (
        'subcommand', 'arguments', 'seed', 'output_path', 'workers', 'debug',
        'overrides', '_config',
    )

    def __init__(self, subcommand, arguments, seed=None, output_path=None,
                 workers=None, debug=False, overrides=None, environ=None):
        super().__init__()
        self.subcommand = subcommand
        self.arguments = dict(arguments)
        self.seed = resolve_seed(seed, environ)
        self.output_path = output_path
        self.workers = workers
        self.debug = debug
        self.overrides = parse_overrides(overrides)
        self._config = None

    @property
    def config(self):
        """
        写入输出文件的 RunConfig
        """
        if self._config is None:
            self._config = RunConfig(
                subcommand=self.subcommand, seed=self.seed,
                output_path=self.output_path, overrides=self.overrides,
                arguments=self.arguments)
        return self._config
