from argparse import ArgumentParser
from collections import deque
import logging

from zeta_sampler.config import Config
from zeta_sampler.exceptions import Handler, ZetaSamplerException
from zeta_sampler.invocation import Invocation
from zeta_sampler.log import log
from zeta_sampler.response import EXIT_USAGE, Report
from zeta_sampler.router import Router

MIDDLEWARE_STAGES = ('request', 'response')


def common_options():
    """
    所有子命令共享的选项
    """
    parser = ArgumentParser(add_help=False)
    parser.add_argument('--seed', dest='seed', type=int, default=None)
    parser.add_argument('--out', dest='out', type=str, default=None)
    parser.add_argument('--workers', dest='workers', type=int, default=None)
    parser.add_argument('--override', dest='override', action='append',
                        default=[], metavar='NAME=VALUE')
    parser.add_argument('--debug', dest='debug', action='store_true')
    return parser


class ZetaSampler:
    def __init__(self, name='zeta_sampler', router=None, error_handler=None,
                 logger=None):
        if logger is None:
            logging.basicConfig(
                level=logging.INFO,
                format="%(asctime)s: %(levelname)s: %(message)s"
            )
        self.name = name                                        # argparse 的 prog
        self.router = router or Router()                        # 子命令路由
        self.error_handler = error_handler or Handler(self)     # 错误处理
        self.config = Config
        self.debug = False
        self.request_middleware = deque()       # 调用前，按注册顺序
        self.response_middleware = deque()      # 调用后，按注册的逆序
        self.blueprints = {}

    # 子命令、中间件、异常处理函数和蓝图的注册

    def command(self, name, *patterns, help=None):
        """
        :param name: 子命令名
        :param patterns: 参数模式，如 '--t:number'、'--method:em|integral=em'
        """
        def decorator(handler):
            self.router.add(name, patterns, handler, help=help)
            return handler
        return decorator

    def middleware(self, *args):
        """
        `@app.middleware` 登记调用前中间件，`@app.middleware('response')` 登记调用后中间件。
        调用前中间件返回 Report 时跳过处理函数
        """
        def attach(middleware, stage):
            if stage not in MIDDLEWARE_STAGES:
                raise ValueError('Unknown middleware stage: {}'.format(stage))
            if stage == 'request':
                self.request_middleware.append(middleware)
            else:
                self.response_middleware.appendleft(middleware)
            return middleware

        if len(args) == 1 and callable(args[0]):
            return attach(args[0], 'request')
        stage = args[0] if args else 'request'
        return lambda middleware: attach(middleware, stage)

    def exception(self, *exceptions):
        """
        为若干异常类型登记处理函数 handler(invocation, exception) -> Report
        """
        def decorator(handler):
            for exception in exceptions:
                self.error_handler.add(exception, handler)
            return handler
        return decorator

    def blueprint(self, blueprint, **options):
        """
        :param options: 覆盖蓝图的设置，目前只有 prefix
        """
        registered = self.blueprints.setdefault(blueprint.name, blueprint)
        if registered is not blueprint:
            raise ValueError(
                'Blueprint name {!r} is already taken'.format(blueprint.name))
        blueprint.register(self, options)

    # 处理调用

    def handle(self, invocation, handler, kwargs):
        """
        依次执行调用前中间件、处理函数、调用后中间件，
        所有异常都交给错误处理器转换为报告
        :return: Report
        """
        try:
            report = None
            with Config.overridden(invocation.overrides):
                for middleware in self.request_middleware:
                    report = middleware(invocation)
                    if report:
                        break

                if not report:
                    report = handler(invocation, **kwargs)
                    if not isinstance(report, Report):
                        raise ZetaSamplerException(
                            'Handler for {} returned {}, not a Report'.format(
                                invocation.subcommand, type(report).__name__))

                for middleware in self.response_middleware:
                    _report = middleware(invocation, report)
                    if _report:
                        report = _report
                        break

        except Exception as e:
            report = self.error_handler.response(invocation, e)  # 异常处理部分
        return report

    def run(self, argv=None, environ=None):
        """
        解析命令行参数并执行子命令，写出报告
        :param argv: 参数列表，默认 sys.argv[1:]
        :param environ: 环境变量映射，默认 os.environ
        :return: 退出码
        """
        parser = self.router.parser(self.name, common_options())
        try:
            namespace = parser.parse_args(argv)
        except SystemExit as e:     # argparse 已把用法写到标准错误
            return EXIT_USAGE if e.code else 0

        self.debug = namespace.debug
        if self.debug:
            log.setLevel(logging.DEBUG)

        handler, subcommand, kwargs = self.router.get(namespace)
        try:
            invocation = Invocation(
                subcommand, kwargs, seed=namespace.seed,
                output_path=namespace.out, workers=namespace.workers,
                debug=namespace.debug, overrides=namespace.override,
                environ=environ)
        except Exception as e:
            invocation = Invocation(subcommand, kwargs, seed=Config.DEFAULT_SEED)
            report = self.error_handler.response(invocation, e)
        else:
            report = self.handle(invocation, handler, kwargs)

        report.output(invocation.output_path)
        return report.status
