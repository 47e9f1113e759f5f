from traceback import format_exc

from zeta_sampler.log import log
from zeta_sampler.response import error


class ZetaSamplerException(Exception):
    exit_code = 1

    def __init__(self, message, exit_code=None):
        super().__init__(message)
        if exit_code is not None:
            self.exit_code = exit_code


class InvalidUsage(ZetaSamplerException):
    """
    无效用法：参数错误，退出码 2
    """
    exit_code = 2


class DomainError(ZetaSamplerException):
    """
    参数不在函数定义域内
    """


class KernelOverflow(ZetaSamplerException):
    """
    指数运算溢出
    """


class InvalidParameter(ZetaSamplerException):
    """
    模型参数无效
    """


class EmptyBatch(ZetaSamplerException):
    """
    样本批次为空
    """


class ConfigError(ZetaSamplerException):
    """
    求值配置不满足精度下限
    """


class QuadratureError(ZetaSamplerException):
    """
    数值积分不收敛
    """


class IntervalTooLong(ZetaSamplerException):
    """
    求和区间超过直接求和的上限
    """


class RegionTooLarge(ZetaSamplerException):
    """
    格点区域过大
    """


class InvariantViolated(ZetaSamplerException):
    """
    引理的前提条件不成立
    """


class TooFewRows(ZetaSamplerException):
    """
    残差分析所需的行数不足
    """


class AcceptanceFailure(ZetaSamplerException):
    """
    验收断言失败
    """


# 异常处理器
class Handler:
    handlers = None

    def __init__(self, app):
        self.handlers = {}
        self.app = app

    def add(self, exception, handler):
        self.handlers[exception] = handler

    def lookup(self, exception):
        """
        按 MRO 查找最近的已注册处理函数
        """
        for cls in type(exception).__mro__:
            if cls in self.handlers:
                return self.handlers[cls]
        return self.default

    def response(self, invocation, exception):
        """
        获取并执行异常处理程序并返回报告
        """
        handler = self.lookup(exception)
        try:
            response = handler(invocation=invocation, exception=exception)
        except Exception:
            message = 'Exception raised in exception handler "{}" for "{}"'.format(
                getattr(handler, '__name__', handler), invocation.subcommand)
            if self.app.debug:
                message = '{}\n{}'.format(message, format_exc())
            log.error(message)
            return error(message, 1)
        return response

    def default(self, invocation, exception):
        """
        框架自身的异常按 exit_code 返回，其他异常一律返回 1
        """
        if isinstance(exception, ZetaSamplerException):
            log.error('{}: {}'.format(type(exception).__name__, exception))
            return error('{}: {}'.format(type(exception).__name__, exception),
                         getattr(exception, 'exit_code', 1))
        message = 'Exception occurred while running "{}"'.format(
            invocation.subcommand)
        if self.app.debug:
            message = '{}\n{}'.format(message, format_exc())
        log.error(message)
        return error('{}: {}'.format(message, exception), 1)
