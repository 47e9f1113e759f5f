import re
from argparse import ArgumentParser
from collections import namedtuple

# 子命令元组
Command = namedtuple('Command', ['handler', 'name', 'parameters', 'help'])
# 参数元组
Parameter = namedtuple('Parameter', ['flag', 'dest', 'kind', 'cast', 'default',
                                     'choices', 'required'])

# 参数类型及其转换函数
PARAMETER_TYPES = {
    'string': str,
    'int': int,
    'number': float,
    'numbers': float,       # 一个或多个实数
    'flag': bool,
}

PATTERN = re.compile(
    r'^--(?P<name>[a-z][a-z0-9-]*)(?::(?P<kind>[^=]+))?(?:=(?P<default>.*))?$')


class CommandExists(Exception):
    """
    子命令已存在
    """
    pass


def parse_parameter(pattern):
    """
    解析参数模式，格式为 --NAME、--NAME:TYPE 或 --NAME:TYPE=DEFAULT，
    TYPE 可以是 PARAMETER_TYPES 中的类型，或者用 `|` 分隔的候选值。
    没有默认值的参数为必填；`=` 后为空表示默认值为 None
    """
    match = PATTERN.match(pattern)
    if match is None:
        raise ValueError('Invalid parameter pattern: {}'.format(pattern))
    name = match.group('name')
    kind = match.group('kind') or 'string'
    default = match.group('default')

    choices = None
    if '|' in kind:
        choices = kind.split('|')
        cast, kind = str, 'choice'
    elif kind in PARAMETER_TYPES:
        cast = PARAMETER_TYPES[kind]
    else:
        raise ValueError('Unknown parameter type {} in {}'.format(kind, pattern))

    if kind == 'flag':
        return Parameter('--' + name, name.replace('-', '_'), kind, cast, False,
                         None, False)
    required = default is None
    if default == '':
        default = None
    elif default is not None and kind == 'numbers':
        default = [float(v) for v in default.split(',')]
    elif default is not None:
        default = cast(default)
    return Parameter('--' + name, name.replace('-', '_'), kind, cast, default,
                     choices, required)


class Router:
    """
    子命令路由，参数用模式字符串描述。
    Usage：
        @app.command('zeta', '--sigma:number', '--t:number=0', '--method:em|integral=em')
        def zeta(invocation, sigma, t, method):
            do stuff...
    处理函数以 Invocation 和解析后的关键字参数调用。
    """
    commands = None             # 子命令集合

    def __init__(self):
        self.commands = {}

    def add(self, name, patterns, handler, help=None):
        """
        添加子命令
        :param name: 子命令名
        :param patterns: 参数模式序列
        :param handler: 处理函数
        """
        if name in self.commands:
            raise CommandExists('Command already registered: {}'.format(name))
        parameters = [parse_parameter(p) for p in patterns]
        self.commands[name] = Command(handler=handler, name=name,
                                      parameters=parameters, help=help)

    def parser(self, prog, common=None):
        """
        构建 argparse 解析器，每个子命令一个子解析器
        :param common: 所有子命令共享的父解析器
        """
        parser = ArgumentParser(prog=prog)
        subparsers = parser.add_subparsers(dest='subcommand', metavar='subcommand')
        subparsers.required = True
        parents = [common] if common is not None else []
        for command in self.commands.values():
            sub = subparsers.add_parser(command.name, help=command.help,
                                        parents=parents)
            for p in command.parameters:
                if p.kind == 'flag':
                    sub.add_argument(p.flag, dest=p.dest, action='store_true')
                elif p.kind == 'numbers':
                    sub.add_argument(p.flag, dest=p.dest, type=p.cast, nargs='+',
                                     default=p.default, required=p.required)
                else:
                    sub.add_argument(p.flag, dest=p.dest, type=p.cast,
                                     choices=p.choices, default=p.default,
                                     required=p.required)
        return parser

    def get(self, namespace):
        """
        由解析结果取出处理函数
        :return: handler, subcommand, keyword arguments
        """
        command = self.commands[namespace.subcommand]
        kwargs = {p.dest: getattr(namespace, p.dest) for p in command.parameters}
        return command.handler, command.name, kwargs
