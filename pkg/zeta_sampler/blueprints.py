class BlueprintSetup:
    """
    蓝图注册到某个 ZetaSampler 时的上下文，负责把登记的子命令、
    中间件和异常处理函数转交给应用
    """

    def __init__(self, blueprint, app, options):
        self.app = app
        self.blueprint = blueprint
        self.options = options
        # 注册时传入的 prefix 优先于蓝图自身的 prefix
        self.prefix = options.get('prefix', blueprint.prefix) or ''

    def add_command(self, handler, name, patterns, help):
        self.app.command(self.prefix + name, *patterns, help=help)(handler)

    def add_exception(self, handler, exceptions):
        self.app.exception(*exceptions)(handler)

    def add_middleware(self, middleware, attach_to):
        self.app.middleware(attach_to)(middleware)


class Blueprint:
    """
    一组子命令。装饰器只做登记，app.blueprint(bp) 时才真正注册，
    所以命令模块可以在 app 创建之前导入
    """

    def __init__(self, name, prefix=None):
        """
        :param name: 蓝图名，在一个应用中唯一
        :param prefix: 子命令名前缀
        """
        self.name = name
        self.prefix = prefix
        self.deferred_functions = []

    def record(self, func):
        self.deferred_functions.append(func)

    def make_setup_state(self, app, options):
        return BlueprintSetup(self, app, options)

    def register(self, app, options):
        state = self.make_setup_state(app, options)
        for deferred in self.deferred_functions:
            deferred(state)

    def command(self, name, *patterns, help=None):
        """
        登记子命令，参数模式同 ZetaSampler.command
        """
        def decorator(handler):
            self.record(lambda s: s.add_command(handler, name, patterns, help))
            return handler
        return decorator

    def middleware(self, *args):
        """
        `@bp.middleware` 或 `@bp.middleware('response')`
        """
        if len(args) == 1 and callable(args[0]):
            middleware = args[0]
            self.record(lambda s: s.add_middleware(middleware, 'request'))
            return middleware

        attach_to = args[0] if args else 'request'

        def decorator(middleware):
            self.record(lambda s: s.add_middleware(middleware, attach_to))
            return middleware
        return decorator

    def exception(self, *exceptions):
        def decorator(handler):
            self.record(lambda s: s.add_exception(handler, exceptions))
            return handler
        return decorator
