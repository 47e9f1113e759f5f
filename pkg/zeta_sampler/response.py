import sys
from io import StringIO

from ujson import dumps as json_dumps, loads as json_loads

CSV_VERSION_LINE = '# zeta-sampler v1'
CONFIG_PREFIX = '# config: '

# 退出码
EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def jsonable(value):
    """
    把报告中的对象转换为可以 JSON 序列化的基本类型
    """
    if hasattr(value, 'to_dict'):
        return jsonable(value.to_dict())
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, complex):
        return {'re': value.real, 'im': value.imag}
    if hasattr(value, 'tolist') and not isinstance(value, (str, bytes)):
        return jsonable(value.tolist())     # numpy 标量或数组
    return value


class Report:
    __slots__ = ('body', 'status', 'content_type')

    def __init__(self, body=None, status=EXIT_OK, content_type='text/plain',
                 body_bytes=b''):
        self.content_type = content_type    # 内容类型

        if body is not None:
            try:
                self.body = body.encode('utf-8')
            except AttributeError:
                self.body = str(body).encode('utf-8')
        else:
            self.body = body_bytes

        self.status = status                # 退出码

    @property
    def is_error(self):
        return self.status != EXIT_OK and self.content_type == 'text/plain'

    def output(self, path=None):
        """
        写出报告内容：错误写到标准错误，其余写到 path 或标准输出
        """
        if path and not self.is_error:
            with open(path, 'wb') as fh:
                fh.write(self.body)
        else:
            stream = sys.stderr if self.is_error else sys.stdout
            stream.write(self.body.decode('utf-8'))
            stream.flush()


# 报告模块对外接口，根据 content_type 区分

# 返回 json 格式的报告
def json(body, config=None, status=EXIT_OK):
    body = jsonable(body)
    if config is not None and isinstance(body, dict):
        body = dict(body, config=jsonable(config))
    return Report(json_dumps(body, sort_keys=True, indent=2) + '\n',
                  status=status, content_type='application/json')


# 返回 csv 格式的报告
def csv(rows, columns, config=None, status=EXIT_OK):
    """
    :param rows: 每行为 dict 或与 columns 对应的序列
    :param columns: 列名
    :param config: 写入第二行注释的运行配置
    """
    buf = StringIO()
    buf.write(CSV_VERSION_LINE + '\n')
    buf.write(CONFIG_PREFIX + json_dumps(jsonable(config or {}),
                                         sort_keys=True) + '\n')
    buf.write(','.join(columns) + '\n')
    for row in rows:
        if isinstance(row, dict):
            row = [row[c] for c in columns]
        buf.write(','.join(_format_cell(jsonable(v)) for v in row) + '\n')
    return Report(buf.getvalue(), status=status, content_type='text/csv')


# 返回 text 格式的报告
def text(body, status=EXIT_OK):
    return Report(body, status=status, content_type='text/plain')


def error(message, status=EXIT_FAILURE):
    return text(message.rstrip('\n') + '\n', status=status)


def _format_cell(value):
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, float):
        return repr(value)      # repr 保证往返精确
    return str(value)


def _parse_cell(raw):
    if raw in ('true', 'false'):
        return raw == 'true'
    for cast in (int, float):
        try:
            return cast(raw)
        except ValueError:
            pass
    return raw


def read_json(text_body):
    """
    解析 json 报告
    """
    if isinstance(text_body, bytes):
        text_body = text_body.decode('utf-8')
    return json_loads(text_body)


def read_csv(text_body):
    """
    解析 csv 报告
    :return: (config, columns, rows)，rows 为字典列表
    """
    if isinstance(text_body, bytes):
        text_body = text_body.decode('utf-8')
    lines = text_body.splitlines()
    if not lines or lines[0] != CSV_VERSION_LINE:
        raise ValueError('Not a zeta-sampler v1 CSV file')
    config = {}
    index = 1
    if len(lines) > 1 and lines[1].startswith(CONFIG_PREFIX):
        config = json_loads(lines[1][len(CONFIG_PREFIX):])
        index = 2
    columns = lines[index].split(',')
    rows = []
    for line in lines[index + 1:]:
        if not line:
            continue
        cells = [_parse_cell(c) for c in line.split(',')]
        rows.append(dict(zip(columns, cells)))
    return config, columns, rows
