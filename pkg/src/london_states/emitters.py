"""
Plot ready documents: a table of rows plus ``meta`` and ``footer`` mappings,
rendered as CSV or JSON with a fixed number of significant digits.
"""
import csv
import io
import json
import math
import numbers
from dataclasses import dataclass, field
from typing import Any, Dict, List, Sequence

DEFAULT_PRECISION = 17


@dataclass
class Document:
    columns: Sequence[str]
    rows: List[Sequence[Any]] = field(default_factory=list)
    meta: Dict[str, Any] = field(default_factory=dict)
    footer: Dict[str, Any] = field(default_factory=dict)


def format_number(value, precision=DEFAULT_PRECISION):
    """
    Text for one cell: integers verbatim, floats to ``precision`` significant
    digits, ``None`` and NaN as ``nan``.
    """
    if value is None:
        return 'nan'
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, numbers.Integral):
        return str(int(value))
    if isinstance(value, numbers.Real):
        value = float(value)
        if math.isnan(value):
            return 'nan'
        return format(value, '.%dg' % precision)
    return str(value)


def _json_value(value, precision):
    if isinstance(value, dict):
        return {k: _json_value(v, precision) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_value(v, precision) for v in value]
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, numbers.Integral):
        return int(value)
    value = float(value)
    if not math.isfinite(value):
        return None
    return float(format(value, '.%dg' % precision))


def _comment_lines(mapping, precision):
    lines = []
    for key, value in mapping.items():
        if isinstance(value, dict):
            for sub_key, sub_value in value.items():
                lines.append('# %s.%s=%s' % (key, sub_key, _comment_value(sub_value, precision)))
        else:
            lines.append('# %s=%s' % (key, _comment_value(value, precision)))
    return lines


def _comment_value(value, precision):
    if isinstance(value, (list, tuple)):
        return ' '.join(format_number(v, precision) for v in value)
    return format_number(value, precision)


def render_csv(document, precision=DEFAULT_PRECISION):
    """
    ``# key=value`` meta lines, a header row, the rows, then ``# key=value``
    footer lines. ``,`` separated, LF line endings.

    :rtype: str
    """
    out = io.StringIO()
    for line in _comment_lines(document.meta, precision):
        out.write(line + '\n')
    writer = csv.writer(out, lineterminator='\n')
    writer.writerow(document.columns)
    for row in document.rows:
        writer.writerow([format_number(v, precision) for v in row])
    for line in _comment_lines(document.footer, precision):
        out.write(line + '\n')
    return out.getvalue()


def render_json(document, precision=DEFAULT_PRECISION):
    """
    One JSON object: ``meta``, ``columns``, ``rows`` and ``footer``.

    :rtype: str
    """
    payload = {
        'meta': _json_value(document.meta, precision),
        'columns': list(document.columns),
        'rows': [_json_value(list(row), precision) for row in document.rows],
        'footer': _json_value(document.footer, precision),
    }
    return json.dumps(payload, indent=2, allow_nan=False) + '\n'


RENDERERS = {
    'csv': render_csv,
    'json': render_json,
}
