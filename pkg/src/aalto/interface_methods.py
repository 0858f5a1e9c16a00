# Aalto - Nodal volume toolkit for arithmetic random waves
#
# SPDX-License-Identifier: Apache-2.0

"""Reading configuration, parsing command line expressions and writing artifacts."""
import csv
import io
import json
import sys
from fractions import Fraction
from logging import getLogger
from pathlib import Path
from typing import Iterable, List

import commentjson as cjson
import numpy as np
from pyparsing import (DelimitedList, Group, Keyword, Literal, Optional, ParseException,
                       StringEnd, Suppress, Word, nums)

from aalto.exceptions import ConfigError

logger = getLogger('aalto')


def load_json_conf(conf_file: str, key: str = 'RUN') -> dict:
    """Read configuration from file (JSON or JSONC).

    Return contents of 'key' block, or the whole document when the block
    is missing. A missing file is logged and gives None.
    """
    f_path = Path(conf_file)
    if not f_path.is_file():
        logger.error("No such file: " + f_path.absolute().as_posix())
        return None
    with open(f_path, encoding='utf-8') as f:
        raw_data = f.read()
    try:
        data = cjson.loads(raw_data)
    except Exception as err:
        raise ConfigError(f'Could not parse {f_path.as_posix()}: {err}') from err
    if not isinstance(data, dict):
        raise ConfigError(f'Configuration {f_path.as_posix()} must be an object')
    key_value = data.get(key, None) if key else None
    if key_value:
        return key_value
    return data


def m_range_grammar():
    """pyparsing grammar for m expressions such as "5", "1..80", "1..49:odd",
    "3,5,7" and "1..100:3".
    """
    integer = Word(nums)
    step = Keyword('odd') | Keyword('even') | integer
    span = Group(integer('start') + Optional(
        Suppress(Literal('..')) + integer('stop') + Optional(Suppress(':') + step('step'))))
    return DelimitedList(span) + StringEnd()


def _expand_span(span) -> range:
    start = int(span['start'])
    if 'stop' not in span:
        return range(start, start + 1)
    stop = int(span['stop'])
    if stop < start:
        raise ConfigError(f'Empty m range {start}..{stop}')
    step = span.get('step')
    if step is None:
        return range(start, stop + 1)
    if step in ('odd', 'even'):
        first = start if (start % 2 == 1) == (step == 'odd') else start + 1
        return range(first, stop + 1, 2)
    if int(step) < 1:
        raise ConfigError(f'm range step must be positive, got {step}')
    return range(start, stop + 1, int(step))


def parse_m_range(expression: str) -> List[int]:
    """Sorted, de-duplicated list of the m values an expression names."""
    try:
        spans = m_range_grammar().parse_string(expression.replace(' ', ''))
    except ParseException as err:
        raise ConfigError(f'Invalid m expression {expression!r}: {err}') from err
    values = sorted({m for span in spans for m in _expand_span(span)})
    if not values:
        raise ConfigError(f'm expression {expression!r} names no values')
    return values


def _to_builtin(value):
    if isinstance(value, Fraction):
        return [value.numerator, value.denominator]
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, (set, frozenset)):
        return sorted(value)
    raise TypeError(f'Object of type {type(value).__name__} is not JSON serializable')


def dump_json(record: dict) -> str:
    """Canonical JSON: sorted keys, two-space indent, trailing newline."""
    return json.dumps(record, sort_keys=True, indent=2, default=_to_builtin) + '\n'


def dump_csv(header: List[str], rows: Iterable[Iterable]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(header)
    for row in rows:
        writer.writerow([_to_builtin(cell) if isinstance(cell, (Fraction, np.generic)) else cell
                         for cell in row])
    return buffer.getvalue()


def write_artifact(text: str, output_path: str = None):
    """Write text to output_path, or to standard output when no path is given."""
    if output_path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    f_path = Path(output_path)
    f_path.parent.mkdir(parents=True, exist_ok=True)
    with open(f_path, 'w', encoding='utf-8', newline='') as f:
        f.write(text)
    logger.info(f'Wrote {f_path.as_posix()}')


def format_to_table(lst_of_iter: List[Iterable]) -> str:
    """Format list of iterables to nice human-readable table."""
    if not lst_of_iter:
        return 'No output.'
    col_widths = [0]*len(lst_of_iter[0])
    for row in lst_of_iter:
        for i, cell in enumerate(row):
            col_widths[i] = max(col_widths[i], len(str(cell)))
    col_formats = [f"{{:<{width + 2}}}" for width in col_widths]
    formatted_output = ''
    for row in lst_of_iter:
        for i, cell in enumerate(row):
            formatted_output += col_formats[i].format(str(cell))
        formatted_output += '\n'
    return formatted_output
