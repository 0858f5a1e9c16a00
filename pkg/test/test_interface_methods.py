import json
from fractions import Fraction

import numpy as np
import pytest

from aalto.exceptions import ConfigError
from aalto.interface_methods import (dump_csv, dump_json, format_to_table,
                                     load_json_conf, parse_m_range, write_artifact)


@pytest.mark.parametrize("expression, expected", [
    ("5", [5]),
    ("1..5", [1, 2, 3, 4, 5]),
    ("1..9:odd", [1, 3, 5, 7, 9]),
    ("2..9:odd", [3, 5, 7, 9]),
    ("1..10:even", [2, 4, 6, 8, 10]),
    ("1..10:3", [1, 4, 7, 10]),
    ("3,5,7", [3, 5, 7]),
    ("7,3,3", [3, 7]),
    ("1..3, 2..4", [1, 2, 3, 4]),
    (" 12 ", [12]),
])
def test_parse_m_range(expression, expected):
    assert parse_m_range(expression) == expected


@pytest.mark.parametrize("expression", ["", "a", "5..1", "1..5:0", "1..5:prime", "1..", "1,,2", "-3"])
def test_parse_m_range_should_reject(expression):
    with pytest.raises(ConfigError):
        parse_m_range(expression)


def test_dump_json_should_be_canonical():
    text = dump_json({'b': Fraction(1, 3), 'a': np.int64(2), 'c': np.array([0.5, 1.5])})
    assert text.endswith('}\n')
    assert text.index('"a"') < text.index('"b"') < text.index('"c"')
    assert '\n  "a": 2,' in text
    assert json.loads(text) == {'a': 2, 'b': [1, 3], 'c': [0.5, 1.5]}


def test_dump_json_should_reject_unknown_objects():
    with pytest.raises(TypeError):
        dump_json({'a': object()})


def test_dump_csv():
    text = dump_csv(['m', 'value'], [[1, 0.5], [np.int64(3), np.float64(2.0)]])
    assert text == 'm,value\n1,0.5\n3,2.0\n'


def test_load_json_conf_with_comments(tmp_path):
    conf = tmp_path / 'run.jsonc'
    conf.write_text('// comment\n{"RUN": {"d": 5, // inline\n "m": "1..3"}}', encoding='utf-8')
    assert load_json_conf(str(conf)) == {'d': 5, 'm': '1..3'}
    assert load_json_conf(str(conf), key='') == {'RUN': {'d': 5, 'm': '1..3'}}


def test_load_json_conf_without_block(tmp_path):
    conf = tmp_path / 'flat.json'
    conf.write_text('{"d": 3}', encoding='utf-8')
    assert load_json_conf(str(conf)) == {'d': 3}


def test_load_json_conf_missing_file(tmp_path, caplog):
    assert load_json_conf(str(tmp_path / 'nope.jsonc')) is None
    assert 'No such file' in caplog.text


@pytest.mark.parametrize("content", ['{"RUN": {', '[1, 2]'])
def test_load_json_conf_should_reject_bad_documents(tmp_path, content):
    conf = tmp_path / 'bad.jsonc'
    conf.write_text(content, encoding='utf-8')
    with pytest.raises(ConfigError):
        load_json_conf(str(conf))


def test_write_artifact_to_file(tmp_path):
    target = tmp_path / 'nested' / 'out.json'
    write_artifact('{}\n', str(target))
    assert target.read_bytes() == b'{}\n'


def test_write_artifact_to_stdout(capsys):
    write_artifact('a,b\n')
    assert capsys.readouterr().out == 'a,b\n'


def test_format_to_table():
    table = format_to_table([['census', 'Counts'], ['lattice', 'Sets']])
    assert table.splitlines() == ['census   Counts  ', 'lattice  Sets    ']
    assert format_to_table([]) == 'No output.'
