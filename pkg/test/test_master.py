"""Command line runs through aalto.scripts.master.main."""
import json
from math import pi

import pytest

from aalto.action import (EXIT_BUDGET, EXIT_CONFIG, EXIT_OK, check_action_validity,
                          registered_actions)
from aalto.scripts.master import main

SIMULATE_ARGS = ['simulate', '--d', '4', '--m', '5', '--samples', '10', '--lines', '100', '--seed', '7']


@pytest.fixture
def run(tmp_path):
    """Run main with the output written to tmp_path/<name>; return (exit code, path)."""
    def run_main(args, name='out.json'):
        target = tmp_path / name
        return main(args + ['--output', str(target)]), target
    return run_main


def load(path):
    with open(path, encoding='utf-8') as f:
        return json.load(f)


def test_actions_should_be_registered():
    for name in ['lattice', 'census', 'moments', 'integrals', 'kacrice', 'simulate', 'predict', 'report']:
        assert check_action_validity(name)
    assert registered_actions['report'].single_m
    assert not registered_actions['census'].single_m


def test_list(caplog):
    assert main(['list']) == EXIT_OK
    assert 'census' in caplog.text


def test_unknown_action(caplog):
    assert main(['nope']) == EXIT_CONFIG
    assert 'No action nope found' in caplog.text


def test_census(run):
    code, target = run(['census', '--d', '4', '--m', '1'])
    assert code == EXIT_OK
    record = load(target)
    assert record['command'] == 'census'
    assert record['config']['m_values'] == [1]
    assert record['censuses'][0]['c4'] == 168
    assert record['censuses'][0]['c6'] == 5120
    assert record['partial'] is False


def test_census_over_budget_should_be_partial(run):
    code, target = run(['census', '--d', '4', '--m', '1', '--c6-budget', '10'])
    assert code == EXIT_BUDGET
    record = load(target)
    assert record['partial'] is True
    assert record['censuses'][0]['c6'] is None
    assert record['skipped'] == ['c6 at m=1']


def test_census_csv(run):
    code, target = run(['census', '--d', '5', '--m', '1..3', '--format', 'csv'], 'out.csv')
    assert code == EXIT_OK
    lines = target.read_text(encoding='utf-8').splitlines()
    assert lines[0] == 'm,n,c4,d_sym,d_diag,x4,c6'
    assert [line.split(',')[:2] for line in lines[1:]] == [['1', '10'], ['2', '40'], ['3', '80']]


def test_census_should_skip_m_without_lattice_points(run, caplog):
    code, target = run(['census', '--d', '3', '--m', '1..10'])
    assert code == EXIT_OK
    record = load(target)
    assert [c['m'] for c in record['censuses']] == [1, 2, 3, 4, 5, 6, 8, 9, 10]
    assert record['skipped'] == ['m=7 (no lattice points)']
    assert record['partial'] is False
    assert 'skipping m=7' in caplog.text


def test_moments_should_skip_m_without_lattice_points(run):
    code, target = run(['moments', '--d', '2', '--m', '1..5'])
    assert code == EXIT_OK
    record = load(target)
    assert sorted({row[0] for row in record['rows']}) == [1, 2, 4, 5]
    assert len(record['rows']) == 4 * 8
    assert record['skipped'] == ['m=3 (no lattice points)']


def test_single_m_action_without_lattice_points(run):
    code, target = run(['simulate', '--d', '3', '--m', '7'])
    assert code == EXIT_CONFIG
    assert not target.exists()


def test_strict_mode_should_reject_even_m(run):
    code, target = run(['census', '--d', '4', '--m', '6'])
    assert code == EXIT_CONFIG
    assert not target.exists()
    code, _ = run(['census', '--d', '4', '--m', '6', '--no-strict'])
    assert code == EXIT_OK


def test_single_m_action_should_reject_ranges(run):
    code, _ = run(['simulate', '--d', '4', '--m', '1..5:odd'])
    assert code == EXIT_CONFIG


def test_report_should_not_write_csv(run):
    code, _ = run(['report', '--d', '4', '--m', '1', '--format', 'csv'], 'out.csv')
    assert code == EXIT_CONFIG


def test_invalid_config_file(run, tmp_path):
    conf = tmp_path / 'bad.jsonc'
    conf.write_text('{"RUN": {"d": 4,', encoding='utf-8')
    code, _ = run(['census', '--config', str(conf)])
    assert code == EXIT_CONFIG


def test_predict(run):
    code, target = run(['predict', '--d', '4', '--m', '1..5:odd'])
    assert code == EXIT_OK
    record = load(target)
    assert [p['m'] for p in record['predictions']] == [1, 3, 5]
    assert record['predictions'][0]['main_term_constant'] == pytest.approx(pi ** 2 / 128)


def test_lattice(run):
    code, target = run(['lattice', '--d', '3', '--m', '1..3'])
    assert code == EXIT_OK
    assert [s['n'] for s in load(target)['sets']] == [6, 12, 8]


def test_moments(run):
    code, target = run(['moments', '--d', '5', '--m', '1..2'])
    assert code == EXIT_OK
    record = load(target)
    assert record['rows']
    assert len(record['columns']) == len(record['rows'][0])


def test_integrals(run):
    code, target = run(['integrals', '--d', '4', '--m', '1', '--grid', '8'])
    assert code == EXIT_OK
    record = load(target)
    assert record['cancellation']['first_order_vanishes'] is True
    assert record['integrals']['int_r2']['value'] == [1, 8]
    assert record['integrals']['int_r2']['quadrature'] == pytest.approx(1 / 8)
    assert record['assembled_variance']['complete'] is True


def test_kacrice(run):
    code, target = run(['kacrice', '--d', '4', '--m', '5', '--points', '2',
                        '--mc-samples', '2000', '--singular-samples', '1000'])
    assert code == EXIT_OK
    record = load(target)
    assert len(record['points']) == 2
    assert record['singular']['cubes_per_side'] == 3
    assert record['coefficients']['a1'] == [1, 4]


def test_kacrice_should_respect_table_cap(run):
    code, target = run(['kacrice', '--d', '4', '--m', '5', '--points', '1', '--mc-samples', '1000',
                        '--singular-samples', '1000', '--max-table-entries', '100'])
    assert code == EXIT_BUDGET
    assert not target.exists()


def test_simulate_output_should_be_reproducible(run, monkeypatch, caplog):
    outputs = []
    for threads in ['1', '1', '4']:
        monkeypatch.setenv('AALTO_THREADS', threads)
        code, target = run(SIMULATE_ARGS)
        assert code == EXIT_OK
        outputs.append(target.read_bytes())
    assert outputs[0] == outputs[1] == outputs[2]
    assert 'mean only' in caplog.text
    record = load(target)
    assert len(record['samples']) == 10
    assert record['summary']['expected_volume'] == pytest.approx(1.5 * pi * 5 ** 0.5 / 2)


def test_simulate_to_stdout(capsys):
    assert main(SIMULATE_ARGS + ['--format', 'csv']) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == 'sample,volume,std_error'
    assert len(lines) == 12
    assert lines[-1].startswith('mean,')


def test_report(run):
    code, target = run(['report', '--d', '4', '--m', '1', '--samples', '30', '--lines', '50',
                        '--points', '1', '--mc-samples', '1000', '--singular-samples', '1000',
                        '--grid', '8'])
    assert code == EXIT_OK
    record = load(target)
    assert record['command'] == 'report'
    for name in ['predict', 'census', 'moments', 'integrals', 'kacrice', 'simulate']:
        assert name in record
    assert record['partial'] is False
    assert 'raw_variance' in record['simulate']['summary']
