# Aalto - Nodal volume toolkit for arithmetic random waves
#
# SPDX-License-Identifier: Apache-2.0

"""This script defines the aalto subcommands.
The actions are imported to master.py, where they are executed.

Every action returns a JSON-ready dict; execute_action adds the command and
the run config and writes the artifact. create_multiaction-calls are made
after the parts are already defined.
"""
from logging import getLogger

import numpy as np

import aalto.operations as op
from aalto.action import action, create_multiaction
from aalto.exceptions import ConfigError, DegenerateFrameError
from aalto.lattice_utilities import (TEST_FUNCTIONS, enumerate_frequencies,
                                     equidistribution_statistic)
from aalto.lattice_utilities.random_streams import POINT_STREAM, stream_generator

logger = getLogger('aalto')

MOMENT_ORDERS = range(1, 9)
CENSUS_COLUMNS = ['m', 'n', 'c4', 'd_sym', 'd_diag', 'x4', 'c6']
K2_COLUMNS = ['x', 'r', 'singular', 'k2_mc', 'k2_se', 'k2_series', 'eps_monitor']
PREDICTION_COLUMNS = ['m', 'n', 'g_d', 'expected_volume', 'main_term', 'rw_bound',
                      'conjecture_bound', 'thm_bound_shape', 'budget_moment_shape',
                      'budget_x4_shape', 'budget_c6_shape', 'c4_lower_ratio', 'c4_upper_ratio']


def frequency_sets(config, skipped: list):
    """Yield the frequency set of every m in the run.

    m values that are not a sum of d squares are logged and listed in
    skipped instead.
    """
    for m in config.m_values:
        frequency_set = enumerate_frequencies(config.d, m, strict=config.strict_mode)
        if frequency_set.n == 0:
            logger.warning(f'No lattice points with |x|^2 = {m} in Z^{config.d}, skipping m={m}')
            skipped.append(f'm={m} (no lattice points)')
            continue
        yield frequency_set


def single_frequency_set(config):
    frequency_set = enumerate_frequencies(config.d, config.m, strict=config.strict_mode)
    if frequency_set.n == 0:
        raise ConfigError(f'No lattice points with |x|^2 = {config.m} in Z^{config.d}')
    return frequency_set


def lattice_table(record):
    header = ['m', 'n'] + [f'test_{i}' for i in sorted(TEST_FUNCTIONS)]
    rows = [[s['m'], s['n']] + [s['equidistribution'][str(i)] for i in sorted(TEST_FUNCTIONS)]
            for s in record['sets']]
    return header, rows


@action(table=lattice_table)
def lattice(context):
    """Frequency sets {x in Z^d : |x|^2 = m} and their equidistribution statistics."""
    sets = []
    empty = []
    for frequency_set in frequency_sets(context.run_config, empty):
        record = frequency_set.to_dict()
        record['equidistribution'] = {
            str(i): equidistribution_statistic(frequency_set, i) for i in sorted(TEST_FUNCTIONS)}
        sets.append(record)
        logger.info(f'm={frequency_set.m}: N={frequency_set.n}')
    return {'sets': sets, 'partial': False, 'skipped': empty}


def census_table(record):
    return CENSUS_COLUMNS, [[c[key] for key in CENSUS_COLUMNS] for c in record['censuses']]


@action(table=census_table)
def census(context):
    """Correlation counts C(4), its decomposition, C(6) within budget, and the growth fit of |C(4)|."""
    config = context.run_config
    censuses = []
    empty = []
    skipped = []
    for frequency_set in frequency_sets(config, empty):
        result = op.take_census(frequency_set, c6_budget=config.c6_budget,
                                max_entries=config.max_table_entries, workers=config.threads)
        if result.c6 is None:
            skipped.append(f'c6 at m={result.m}')
        censuses.append(result)
        logger.info(f'm={result.m}: N={result.n}, C(4)={result.c4}, C(6)={result.c6}')
    alpha_fit = None
    if config.d >= 4 and len(censuses) >= 5:
        alpha_fit = op.check_alpha_bound(censuses, config.d).to_dict()
    return {
        'censuses': [c.to_dict() for c in censuses],
        'alpha_fit': alpha_fit,
        'partial': bool(skipped),
        'skipped': empty + skipped
    }


def moments_table(record):
    return op.MOMENT_COLUMNS, record['rows']


@action(table=moments_table)
def moments(context):
    """Inner-product moments B_k, k = 1..8, exactly and against their limits."""
    config = context.run_config
    empty = []
    values = op.moment_table(frequency_sets(config, empty), MOMENT_ORDERS, workers=config.threads)
    return {
        'columns': op.MOMENT_COLUMNS,
        'rows': [value.to_row() for value in values],
        'partial': False,
        'skipped': empty
    }


def integrals_table(record):
    header = ['tag', 'exact_num', 'exact_den', 'value', 'quadrature']
    rows = [[tag, entry['value'][0], entry['value'][1], entry['value_float'], entry['quadrature']]
            for tag, entry in sorted(record['integrals'].items())]
    return header, rows


@action(dependencies=['census'], table=integrals_table, single_m=True)
def integrals(context):
    """Exact correlation-sum integrals with quadrature cross-checks, the assembled X, Y moments and the cancellation check."""
    config = context.run_config
    frequency_set = single_frequency_set(config)
    census = op.take_census(frequency_set, c6_budget=config.c6_budget,
                            max_entries=config.max_table_entries, workers=config.threads)
    exact = op.exact_integrals(frequency_set, budget=config.c6_budget, strict=False,
                               max_entries=config.max_table_entries, workers=config.threads)
    skipped = sorted(set(op.INTEGRANDS) - set(exact))
    records = {}
    for tag, value in exact.items():
        record = value.to_dict()
        record['quadrature'] = op.torus_quadrature(frequency_set, tag, config.grid,
                                                   workers=config.threads)
        records[tag] = record
    assembled = op.assemble_L_integrals(frequency_set, exact, c6=census.c6)
    return {
        'integrals': records,
        'assembled': [entry.to_dict() for entry in assembled],
        'assembled_variance': op.assembled_variance(frequency_set, assembled).to_dict(),
        'cancellation': op.verify_berry_cancellation().to_dict(),
        'partial': bool(skipped),
        'skipped': skipped
    }


def kacrice_table(record):
    rows = [[' '.join(f'{c:.12g}' for c in p['x'])] + [p[key] for key in K2_COLUMNS[1:]]
            for p in record['points'] if 'error' not in p]
    return K2_COLUMNS, rows


@action(table=kacrice_table, single_m=True)
def kacrice(context):
    """Two-point correlation K2 at random points by Monte Carlo and by the series, and the singular set measure."""
    config = context.run_config
    frequency_set = single_frequency_set(config)
    xs = stream_generator(config.seed, POINT_STREAM, 0).random((config.n_points, config.d))
    points = []
    for index, x in enumerate(xs):
        try:
            diagnostic = op.k2_pointwise(frequency_set, x, config.mc_samples, config.seed,
                                         workers=config.threads, stream_id=index)
        except DegenerateFrameError as err:
            logger.warning(f'Point {index} skipped: {err}')
            points.append({'x': x.tolist(), 'error': str(err)})
            continue
        points.append(diagnostic.to_dict())
    r4 = op.count_c4(frequency_set, max_entries=config.max_table_entries,
                     workers=config.threads) / frequency_set.n ** 4
    try:
        singular = op.singular_summary(frequency_set, config.singular_samples, config.seed, r4,
                                       workers=config.threads)
    except ValueError as err:
        raise ConfigError(str(err)) from err
    return {
        'points': points,
        'singular': singular,
        'coefficients': op.expansion_coefficients(config.d).to_dict()
    }


def simulate_table(record):
    rows = [[s['sample'], s['volume'], s['std_error']] for s in record['samples']]
    rows.append(['mean', record['summary']['mean'], record['summary']['mean_se']])
    return ['sample', 'volume', 'std_error'], rows


@action(table=simulate_table, single_m=True)
def simulate(context):
    """Crofton estimates of the nodal volume of sampled waves and their ensemble statistics."""
    config = context.run_config
    frequency_set = single_frequency_set(config)
    if config.n_samples >= op.MIN_BATCH_SAMPLES:
        stats = op.batch_stats(frequency_set, config.n_samples, config.n_lines, config.seed,
                               workers=config.threads, oversample=config.oversample)
        summary = stats.summary()
        volumes, errors = stats.volumes, stats.std_errors
    else:
        logger.warning(f'Variances need at least {op.MIN_BATCH_SAMPLES} samples, '
                       f'reporting the mean only')
        estimates = op.sample_estimates(frequency_set, config.n_samples, config.n_lines,
                                        config.seed, workers=config.threads,
                                        oversample=config.oversample)
        volumes = [e.volume for e in estimates]
        errors = [e.std_error for e in estimates]
        mean_se = float(np.std(volumes, ddof=1) / np.sqrt(len(volumes))) if len(volumes) > 1 else None
        summary = {'n_samples': config.n_samples, 'n_lines': config.n_lines,
                   'mean': float(np.mean(volumes)), 'mean_se': mean_se}
    summary['expected_volume'] = op.expected_volume(config.d, config.m)
    return {
        'summary': summary,
        'samples': [{'sample': i, 'volume': v, 'std_error': s}
                    for i, (v, s) in enumerate(zip(volumes, errors))]
    }


def predict_table(record):
    return PREDICTION_COLUMNS, [[p[key] for key in PREDICTION_COLUMNS] for p in record['predictions']]


@action(dependencies=['census'], table=predict_table)
def predict(context):
    """Main term of the variance, the bound ladder and the error budget shapes."""
    config = context.run_config
    predictions = []
    empty = []
    skipped = []
    for frequency_set in frequency_sets(config, empty):
        census = op.take_census(frequency_set, c6_budget=config.c6_budget,
                                max_entries=config.max_table_entries, workers=config.threads)
        if census.c6 is None:
            skipped.append(f'budget_c6_shape at m={census.m}')
        predictions.append(op.variance_prediction(config.d, frequency_set.m, census).to_dict())
    return {
        'predictions': predictions,
        'reference_constants': op.reference_constants(),
        'partial': bool(skipped),
        'skipped': empty + skipped
    }


create_multiaction('report', ['predict', 'census', 'moments', 'integrals', 'kacrice', 'simulate'],
                   description='Everything for one (d, m) in a single JSON document.')
