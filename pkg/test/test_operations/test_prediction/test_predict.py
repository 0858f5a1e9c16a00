from math import pi, sqrt

import pytest

from aalto.operations.arithmetic import take_census
from aalto.operations.prediction import (expected_volume, g_constant, main_term_constant,
                                         reference_constants, variance_prediction)


def test_g_constant(oracle_values):
    for entry in oracle_values['g_constant']:
        assert g_constant(entry['d']) == pytest.approx(entry['value'], rel=1e-12)


def test_g_constant_should_need_positive_dimension():
    with pytest.raises(ValueError):
        g_constant(0)


def test_expected_volume():
    assert expected_volume(4, 5) == pytest.approx(1.5 * pi * sqrt(5 / 4))
    assert expected_volume(2, 1) == pytest.approx(pi / sqrt(2))


def test_main_term_constant_d4():
    assert main_term_constant(4) == pytest.approx(pi ** 2 / 128, rel=1e-12)


def test_reference_constants(oracle_values):
    constants = reference_constants()
    assert constants['c2'] == pytest.approx(pi ** 2 / 128)
    assert constants['c3'] == pytest.approx(oracle_values['reference_constants']['c3'])
    assert constants['c3'] == pytest.approx(32 / 375)
    assert constants['main_constant_d2'] == pytest.approx(pi ** 2 / 128)


@pytest.fixture(scope='module')
def d4_m5_census(frequency_set):
    return take_census(frequency_set(4, 5), c6_budget=10 ** 9)


def test_prediction_ladder(d4_m5_census):
    assert d4_m5_census.c6 is not None
    prediction = variance_prediction(4, 5, d4_m5_census)
    assert prediction.n == 48
    assert prediction.main_term == pytest.approx(pi ** 2 / 128 * 5 / 48 ** 2)
    assert prediction.alpha == pytest.approx(2 / 3)
    assert prediction.thm_bound_shape == pytest.approx(5 * 48 ** (-5 / 3))
    assert (prediction.main_term < prediction.thm_bound_shape
            < prediction.conjecture_bound < prediction.rw_bound)
    assert prediction.budget_moment_shape == pytest.approx(5 ** -0.25)
    assert prediction.c4_upper_ratio == pytest.approx(d4_m5_census.c4 / 48 ** (7 / 3))
    assert prediction.budget_c6_shape == pytest.approx(d4_m5_census.c6 / 48 ** 4)


def test_prediction_record(d4_m5_census):
    record = variance_prediction(4, 5, d4_m5_census).to_dict()
    assert record['main_term_constant'] == pytest.approx(pi ** 2 / 128)
    assert record['expected_volume'] == pytest.approx(expected_volume(4, 5))
    assert 'shape_values' in record


def test_prediction_without_c6(frequency_set):
    census = take_census(frequency_set(4, 5), c6_budget=10)
    assert census.c6 is None
    assert variance_prediction(4, 5, census).budget_c6_shape is None


def test_low_dimensions_have_no_power_saving_shape(frequency_set):
    prediction = variance_prediction(3, 5, take_census(frequency_set(3, 5)))
    assert prediction.alpha is None
    assert prediction.thm_bound_shape is None
    assert prediction.lower_bound_shape == pytest.approx(24 ** 1)
    prediction = variance_prediction(2, 5, take_census(frequency_set(2, 5)))
    assert prediction.lower_bound_shape is None


def test_mismatched_census_should_raise(d4_m5_census):
    with pytest.raises(ValueError):
        variance_prediction(4, 3, d4_m5_census)
    with pytest.raises(ValueError):
        variance_prediction(5, 5, d4_m5_census)
