from fractions import Fraction

import pytest

from aalto.lattice_utilities import enumerate_frequencies
from aalto.operations.arithmetic import (MOMENT_COLUMNS, b_k_exact, b_k_limit,
                                         b_k_rational_limit,
                                         inner_product_histogram,
                                         moment_table, sphere_cosine_moment)
from test.fixtures.oracles import brute_force_b_k


def moment_sets(max_m):
    for m in range(1, max_m + 1, 2):
        yield enumerate_frequencies(4, m)
    for m in range(1, max_m + 1):
        yield enumerate_frequencies(5, m)


def test_odd_moments_should_vanish_and_second_should_be_one_over_d():
    for frequency_set in moment_sets(20):
        histogram = inner_product_histogram(frequency_set)
        for k in (1, 3, 5, 7):
            assert b_k_exact(frequency_set, k, histogram) == 0
        assert b_k_exact(frequency_set, 2, histogram) == Fraction(1, frequency_set.d)


@pytest.mark.parametrize("d, m", [(3, 5), (4, 5), (5, 3)])
@pytest.mark.parametrize("k", [2, 4, 6, 8])
def test_b_k_exact_should_match_brute_force(frequency_set, d, m, k):
    fs = frequency_set(d, m)
    assert b_k_exact(fs, k) == brute_force_b_k(fs.points, m, k)


def test_histogram_should_count_all_pairs(d4_m5):
    values, counts = inner_product_histogram(d4_m5, chunk_rows=7, workers=3)
    assert counts.sum() == 48 ** 2
    assert values.max() == 5
    assert values.min() == -5


def test_b_k_limit_should_match_tabulated_values(oracle_values):
    for case in oracle_values['b_k_limit']:
        expected = Fraction(*case['value'])
        assert b_k_limit(case['d'], case['k']) == pytest.approx(float(expected), abs=1e-12)
        assert b_k_rational_limit(case['d'], case['k']) == expected


@pytest.mark.parametrize("d", range(2, 9))
@pytest.mark.parametrize("k", [2, 4, 6, 8])
def test_float_and_rational_limits_should_agree(d, k):
    assert b_k_limit(d, k) == pytest.approx(float(b_k_rational_limit(d, k)), abs=1e-12)


@pytest.mark.parametrize("k", [0, 9])
def test_b_k_exact_should_reject_orders_out_of_range(d4_m5, k):
    with pytest.raises(ValueError):
        b_k_exact(d4_m5, k)


def test_b_k_limit_should_reject_odd_orders():
    with pytest.raises(ValueError):
        b_k_limit(4, 3)


def test_moment_table_should_give_one_row_per_set_and_order(d4_m5, d5_m3):
    rows = moment_table([d4_m5, d5_m3], range(1, 9))
    assert len(rows) == 16
    assert [row.k for row in rows[:8]] == list(range(1, 9))
    assert rows[1].exact == Fraction(1, 4)
    assert rows[1].gap == pytest.approx(0.0, abs=1e-15)
    assert rows[0].limit == 0.0
    assert len(rows[0].to_row()) == len(MOMENT_COLUMNS)


@pytest.mark.parametrize("d", [4, 5, 6])
@pytest.mark.parametrize("k", [2, 4, 6])
def test_sphere_cosine_moment_should_estimate_the_limit(d, k):
    mean, se = sphere_cosine_moment(d, k, 200000, seed=3)
    assert abs(mean - b_k_limit(d, k)) < 4 * se


def test_high_moments_should_approach_their_limits():
    # the gap shrinks as the points equidistribute
    small = enumerate_frequencies(5, 1)
    large = enumerate_frequencies(5, 30)
    gap_small = abs(float(b_k_exact(small, 4)) - b_k_limit(5, 4))
    gap_large = abs(float(b_k_exact(large, 4)) - b_k_limit(5, 4))
    assert gap_large < gap_small


@pytest.mark.slow
def test_moment_identities_up_to_m_200():
    for frequency_set in moment_sets(200):
        histogram = inner_product_histogram(frequency_set)
        for k in (1, 3, 5, 7):
            assert b_k_exact(frequency_set, k, histogram) == 0
        assert b_k_exact(frequency_set, 2, histogram) == Fraction(1, frequency_set.d)


def test_empty_set_should_raise():
    frequency_set = enumerate_frequencies(2, 3)
    with pytest.raises(ValueError, match='no solutions'):
        b_k_exact(frequency_set, 2)
    with pytest.raises(ValueError, match='no solutions'):
        moment_table([frequency_set], [2])
