import numpy as np
import pytest

from aalto.exceptions import BudgetExceeded, TableSizeError
from aalto.lattice_utilities import (build_pair_table, enumerate_frequencies,
                                     stream_zero_sum_tuples)
from aalto.lattice_utilities.sum_tables import (build_triple_table, merge_counts,
                                                square_sum)
from test.fixtures.oracles import (brute_force_c4, brute_force_c6,
                                   zero_sum_quadruples)


def test_merge_counts_should_sum_duplicate_keys():
    keys, counts = merge_counts(np.array([5, -1, 5, 3, -1]), np.array([1, 2, 3, 4, 5]))
    assert keys.tolist() == [-1, 3, 5]
    assert counts.tolist() == [7, 4, 4]


def test_pair_table_should_count_all_pairs(d4_m5):
    table = build_pair_table(d4_m5)
    assert table.total == d4_m5.n ** 2
    assert table.count([0, 0, 0, 0]) == d4_m5.n
    assert np.all(np.diff(table.keys) > 0)


def test_pair_table_should_not_depend_on_chunking(d4_m5):
    one = build_pair_table(d4_m5, chunk_rows=7, workers=1)
    many = build_pair_table(d4_m5, chunk_rows=5, workers=4)
    assert np.array_equal(one.keys, many.keys)
    assert np.array_equal(one.counts, many.counts)


def test_pair_table_cap_should_raise(d4_m5):
    with pytest.raises(TableSizeError):
        build_pair_table(d4_m5, max_entries=10)


def test_lookup_should_give_zero_for_missing_keys(d4_m5):
    table = build_pair_table(d4_m5)
    assert table.count([4, 4, 4, 4]) == 0


def test_triple_table_should_count_all_triples(d5_m3):
    table = build_triple_table(d5_m3, build_pair_table(d5_m3))
    assert table.total == d5_m3.n ** 3
    assert square_sum(table.counts) == brute_force_c6(d5_m3.points)


@pytest.mark.parametrize("d, m", [(2, 25), (3, 3), (4, 3)])
def test_quadruple_stream_should_list_every_zero_sum_tuple(d, m):
    frequency_set = enumerate_frequencies(d, m)
    batches = list(stream_zero_sum_tuples(frequency_set, 4, batch_size=100))
    streamed = np.concatenate(batches)
    assert all(batch.shape[1] == 4 for batch in batches)
    assert not np.any(frequency_set.points[streamed].sum(axis=1))
    assert sorted(map(tuple, streamed.tolist())) == sorted(zero_sum_quadruples(frequency_set.points))


def test_pair_stream_should_pair_points_with_negatives(d4_m5):
    streamed = np.concatenate(list(stream_zero_sum_tuples(d4_m5, 2)))
    assert streamed.shape == (d4_m5.n, 2)
    assert np.array_equal(d4_m5.negation_index()[streamed[:, 0]], streamed[:, 1])


def test_sextuple_stream_should_match_brute_force_count():
    frequency_set = enumerate_frequencies(3, 2)
    total = sum(batch.shape[0] for batch in stream_zero_sum_tuples(frequency_set, 6, batch_size=5000))
    assert total == brute_force_c6(frequency_set.points)


def test_stream_should_respect_budget(d4_m5):
    with pytest.raises(BudgetExceeded):
        next(stream_zero_sum_tuples(d4_m5, 4, budget=brute_force_c4(d4_m5.points) - 1))


def test_stream_should_reject_odd_orders(d4_m5):
    with pytest.raises(ValueError):
        next(stream_zero_sum_tuples(d4_m5, 3))


def test_square_sum_should_be_exact_for_large_counts():
    counts = np.array([2 ** 40, 3], dtype=np.int64)
    assert square_sum(counts) == 2 ** 80 + 9
    assert square_sum(np.empty(0, dtype=np.int64)) == 0
