# Aalto - Nodal volume toolkit for arithmetic random waves
#
# SPDX-License-Identifier: Apache-2.0

"""Sum tables and zero-sum tuple streams over a frequency set.

A sum table stores, for every vector v, how many ordered tuples of points
add up to v. Keys come from VectorKeys, so tables can be queried with
linear combinations of keys without decoding vectors.

Zero-sum tuples of length 2h are streamed meet-in-the-middle: every
h-tuple is keyed by its sum, and a head h-tuple with sum v is matched with
every tail h-tuple with sum -v.
"""
from dataclasses import dataclass
from logging import getLogger
from typing import Iterator

import numpy as np

from aalto.exceptions import BudgetExceeded, TableSizeError
from aalto.lattice_utilities.frequency_set import FrequencySet
from aalto.lattice_utilities.parallel import map_blocks
from aalto.lattice_utilities.vector_keys import VectorKeys

logger = getLogger('aalto')

DEFAULT_MAX_ENTRIES = 50_000_000
DEFAULT_BATCH = 1 << 18


@dataclass(frozen=True, eq=False)
class SumTable:
    """Sorted keys of the reachable sums and their representation counts."""
    encoder: VectorKeys
    keys: np.ndarray
    counts: np.ndarray

    @property
    def support_size(self) -> int:
        return int(self.keys.shape[0])

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    def lookup(self, keys: np.ndarray) -> np.ndarray:
        """Counts for the given keys, zero where a key is absent."""
        keys = np.asarray(keys, dtype=np.int64)
        position = np.searchsorted(self.keys, keys)
        position = np.minimum(position, self.support_size - 1)
        found = self.keys[position] == keys
        return np.where(found, self.counts[position], 0)

    def count(self, vector) -> int:
        return int(self.lookup(self.encoder.encode(np.asarray([vector])))[0])

    def vectors(self) -> np.ndarray:
        return self.encoder.decode(self.keys)


def merge_counts(keys: np.ndarray, counts: np.ndarray):
    """Collapse duplicate keys, summing their counts exactly."""
    if keys.size == 0:
        return keys.astype(np.int64), counts.astype(np.int64)
    order = np.argsort(keys, kind='stable')
    keys = keys[order]
    counts = counts[order]
    starts = np.flatnonzero(np.r_[True, keys[1:] != keys[:-1]])
    return keys[starts], np.add.reduceat(counts, starts)


def build_pair_table(frequency_set: FrequencySet, max_entries: int = DEFAULT_MAX_ENTRIES,
                     workers: int = 1, chunk_rows: int = 256) -> SumTable:
    """Representation counts a(v) = #{(mu1, mu2) : mu1 + mu2 = v}.

    Partial tables are built over chunks of mu1 and merged in chunk order.

    Raises
    ------
    TableSizeError
        If the support of a would exceed max_entries or keys would overflow.
    """
    encoder = VectorKeys.for_sums(frequency_set.d, frequency_set.m, 2)
    point_keys = encoder.encode(frequency_set.points)
    n = frequency_set.n

    def partial(start):
        block = point_keys[start:start + chunk_rows]
        sums = (block[:, None] + point_keys[None, :]).ravel()
        return np.unique(sums, return_counts=True)

    parts = map_blocks(partial, range(0, n, chunk_rows), workers)
    keys = np.concatenate([p[0] for p in parts]) if parts else np.empty(0, np.int64)
    counts = np.concatenate([p[1] for p in parts]) if parts else np.empty(0, np.int64)
    keys, counts = merge_counts(keys, counts.astype(np.int64))
    if keys.shape[0] > max_entries:
        raise TableSizeError(f'Pair-sum table needs {keys.shape[0]} entries, cap is {max_entries}')
    logger.debug(f'Pair-sum table for d={frequency_set.d}, m={frequency_set.m}: '
                 f'{keys.shape[0]} distinct sums')
    return SumTable(encoder=encoder, keys=keys, counts=counts)


class HalfTupleIndex:
    """All ordered h-tuples of point indices, sorted by the key of their sum."""

    def __init__(self, frequency_set: FrequencySet, half: int, encoder: VectorKeys,
                 max_entries: int = DEFAULT_MAX_ENTRIES):
        n = frequency_set.n
        if n ** half > max_entries:
            raise TableSizeError(f'Index of {half}-tuples needs {n ** half} entries, cap is {max_entries}')
        self.half = half
        grids = np.indices((n,) * half).reshape(half, -1).T
        point_keys = encoder.encode(frequency_set.points)
        sums = point_keys[grids].sum(axis=1)
        order = np.argsort(sums, kind='stable')
        self.tuples = grids[order]
        sorted_sums = sums[order]
        starts = np.flatnonzero(np.r_[True, sorted_sums[1:] != sorted_sums[:-1]])
        self.keys = sorted_sums[starts]
        self.starts = starts
        self.lengths = np.diff(np.r_[starts, sorted_sums.shape[0]])

    def match_negations(self):
        """For each key v present with -v also present: (head group, tail group)."""
        position = np.searchsorted(self.keys, -self.keys)
        position = np.minimum(position, self.keys.shape[0] - 1)
        found = self.keys[position] == -self.keys
        heads = np.flatnonzero(found)
        return heads, position[found]


def stream_zero_sum_tuples(frequency_set: FrequencySet, order: int, budget: int = None,
                           batch_size: int = DEFAULT_BATCH,
                           max_entries: int = DEFAULT_MAX_ENTRIES) -> Iterator[np.ndarray]:
    """Yield every zero-sum ordered tuple of the given even order in batches.

    Each batch is an int64 array of shape (B, order) of point indices.
    Memory stays proportional to the half-tuple index and the batch size.

    Raises
    ------
    BudgetExceeded
        If the number of tuples exceeds budget.
    """
    if order not in (2, 4, 6):
        raise ValueError(f'Correlation order must be 2, 4 or 6, got {order}')
    half = order // 2
    encoder = VectorKeys.for_sums(frequency_set.d, frequency_set.m, half)
    index = HalfTupleIndex(frequency_set, half, encoder, max_entries)
    heads, tails = index.match_negations()
    sizes = index.lengths[heads] * index.lengths[tails]
    total = int(sizes.sum())
    if budget is not None and total > budget:
        raise BudgetExceeded(f'{total} correlations of order {order} exceed the budget {budget}')
    logger.debug(f'Streaming {total} correlations of order {order} '
                 f'for d={frequency_set.d}, m={frequency_set.m}')
    ends = np.cumsum(sizes)
    first = 0
    while first < heads.shape[0]:
        offset = ends[first] - sizes[first]
        last = int(np.searchsorted(ends, offset + batch_size, side='right'))
        last = max(last, first + 1)
        yield _expand_groups(index, heads[first:last], tails[first:last], sizes[first:last])
        first = last


def _expand_groups(index: HalfTupleIndex, heads: np.ndarray, tails: np.ndarray,
                   sizes: np.ndarray) -> np.ndarray:
    group = np.repeat(np.arange(heads.shape[0]), sizes)
    local = np.arange(group.shape[0]) - np.repeat(np.cumsum(sizes) - sizes, sizes)
    tail_length = index.lengths[tails][group]
    head_rows = index.starts[heads][group] + local // tail_length
    tail_rows = index.starts[tails][group] + local % tail_length
    return np.hstack([index.tuples[head_rows], index.tuples[tail_rows]])


def build_triple_table(frequency_set: FrequencySet, pair_table: SumTable,
                       max_entries: int = DEFAULT_MAX_ENTRIES, workers: int = 1,
                       chunk_rows: int = 16) -> SumTable:
    """Representation counts t(u) = #{(mu1, mu2, mu3) : mu1 + mu2 + mu3 = u}.

    Built as t(u) = sum_mu a(u - mu) from the pair table, one chunk of
    points at a time.
    """
    encoder = VectorKeys.for_sums(frequency_set.d, frequency_set.m, 3)
    pair_keys = encoder.encode(pair_table.vectors())
    point_keys = encoder.encode(frequency_set.points)

    def partial(start):
        block = point_keys[start:start + chunk_rows]
        sums = (block[:, None] + pair_keys[None, :]).ravel()
        weights = np.tile(pair_table.counts, block.shape[0])
        return merge_counts(sums, weights)

    parts = map_blocks(partial, range(0, frequency_set.n, chunk_rows), workers)
    keys, counts = merge_counts(np.concatenate([p[0] for p in parts]),
                                np.concatenate([p[1] for p in parts]))
    if keys.shape[0] > max_entries:
        raise TableSizeError(f'Triple-sum table needs {keys.shape[0]} entries, cap is {max_entries}')
    logger.debug(f'Triple-sum table for d={frequency_set.d}, m={frequency_set.m}: '
                 f'{keys.shape[0]} distinct sums')
    return SumTable(encoder=encoder, keys=keys, counts=counts)


def square_sum(counts: np.ndarray) -> int:
    """Exact sum of squared counts, leaving int64 when it could overflow."""
    if counts.size == 0:
        return 0
    if int(counts.max()) * int(counts.sum()) < 2 ** 63:
        return int(np.sum(counts * counts))
    return int(sum(int(c) * int(c) for c in counts))
