# Aalto - Nodal volume toolkit for arithmetic random waves
#
# SPDX-License-Identifier: Apache-2.0

"""Integer keys for short lattice vectors.

A vector v with |v_i| <= bound is mapped to sum v_i * b^i with the
balanced base b = 2*bound + 1. The map is injective on that box and
linear, so key(u + v) = key(u) + key(v) as long as u + v stays in the box.
"""
from logging import getLogger
from math import isqrt

import numpy as np

from aalto.exceptions import TableSizeError

logger = getLogger('aalto')

KEY_LIMIT = 2 ** 62


class VectorKeys:
    """Encoder between lattice vectors of Z^d and int64 keys."""

    def __init__(self, d: int, bound: int):
        if d < 1 or bound < 0:
            raise ValueError(f'Invalid key box: d={d}, bound={bound}')
        self.d = d
        self.bound = bound
        self.base = 2 * bound + 1
        if self.base ** d >= KEY_LIMIT:
            raise TableSizeError(
                f'Vectors with coordinates up to {bound} in dimension {d} '
                f'do not fit in 64-bit keys')
        self.powers = np.array([self.base ** i for i in range(d)], dtype=np.int64)

    @classmethod
    def for_sums(cls, d: int, m: int, terms: int) -> 'VectorKeys':
        """Encoder large enough for sums of `terms` points of |x|^2 = m."""
        return cls(d, terms * isqrt(m))

    def encode(self, vectors: np.ndarray) -> np.ndarray:
        vectors = np.asarray(vectors, dtype=np.int64)
        return vectors @ self.powers

    def decode(self, keys: np.ndarray) -> np.ndarray:
        keys = np.atleast_1d(np.asarray(keys, dtype=np.int64))
        shifted = keys + (self.base ** self.d - 1) // 2
        digits = np.empty(keys.shape + (self.d,), dtype=np.int64)
        for i in range(self.d):
            digits[..., i] = shifted % self.base - self.bound
            shifted = shifted // self.base
        return digits
