# Aalto - Nodal volume toolkit for arithmetic random waves
#
# SPDX-License-Identifier: Apache-2.0

"""Frequency sets: the integer lattice points on the sphere |x|^2 = m in Z^d.
"""
from dataclasses import dataclass
from functools import cached_property
from logging import getLogger
from math import isqrt
from typing import Iterator, List, Tuple

import numpy as np

from aalto.exceptions import StrictModeError

logger = getLogger('aalto')

# keeps inner products and their 6th powers inside 128-bit intermediates
MAX_M = 2 ** 31


@dataclass(frozen=True, eq=False)
class FrequencySet:
    """The set E_m of lattice points with |mu|^2 = m, in lexicographic order.

    Instances are immutable: the point array is flagged read-only, so a set
    can be shared between threads.
    """
    d: int
    m: int
    points: np.ndarray

    def __post_init__(self):
        self.points.setflags(write=False)

    @property
    def n(self) -> int:
        return int(self.points.shape[0])

    @property
    def radius_bound(self) -> int:
        """Largest possible absolute coordinate, floor(sqrt(m))."""
        return isqrt(self.m)

    def require_points(self, operation: str):
        """Raise ValueError if the set is empty, i.e. m is not a sum of d squares."""
        if self.n == 0:
            raise ValueError(f'{operation} needs lattice points, but |x|^2 = {self.m} '
                             f'has no solutions in Z^{self.d}')

    def frequencies(self) -> List[Tuple[int, ...]]:
        return [tuple(int(c) for c in row) for row in self.points]

    def negation_index(self) -> np.ndarray:
        """Index of -mu for every mu.

        Negation reverses lexicographic order, so -points[i] is points[n-1-i].
        """
        return np.arange(self.n - 1, -1, -1)

    def representatives(self) -> np.ndarray:
        """One index per antipodal pair {mu, -mu}: the lexicographically larger one."""
        return np.arange(self.n // 2, self.n)

    @cached_property
    def gram(self) -> np.ndarray:
        """Matrix of inner products mu_i . mu_j (entries bounded by m)."""
        gram = self.points @ self.points.T
        gram.setflags(write=False)
        return gram

    def to_dict(self) -> dict:
        return {
            'd': self.d,
            'm': self.m,
            'n': self.n,
            'points': self.points.tolist()
        }


def enumerate_frequencies(d: int, m: int, strict: bool = True) -> FrequencySet:
    """Enumerate all integer solutions of x_1^2 + ... + x_d^2 = m.

    Recursive coordinate descent: at depth i the remaining budget
    m - sum(x_j^2) bounds |x_i|, and the last coordinate is fixed by the
    budget being a perfect square.

    Arguments
    ---------
    d
        Dimension, at least 2.
    m
        Squared radius, 1 <= m <= 2^31.
    strict
        Reject even m when d = 4 (the odd-m assumption of the variance bound).

    Raises
    ------
    ValueError
        If d < 2, m < 1 or m exceeds the overflow guard.
    StrictModeError
        If strict is set, d = 4 and m is even.
    """
    if d < 2:
        raise ValueError(f'Dimension d must be at least 2, got {d}')
    if m < 1:
        raise ValueError(f'Squared radius m must be at least 1, got {m}')
    if m > MAX_M:
        raise ValueError(f'Squared radius m={m} exceeds the overflow guard 2^31')
    if strict and d == 4 and m % 2 == 0:
        raise StrictModeError(f'Even m={m} is not admissible for d=4 in strict mode')
    rows = list(_descend(d, m))
    points = np.array(rows, dtype=np.int64).reshape(len(rows), d)
    logger.debug(f'Enumerated {len(rows)} frequencies for d={d}, m={m}')
    return FrequencySet(d=d, m=m, points=points)


def _descend(depth: int, budget: int) -> Iterator[List[int]]:
    if depth == 1:
        root = isqrt(budget)
        if root * root == budget:
            if root == 0:
                yield [0]
            else:
                yield [-root]
                yield [root]
        return
    bound = isqrt(budget)
    for x in range(-bound, bound + 1):
        for tail in _descend(depth - 1, budget - x * x):
            yield [x] + tail
