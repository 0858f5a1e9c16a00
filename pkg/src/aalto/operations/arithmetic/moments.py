# Aalto - Nodal volume toolkit for arithmetic random waves
#
# SPDX-License-Identifier: Apache-2.0

"""Moments B_k of the normalised inner product of two frequencies.

    B_k = (1 / (m^k N^2)) sum_{mu1, mu2} (mu1 . mu2)^k

The sum runs over the histogram of Gram matrix entries, so B_k is an exact
Fraction. Its limit as m grows is the spherical average of cos^k of the
angle between two uniform unit vectors.
"""
from dataclasses import dataclass
from fractions import Fraction
from logging import getLogger
from math import exp, sqrt
from typing import Iterable, List, Tuple

import numpy as np
from scipy.special import gammaln

from aalto.lattice_utilities.equidistribution import sphere_monomial_average
from aalto.lattice_utilities.frequency_set import FrequencySet
from aalto.lattice_utilities.parallel import map_blocks
from aalto.lattice_utilities.random_streams import SPHERE_STREAM, stream_generator
from aalto.lattice_utilities.sum_tables import merge_counts

logger = getLogger('aalto')

MAX_K = 8


def inner_product_histogram(frequency_set: FrequencySet, workers: int = 1,
                            chunk_rows: int = 512) -> Tuple[np.ndarray, np.ndarray]:
    """Distinct values of mu1 . mu2 over E x E and their multiplicities."""
    frequency_set.require_points('The inner-product histogram')
    points = frequency_set.points

    def partial(start):
        block = points[start:start + chunk_rows] @ points.T
        return np.unique(block, return_counts=True)

    parts = map_blocks(partial, range(0, frequency_set.n, chunk_rows), workers)
    values = np.concatenate([p[0] for p in parts])
    counts = np.concatenate([p[1] for p in parts]).astype(np.int64)
    return merge_counts(values, counts)


def b_k_exact(frequency_set: FrequencySet, k: int, histogram=None) -> Fraction:
    """B_k as an exact rational.

    Raises
    ------
    ValueError
        If k is outside 1..8 or the set is empty.
    """
    if not 1 <= k <= MAX_K:
        raise ValueError(f'Moment order k must be in 1..{MAX_K}, got {k}')
    frequency_set.require_points(f'B_{k}')
    if histogram is None:
        histogram = inner_product_histogram(frequency_set)
    values, counts = histogram
    numerator = sum(int(c) * int(v) ** k for v, c in zip(values, counts))
    return Fraction(numerator, frequency_set.m ** k * frequency_set.n ** 2)


def b_k_limit(d: int, k: int) -> float:
    """Gamma(1/2 + k/2) Gamma(d/2) / (Gamma(k/2 + d/2) Gamma(1/2)), for even k >= 2.

    Equals 1/d at k = 2. Evaluated through log-Gamma.
    """
    if d < 2:
        raise ValueError(f'Dimension d must be at least 2, got {d}')
    if k < 2 or k % 2:
        raise ValueError(f'The limit is tabulated for even k >= 2, got {k}')
    return exp(gammaln((k + 1) / 2) + gammaln(d / 2) - gammaln((k + d) / 2) - gammaln(0.5))


def b_k_rational_limit(d: int, k: int) -> Fraction:
    """The same limit as a rational: (k-1)!! / (d (d+2) ... (d+k-2))."""
    if k < 2 or k % 2:
        raise ValueError(f'The limit is tabulated for even k >= 2, got {k}')
    return sphere_monomial_average(d, (k,))


@dataclass(frozen=True)
class MomentValue:
    m: int
    k: int
    exact: Fraction
    limit: float

    @property
    def gap(self) -> float:
        return abs(float(self.exact) - self.limit)

    def to_row(self) -> list:
        return [self.m, self.k, self.exact.numerator, self.exact.denominator, self.limit, self.gap]


MOMENT_COLUMNS = ['m', 'k', 'exact_num', 'exact_den', 'limit', 'gap']


def moment_value(frequency_set: FrequencySet, k: int, histogram=None) -> MomentValue:
    exact = b_k_exact(frequency_set, k, histogram)
    limit = 0.0 if k % 2 else b_k_limit(frequency_set.d, k)
    return MomentValue(m=frequency_set.m, k=k, exact=exact, limit=limit)


def moment_table(frequency_sets: Iterable[FrequencySet], ks: Iterable[int],
                 workers: int = 1) -> List[MomentValue]:
    """One MomentValue per (set, k), reusing each set's histogram."""
    ks = list(ks)
    rows = []
    for frequency_set in frequency_sets:
        histogram = inner_product_histogram(frequency_set, workers=workers)
        rows.extend(moment_value(frequency_set, k, histogram) for k in ks)
        logger.debug(f'Moments done for d={frequency_set.d}, m={frequency_set.m}')
    return rows


def sphere_cosine_moment(d: int, k: int, samples: int, seed: int) -> Tuple[float, float]:
    """Monte Carlo average of cos^k of the angle between two uniform unit vectors.

    By rotation invariance this is the average of u_1^k over the sphere.
    Returns (mean, standard error).
    """
    rng = stream_generator(seed, SPHERE_STREAM, d, k)
    g = rng.standard_normal((samples, d))
    values = (g[:, 0] / np.linalg.norm(g, axis=1)) ** k
    return float(values.mean()), float(values.std(ddof=1) / sqrt(samples))
