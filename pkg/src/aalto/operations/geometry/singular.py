# Aalto - Nodal volume toolkit for arithmetic random waves
#
# SPDX-License-Identifier: Apache-2.0

"""Singular points: where the phases of almost all frequencies align.

x is positive singular when more than (1 - 1/(4d)) N of the values
cos(2 pi mu.x) exceed 3/4, and negative singular when more than that many
are below -3/4. The cube-level singular set marks every cube of side 1/q,
q = ceil(sqrt(m)), that contains a singular point.
"""
from logging import getLogger
from math import isqrt, pi, sqrt
from typing import Tuple

import numpy as np

from aalto.lattice_utilities.frequency_set import FrequencySet
from aalto.lattice_utilities.parallel import map_blocks
from aalto.lattice_utilities.random_streams import (SINGULAR_STREAM, block_sizes,
                                                    stream_generator)

logger = getLogger('aalto')

COSINE_THRESHOLD = 0.75
MIN_SAMPLES = 1000
BLOCK = 16384
# |r| is at least this on the singular set
R_FLOOR = 1 / 16


def singular_signs(frequency_set: FrequencySet, xs: np.ndarray) -> np.ndarray:
    """+1, -1 or 0 for every row of xs (shape (P, d))."""
    cos = np.cos(2 * pi * (np.asarray(xs, dtype=float) @ frequency_set.points.T.astype(float)))
    needed = (1 - 1 / (4 * frequency_set.d)) * frequency_set.n
    positive = np.count_nonzero(cos > COSINE_THRESHOLD, axis=1) > needed
    negative = np.count_nonzero(cos < -COSINE_THRESHOLD, axis=1) > needed
    return positive.astype(np.int64) - negative.astype(np.int64)


def is_singular(frequency_set: FrequencySet, x) -> int:
    """Sign of singularity at x: 1 positive, -1 negative, 0 not singular."""
    x = np.asarray(x, dtype=float).reshape(1, frequency_set.d)
    return int(singular_signs(frequency_set, x)[0])


def estimate_singular_measure(frequency_set: FrequencySet, samples: int, seed: int,
                              workers: int = 1) -> Tuple[float, float]:
    """Monte Carlo fraction of uniform torus points that are singular.

    Returns (fraction, standard error).
    """
    if samples < MIN_SAMPLES:
        raise ValueError(f'Need at least {MIN_SAMPLES} samples, got {samples}')

    def block(item):
        index, size = item
        rng = stream_generator(seed, SINGULAR_STREAM, 0, index)
        xs = rng.random((size, frequency_set.d))
        return int(np.count_nonzero(singular_signs(frequency_set, xs)))

    hits = sum(map_blocks(block, enumerate(block_sizes(samples, BLOCK)), workers))
    fraction = hits / samples
    return fraction, sqrt(fraction * (1 - fraction) / samples)


def _negative_centre(frequency_set: FrequencySet):
    """A point where every cos(2 pi mu.x) = -1, if one exists.

    Half the all-ones vector works exactly when every mu has odd coordinate sum,
    which holds iff m is odd.
    """
    if frequency_set.m % 2 == 1:
        return np.full(frequency_set.d, 0.5)
    return None


def sample_singular_points(frequency_set: FrequencySet, count: int, seed: int,
                           radius: float = None, max_draws: int = 10 ** 8) -> np.ndarray:
    """Draw singular points by rejection from cubes around the aligned points.

    Proposals are uniform in a cube of half-side `radius` (default 1/(4 sqrt(m)))
    around 0 and, when it exists, around the point where every phase is -1;
    a proposal is kept only if it satisfies the singular-set definition.
    """
    if radius is None:
        radius = 1 / (4 * sqrt(frequency_set.m))
    centres = [np.zeros(frequency_set.d)]
    negative = _negative_centre(frequency_set)
    if negative is not None:
        centres.append(negative)
    centres = np.array(centres)
    accepted = []
    found = drawn = index = 0
    while found < count:
        if drawn >= max_draws:
            raise RuntimeError(f'Found only {found} singular points in {drawn} draws')
        rng = stream_generator(seed, SINGULAR_STREAM, 1, index)
        choice = rng.integers(0, centres.shape[0], BLOCK)
        xs = (centres[choice] + rng.uniform(-radius, radius, (BLOCK, frequency_set.d))) % 1.0
        keep = xs[singular_signs(frequency_set, xs) != 0]
        accepted.append(keep)
        found += keep.shape[0]
        drawn += BLOCK
        index += 1
    logger.debug(f'Accepted {found} singular points out of {drawn} proposals')
    return np.concatenate(accepted)[:count]


def cubes_per_side(m: int) -> int:
    """q = ceil(sqrt(m))."""
    q = isqrt(m)
    return q if q * q == m else q + 1


def _grid_points(grid: int, d: int, start: int, stop: int, offset: float = 0.5) -> np.ndarray:
    flat = np.arange(start, stop)
    return (np.stack(np.unravel_index(flat, (grid,) * d), axis=1) + offset) / grid


def grid_singular_fraction(frequency_set: FrequencySet, grid: int, workers: int = 1,
                           chunk: int = 65536) -> float:
    """Fraction of midpoints of a grid^d lattice that are singular."""
    total = grid ** frequency_set.d

    def block(start):
        xs = _grid_points(grid, frequency_set.d, start, min(start + chunk, total))
        return int(np.count_nonzero(singular_signs(frequency_set, xs)))

    return sum(map_blocks(block, range(0, total, chunk), workers)) / total


def singular_cube_fraction(frequency_set: FrequencySet, resolution: int = 8,
                           workers: int = 1) -> float:
    """Measure of the union of singular cubes of side 1/q, q = ceil(sqrt(m)).

    Each cube is probed at resolution^d interior midpoints; a cube counts as
    singular when a probe is singular.
    """
    d = frequency_set.d
    q = cubes_per_side(frequency_set.m)
    fine = q * resolution
    probes = _grid_points(fine, d, 0, fine ** d)
    cube_index = np.floor(probes * q).astype(np.int64) @ (q ** np.arange(d))
    chunks = range(0, probes.shape[0], BLOCK)

    def block(start):
        signs = singular_signs(frequency_set, probes[start:start + BLOCK])
        return np.unique(cube_index[start:start + BLOCK][signs != 0])

    marked = np.unique(np.concatenate(map_blocks(block, chunks, workers) or [np.empty(0, np.int64)]))
    return marked.shape[0] / q ** d


def singular_measure_bound(r_value: float, order: int = 4) -> float:
    """16^order R(order), the bound on the singular measure."""
    return 16.0 ** order * r_value


def singular_summary(frequency_set: FrequencySet, samples: int, seed: int, r4: float,
                     workers: int = 1) -> dict:
    fraction, se = estimate_singular_measure(frequency_set, samples, seed, workers)
    return {
        'fraction': fraction,
        'std_error': se,
        'bound': singular_measure_bound(r4),
        'within_bound': fraction <= singular_measure_bound(r4) + 3 * se,
        'cubes_per_side': cubes_per_side(frequency_set.m)
    }
