# Aalto - Nodal volume toolkit for arithmetic random waves
#
# SPDX-License-Identifier: Apache-2.0

"""Counter-based random streams.

Every random draw in aalto comes from a Philox generator keyed by
(seed, stream, index). A block of work owns its key, so results do not
depend on which thread runs it or in which order.
"""
import numpy as np

WAVE_STREAM = 1
LINE_STREAM = 2
GAUSSIAN_STREAM = 3
SINGULAR_STREAM = 4
BOOTSTRAP_STREAM = 5
POINT_STREAM = 6
SPHERE_STREAM = 7
MATRIX_STREAM = 8


def stream_generator(seed: int, stream: int, *index: int) -> np.random.Generator:
    """Return the generator owning key (seed, stream, *index)."""
    if seed < 0:
        raise ValueError(f'Seed must be non-negative, got {seed}')
    entropy = [int(seed), int(stream)] + [int(i) for i in index]
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(entropy)))


def block_sizes(total: int, block: int):
    """Split `total` draws into consecutive blocks of at most `block`."""
    full, rest = divmod(total, block)
    sizes = [block] * full
    if rest:
        sizes.append(rest)
    return sizes
