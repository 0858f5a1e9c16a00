# Aalto - Nodal volume toolkit for arithmetic random waves
#
# SPDX-License-Identifier: Apache-2.0

from concurrent.futures import ThreadPoolExecutor
from logging import getLogger
from os import cpu_count, environ
from typing import Callable, Iterable, List

logger = getLogger('aalto')

THREADS_VARIABLE = 'AALTO_THREADS'


def default_workers() -> int:
    """Thread count from AALTO_THREADS, else the number of CPUs."""
    value = environ.get(THREADS_VARIABLE)
    if value:
        try:
            workers = int(value)
        except ValueError:
            logger.warning(f'Ignoring {THREADS_VARIABLE}={value!r}: not an integer')
        else:
            if workers >= 1:
                return workers
            logger.warning(f'Ignoring {THREADS_VARIABLE}={value!r}: must be positive')
    return cpu_count() or 1


def map_blocks(func: Callable, items: Iterable, workers: int = 1) -> List:
    """Apply func to every item and return the results in input order.

    numpy releases the GIL inside its kernels, so a thread pool is enough
    for the array-heavy blocks used here.
    """
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(func, items))
