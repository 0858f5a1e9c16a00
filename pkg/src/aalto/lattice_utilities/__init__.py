# Aalto - Nodal volume toolkit for arithmetic random waves
#
# SPDX-License-Identifier: Apache-2.0

"""Low-level kernels: lattice point enumeration, vector keys, sum tables
and reproducible random streams.
"""

from aalto.lattice_utilities.frequency_set import (
    FrequencySet,
    enumerate_frequencies
)
from aalto.lattice_utilities.equidistribution import (
    TEST_FUNCTIONS,
    equidistribution_deviation,
    equidistribution_statistic,
    sphere_monomial_average
)
from aalto.lattice_utilities.vector_keys import VectorKeys
from aalto.lattice_utilities.sum_tables import (
    SumTable,
    build_pair_table,
    stream_zero_sum_tuples
)
from aalto.lattice_utilities.random_streams import stream_generator
from aalto.lattice_utilities.parallel import default_workers, map_blocks
