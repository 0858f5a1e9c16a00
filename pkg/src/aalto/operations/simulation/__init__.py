# Aalto - Nodal volume toolkit for arithmetic random waves
#
# SPDX-License-Identifier: Apache-2.0

from aalto.operations.simulation.waves import (
    WaveSample,
    eval_wave,
    sample_wave
    )

from aalto.operations.simulation.crofton import (
    MIN_BATCH_SAMPLES,
    BatchStats,
    NodalEstimate,
    batch_stats,
    crofton_volume,
    crossing_rate,
    kappa,
    line_zero_counts,
    random_lines,
    sample_estimates,
    transect_roots,
    transect_zero_count
    )
