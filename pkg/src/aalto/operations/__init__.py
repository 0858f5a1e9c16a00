# Aalto - Nodal volume toolkit for arithmetic random waves
#
# SPDX-License-Identifier: Apache-2.0


"""Computations behind the aalto actions.
"""
from aalto.operations.arithmetic import (
    MOMENT_COLUMNS,
    check_alpha_bound,
    count_c4,
    moment_table,
    take_census
)

from aalto.operations.geometry import (
    INTEGRANDS,
    assemble_L_integrals,
    assembled_variance,
    exact_integrals,
    expansion_coefficients,
    k2_pointwise,
    singular_summary,
    torus_quadrature,
    verify_berry_cancellation
)

from aalto.operations.simulation import (
    MIN_BATCH_SAMPLES,
    batch_stats,
    sample_estimates
)

from aalto.operations.prediction import (
    expected_volume,
    reference_constants,
    variance_prediction
)
