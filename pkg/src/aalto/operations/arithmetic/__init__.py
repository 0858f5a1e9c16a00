# Aalto - Nodal volume toolkit for arithmetic random waves
#
# SPDX-License-Identifier: Apache-2.0

"""Exact counting: correlations and inner-product moments.
"""

from aalto.operations.arithmetic.correlations import (
    AlphaFit,
    CorrelationCensus,
    alpha_exponent,
    check_alpha_bound,
    count_c4,
    count_c6,
    decompose_c4,
    pair_sum_table,
    take_census
    )

from aalto.operations.arithmetic.moments import (
    MOMENT_COLUMNS,
    MomentValue,
    b_k_exact,
    b_k_limit,
    b_k_rational_limit,
    inner_product_histogram,
    moment_table,
    moment_value,
    sphere_cosine_moment
    )
