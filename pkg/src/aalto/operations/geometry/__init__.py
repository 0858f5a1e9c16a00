# Aalto - Nodal volume toolkit for arithmetic random waves
#
# SPDX-License-Identifier: Apache-2.0

"""Covariance geometry: spectral frames, exact torus integrals, the two-point
correlation K2 and the singular set.
"""

from aalto.operations.geometry.spectral import (
    SpectralFrame,
    covariance_complex,
    energy,
    eval_frame
    )

from aalto.operations.geometry.singular import (
    estimate_singular_measure,
    grid_singular_fraction,
    is_singular,
    sample_singular_points,
    singular_cube_fraction,
    singular_summary
    )

from aalto.operations.geometry.kacrice import (
    ExpansionCoefficients,
    K2Diagnostic,
    OmegaMatrix,
    berry_integrand,
    eta_theta_xi_integrals,
    expansion_coefficients,
    f_exact,
    f_series,
    k2_pointwise,
    k2_series,
    mc_norm_product,
    norm_product_expectation
    )

from aalto.operations.geometry.integrals import (
    INTEGRANDS,
    AssembledIntegral,
    ExactIntegral,
    assemble_L_integrals,
    assembled_variance,
    exact_integral,
    exact_integrals,
    torus_quadrature,
    verify_berry_cancellation
    )
