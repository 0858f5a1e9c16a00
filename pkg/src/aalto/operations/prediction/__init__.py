# Aalto - Nodal volume toolkit for arithmetic random waves
#
# SPDX-License-Identifier: Apache-2.0

from aalto.operations.prediction.predict import (
    VariancePrediction,
    expected_volume,
    g_constant,
    main_term_constant,
    reference_constants,
    variance_prediction
    )
