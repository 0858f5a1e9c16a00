# Aalto - Nodal volume toolkit for arithmetic random waves
#
# SPDX-License-Identifier: Apache-2.0

"""Closed-form predictions for the nodal volume and the ladder of variance bounds.

Bounds written with an unspecified constant and epsilon are reported as
shape values: implied constant 1, epsilon 0.
"""
from dataclasses import asdict, dataclass
from logging import getLogger
from math import exp, log, pi, sqrt
from typing import Optional

from scipy.special import gammaln

from aalto.operations.arithmetic.correlations import CorrelationCensus, alpha_exponent

logger = getLogger('aalto')


def g_constant(d: int) -> float:
    """G_d = sqrt(4 pi) Gamma((d+1)/2) / Gamma(d/2)."""
    if d < 1:
        raise ValueError(f'Dimension d must be positive, got {d}')
    return sqrt(4 * pi) * exp(gammaln((d + 1) / 2) - gammaln(d / 2))


def expected_volume(d: int, m: int) -> float:
    """Mean nodal volume G_d sqrt(m/d)."""
    return g_constant(d) * sqrt(m / d)


def main_term_constant(d: int) -> float:
    """(d-1) G_d^2 / (d (d+2)^3), the constant of the m/N^2 variance main term."""
    return (d - 1) * g_constant(d) ** 2 / (d * (d + 2) ** 3)


def reference_constants() -> dict:
    """Known low-dimensional variance constants, for comparison only."""
    return {
        'c2': g_constant(2) ** 2 / 128,
        'c3': 2 * g_constant(3) ** 2 / 375,
        'main_constant_d2': main_term_constant(2),
        'main_constant_d3': main_term_constant(3)
    }


@dataclass(frozen=True)
class VariancePrediction:
    d: int
    m: int
    n: int
    g_d: float
    expected_volume: float
    main_term: float
    rw_bound: float
    conjecture_bound: float
    alpha: Optional[float]
    thm_exponent: Optional[float]
    thm_bound_shape: Optional[float]
    budget_moment_shape: float
    budget_x4_shape: float
    budget_c6_shape: Optional[float]
    lower_bound_shape: Optional[float]
    c4_lower_ratio: Optional[float]
    c4_upper_ratio: Optional[float]

    def to_dict(self) -> dict:
        record = asdict(self)
        record['main_term_constant'] = main_term_constant(self.d)
        record['shape_values'] = 'implied constants set to 1 and epsilon to 0'
        return record


def variance_prediction(d: int, m: int, census: CorrelationCensus) -> VariancePrediction:
    """Main term, bound ladder and error budget shapes for one (d, m).

    Raises
    ------
    ValueError
        If the census was taken at another (d, m).
    """
    if census.d != d or census.m != m:
        raise ValueError(f'Census is for d={census.d}, m={census.m}, not d={d}, m={m}')
    n = census.n
    alpha = thm_exponent = thm_shape = upper_ratio = None
    if d >= 4:
        alpha = alpha_exponent(d)
        thm_exponent = 1 + alpha
        thm_shape = m * n ** -thm_exponent
        upper_ratio = census.c4 / n ** (3 - alpha)
    lower_shape = lower_ratio = None
    if d >= 3:
        lower_shape = n ** (3 - 2 / (d - 2))
        lower_ratio = census.c4 / lower_shape
    c6_shape = None
    if census.c6 is None:
        logger.debug(f'No C(6) count for d={d}, m={m}: its budget term is unavailable')
    else:
        c6_shape = census.c6 / n ** 4
    return VariancePrediction(
        d=d, m=m, n=n,
        g_d=g_constant(d),
        expected_volume=expected_volume(d, m),
        main_term=main_term_constant(d) * m / n ** 2,
        rw_bound=m / sqrt(n),
        conjecture_bound=m / n,
        alpha=alpha,
        thm_exponent=thm_exponent,
        thm_bound_shape=thm_shape,
        budget_moment_shape=exp(-(d - 3) / 4 * log(m)),
        budget_x4_shape=census.x4 / n ** 2,
        budget_c6_shape=c6_shape,
        lower_bound_shape=lower_shape,
        c4_lower_ratio=lower_ratio,
        c4_upper_ratio=upper_ratio
    )
