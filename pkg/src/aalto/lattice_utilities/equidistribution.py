# Aalto - Nodal volume toolkit for arithmetic random waves
#
# SPDX-License-Identifier: Apache-2.0

"""Empirical equidistribution of normalised lattice points on the sphere.

Built-in test functions are monomials g(u) = prod u_i^a_i of the unit vector
u = mu/|mu|. Their spherical average is exact: zero if some exponent is odd,
otherwise prod (a_i - 1)!! / (d (d+2) ... (d + |a| - 2)).

======  ==============  =======================
index   g(u)            spherical average
======  ==============  =======================
0       1               1
1       u_1             0
2       u_1^2           1/d
3       u_1^4           3/(d(d+2))
4       u_1^2 u_2^2     1/(d(d+2))
5       u_1^6           15/(d(d+2)(d+4))
6       u_1 u_2         0
======  ==============  =======================
"""
from fractions import Fraction
from typing import Tuple, Union

import numpy as np

from aalto.lattice_utilities.frequency_set import FrequencySet

TEST_FUNCTIONS = {
    0: (),
    1: (1,),
    2: (2,),
    3: (4,),
    4: (2, 2),
    5: (6,),
    6: (1, 1),
}


def double_factorial(n: int) -> int:
    result = 1
    while n > 1:
        result *= n
        n -= 2
    return result


def sphere_monomial_average(d: int, exponents: Tuple[int, ...]) -> Fraction:
    """Average of prod u_i^a_i over the uniform measure on the unit sphere in R^d."""
    if len(exponents) > d:
        raise ValueError(f'Monomial uses {len(exponents)} coordinates but d={d}')
    if any(a % 2 for a in exponents):
        return Fraction(0)
    numerator = 1
    for a in exponents:
        numerator *= double_factorial(a - 1)
    denominator = 1
    for j in range(sum(exponents) // 2):
        denominator *= d + 2 * j
    return Fraction(numerator, denominator)


def equidistribution_deviation(frequency_set: FrequencySet, test_index: int) -> Union[Fraction, float]:
    """Signed deviation (1/N) sum g(mu/|mu|) - spherical average of g.

    Exact (a Fraction) for even total degree, a float otherwise.
    """
    if test_index not in TEST_FUNCTIONS:
        raise ValueError(f'Unknown test function index {test_index}, '
                         f'available: {sorted(TEST_FUNCTIONS)}')
    exponents = TEST_FUNCTIONS[test_index]
    average = sphere_monomial_average(frequency_set.d, exponents)
    monomial = np.ones(frequency_set.n, dtype=object)
    for axis, a in enumerate(exponents):
        monomial = monomial * np.array([int(c) ** a for c in frequency_set.points[:, axis]], dtype=object)
    total = int(sum(monomial))
    degree = sum(exponents)
    if degree % 2 == 0:
        empirical = Fraction(total, frequency_set.n * frequency_set.m ** (degree // 2))
        return empirical - average
    return total / (frequency_set.n * frequency_set.m ** (degree / 2)) - float(average)


def equidistribution_statistic(frequency_set: FrequencySet, test_index: int) -> float:
    """Float view of equidistribution_deviation."""
    return float(equidistribution_deviation(frequency_set, test_index))
