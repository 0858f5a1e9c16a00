# Aalto - Nodal volume toolkit for arithmetic random waves
#
# SPDX-License-Identifier: Apache-2.0

"""Torus integrals of products of r, D and H as exact correlation sums.

Every integrand is a product of l factors, each a sum over E, so its torus
integral keeps exactly the zero-sum l-tuples:

    integral / E^p = (-1)^p / (m^p N^l) * sum over C(l) of prod G_ij

where G_ij = mu_i . mu_j, p = #D/2 + #H and E = 4 pi^2 m. Tuples are
streamed from the sum tables, so nothing here uses quadrature except the
grid oracle torus_quadrature.

The integrals are then assembled into the moments of X and Y that the
variance expansion needs, using X ~ -(d/E)(1 + r^2 + r^4) D^t D and
Y ~ -(d/E)(H + r D^t D).
"""
from dataclasses import dataclass
from fractions import Fraction
from logging import getLogger
from math import fsum
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

import numpy as np

from aalto.exceptions import BudgetExceeded
from aalto.lattice_utilities.frequency_set import FrequencySet
from aalto.lattice_utilities.parallel import map_blocks
from aalto.lattice_utilities.sum_tables import (DEFAULT_BATCH, DEFAULT_MAX_ENTRIES,
                                                stream_zero_sum_tuples)
from aalto.operations.geometry.kacrice import expansion_coefficients
from aalto.operations.geometry.spectral import covariance_batch, energy
from aalto.operations.prediction.predict import g_constant

logger = getLogger('aalto')


@dataclass(frozen=True)
class Integrand:
    order: int
    gram_factors: Tuple[Tuple[int, int], ...]

    @property
    def e_power(self) -> int:
        return len(self.gram_factors)


# tuple positions are 0-based in the order the factors appear in the integrand
INTEGRANDS = {
    'int_r2': Integrand(2, ()),
    'int_r4': Integrand(4, ()),
    'int_dd': Integrand(2, ((0, 1),)),
    'int_dd2': Integrand(4, ((0, 1), (2, 3))),
    'int_r2dd': Integrand(4, ((2, 3),)),
    'int_h2': Integrand(2, ((0, 1), (0, 1))),
    'int_r2h2': Integrand(4, ((2, 3), (2, 3))),
    'int_h4': Integrand(4, ((0, 1), (1, 2), (2, 3), (3, 0))),
    'int_h22': Integrand(4, ((0, 1), (0, 1), (2, 3), (2, 3))),
    'int_ddh2': Integrand(4, ((0, 1), (2, 3), (2, 3))),
    'int_rdhd': Integrand(4, ((1, 2), (2, 3))),
    'int_dh2d': Integrand(4, ((0, 1), (1, 2), (2, 3))),
    'int_dd3': Integrand(6, ((0, 1), (2, 3), (4, 5))),
    'int_r4dd': Integrand(6, ((4, 5),)),
    'int_h6': Integrand(6, ((0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0))),
    'int_rdddhd': Integrand(6, ((1, 2), (3, 4), (4, 5))),
}


@dataclass(frozen=True)
class ExactIntegral:
    """Exact value of an integral divided by E^e_power."""
    tag: str
    value: Fraction
    correlation_order: int
    e_power: int

    def scaled(self, m: int) -> float:
        """The integral itself, value * E^e_power."""
        return float(self.value) * energy(m) ** self.e_power

    def to_dict(self) -> dict:
        return {
            'tag': self.tag,
            'value': [self.value.numerator, self.value.denominator],
            'value_float': float(self.value),
            'correlation_order': self.correlation_order,
            'e_power': self.e_power
        }


def _batch_sum(gram: np.ndarray, batch: np.ndarray, factors, m: int) -> int:
    if not factors:
        return int(batch.shape[0])
    if batch.shape[0] * m ** len(factors) < 2 ** 62:
        product = np.ones(batch.shape[0], dtype=np.int64)
    else:
        product = np.ones(batch.shape[0], dtype=object)
    for a, b in factors:
        product = product * gram[batch[:, a], batch[:, b]].astype(product.dtype)
    return int(product.sum())


def exact_integrals(frequency_set: FrequencySet, tags: Iterable[str] = None,
                    budget: int = None, strict: bool = True, batch_size: int = DEFAULT_BATCH,
                    max_entries: int = DEFAULT_MAX_ENTRIES, workers: int = 1) -> Dict[str, ExactIntegral]:
    """Exact values for the requested tags, one tuple stream per correlation order.

    With strict off, an order whose tuple count exceeds the budget is
    logged and its tags are left out of the result.
    """
    tags = list(INTEGRANDS) if tags is None else list(tags)
    unknown = [t for t in tags if t not in INTEGRANDS]
    if unknown:
        raise ValueError(f'Unknown integral tags: {unknown}')
    gram = frequency_set.gram
    m, n = frequency_set.m, frequency_set.n
    results = {}
    for order in sorted({INTEGRANDS[t].order for t in tags}):
        group = [t for t in tags if INTEGRANDS[t].order == order]
        stream = stream_zero_sum_tuples(frequency_set, order,
                                        budget=budget if order == 6 else None,
                                        batch_size=batch_size, max_entries=max_entries)
        totals = dict.fromkeys(group, 0)
        try:
            for batch in stream:
                sums = map_blocks(
                    lambda tag: _batch_sum(gram, batch, INTEGRANDS[tag].gram_factors, m),
                    group, workers)
                for tag, partial in zip(group, sums):
                    totals[tag] += partial
        except BudgetExceeded as err:
            if strict:
                raise
            logger.warning(f'Skipping {", ".join(group)}: {err}')
            continue
        for tag in group:
            p = INTEGRANDS[tag].e_power
            value = Fraction((-1) ** p * totals[tag], m ** p * n ** order)
            results[tag] = ExactIntegral(tag=tag, value=value, correlation_order=order, e_power=p)
        logger.debug(f'Order {order} integrals done for d={frequency_set.d}, m={m}')
    return results


def exact_integral(frequency_set: FrequencySet, tag: str, budget: int = None,
                   **options) -> ExactIntegral:
    """Exact value of one integral; order-6 tags are gated by budget.

    Raises
    ------
    BudgetExceeded
        If an order-6 tag needs more tuples than budget.
    """
    return exact_integrals(frequency_set, [tag], budget=budget, strict=True, **options)[tag]


def _integrand_values(tag: str, r: np.ndarray, grad: np.ndarray, hess: np.ndarray) -> np.ndarray:
    dd = np.einsum('pa,pa->p', grad, grad)
    h2 = np.einsum('pab,pbc->pac', hess, hess)
    tr_h2 = np.einsum('pab,pab->p', hess, hess)
    hd = np.einsum('pab,pb->pa', hess, grad)
    dhd = np.einsum('pa,pa->p', grad, hd)
    if tag == 'int_r2':
        return r ** 2
    if tag == 'int_r4':
        return r ** 4
    if tag == 'int_dd':
        return dd
    if tag == 'int_dd2':
        return dd ** 2
    if tag == 'int_r2dd':
        return r ** 2 * dd
    if tag == 'int_h2':
        return tr_h2
    if tag == 'int_r2h2':
        return r ** 2 * tr_h2
    if tag == 'int_h4':
        return np.einsum('pab,pab->p', h2, h2)
    if tag == 'int_h22':
        return tr_h2 ** 2
    if tag == 'int_ddh2':
        return dd * tr_h2
    if tag == 'int_rdhd':
        return r * dhd
    if tag == 'int_dh2d':
        return np.einsum('pa,pa->p', hd, hd)
    if tag == 'int_dd3':
        return dd ** 3
    if tag == 'int_r4dd':
        return r ** 4 * dd
    if tag == 'int_h6':
        h3 = np.einsum('pab,pbc->pac', h2, hess)
        return np.einsum('pab,pab->p', h3, h3)
    if tag == 'int_rdddhd':
        return r * dd * dhd
    raise ValueError(f'Unknown integral tag {tag}')


def torus_quadrature(frequency_set: FrequencySet, tag: str, grid: int,
                     workers: int = 1, chunk: int = 8192) -> float:
    """Mean of an integrand over a grid^d lattice, divided by E^p.

    The lattice mean of a trigonometric polynomial is its integral once grid
    exceeds every coordinate of every sum of l frequencies, l the order.
    """
    if tag not in INTEGRANDS:
        raise ValueError(f'Unknown integral tag {tag}')
    integrand = INTEGRANDS[tag]
    d = frequency_set.d
    if grid <= integrand.order * frequency_set.radius_bound:
        logger.warning(f'Grid {grid} may alias {tag}: exactness needs grid > '
                       f'{integrand.order * frequency_set.radius_bound}')
    total = grid ** d

    def block(start):
        flat = np.arange(start, min(start + chunk, total))
        xs = np.stack(np.unravel_index(flat, (grid,) * d), axis=1) / grid
        r, grad, hess = covariance_batch(frequency_set, xs)
        return fsum(_integrand_values(tag, r, grad, hess))

    mean = fsum(map_blocks(block, range(0, total, chunk), workers)) / total
    return mean / energy(frequency_set.m) ** integrand.e_power


# asymptotic main terms (c1, c2) meaning c1/N + c2/N^2, as functions of d
def _main_terms(d: int) -> Dict[str, Tuple[Fraction, Fraction]]:
    d = Fraction(d)
    return {
        'int_r2': (Fraction(1), Fraction(0)),
        'int_r4': (Fraction(0), Fraction(3)),
        'int_X': (-d, -d),
        'int_Y2': (d ** 2, -2 * d),
        'int_XY2': (Fraction(0), -d ** 2),
        'int_X2': (Fraction(0), d * (d + 2)),
        'int_Y4': (Fraction(0), d ** 3 * (2 * d + 7) / (d + 2)),
        'int_Y22': (Fraction(0), d ** 3 * (d ** 2 + 2 * d + 6) / (d + 2)),
        'int_XtrY2': (Fraction(0), -d ** 3),
        'int_r2X': (Fraction(0), -d),
        'int_r2Y2': (Fraction(0), d * (d + 2)),
        'int_X3': (Fraction(0), Fraction(0)),
        'int_Y6': (Fraction(0), Fraction(0)),
    }


def berry_weights(d: int) -> Dict[str, Fraction]:
    """Weight of each assembled integral in the expansion of K2 (over G_d^2/4pi^2)."""
    a = expansion_coefficients(d)
    return {
        'int_r2': Fraction(1, 2),
        'int_r4': Fraction(3, 8),
        'int_X': a.a1,
        'int_Y2': a.a2,
        'int_XY2': a.a3,
        'int_X2': a.a4,
        'int_Y4': a.a5,
        'int_Y22': a.a6,
        'int_XtrY2': a.a7,
        'int_r2X': a.a1 / 2,
        'int_r2Y2': a.a2 / 2,
    }


def expansion_coefficient(d: int, power: int) -> Fraction:
    """Coefficient of 1/N^power (power 1 or 2) in the assembled expansion."""
    if power not in (1, 2):
        raise ValueError(f'Only the 1/N and 1/N^2 coefficients are tracked, got power {power}')
    main = _main_terms(d)
    return sum((w * main[tag][power - 1] for tag, w in berry_weights(d).items()), Fraction(0))


# degree bound for the numerators of both coefficients over the common
# denominator 8 d^2 (d+2)^3
NUMERATOR_DEGREE_BOUND = 6


@dataclass(frozen=True)
class BerryCheck:
    dimensions: List[int]
    first_order: List[Fraction]
    second_order: List[Fraction]
    second_order_expected: List[Fraction]

    @property
    def first_order_vanishes(self) -> bool:
        """Zero at more points than the numerator degree, hence identically zero."""
        return (all(c == 0 for c in self.first_order)
                and len(set(self.dimensions)) > NUMERATOR_DEGREE_BOUND)

    @property
    def second_order_matches(self) -> bool:
        return (self.second_order == self.second_order_expected
                and len(set(self.dimensions)) > NUMERATOR_DEGREE_BOUND)

    def to_dict(self) -> dict:
        return {
            'dimensions': self.dimensions,
            'first_order': [[c.numerator, c.denominator] for c in self.first_order],
            'second_order': [[c.numerator, c.denominator] for c in self.second_order],
            'first_order_vanishes': self.first_order_vanishes,
            'second_order_matches': self.second_order_matches
        }


def verify_berry_cancellation(dimensions: Iterable[int] = range(2, 13)) -> BerryCheck:
    """Evaluate the 1/N and 1/N^2 coefficients exactly at each d.

    The 1/N coefficient must vanish and the 1/N^2 one must equal (d-1)/(d+2)^3.
    """
    dimensions = list(dimensions)
    return BerryCheck(
        dimensions=dimensions,
        first_order=[expansion_coefficient(d, 1) for d in dimensions],
        second_order=[expansion_coefficient(d, 2) for d in dimensions],
        second_order_expected=[Fraction(d - 1, (d + 2) ** 3) for d in dimensions]
    )


@dataclass(frozen=True)
class AssembledIntegral:
    """An assembled moment of X, Y with its main term.

    complete is False when order-6 corrections were unavailable and left out;
    bound carries |C(6)|/N^6 for the pure order-6 entries.
    """
    tag: str
    exact: Optional[Fraction]
    complete: bool
    main_term: Fraction
    bound: Optional[Fraction] = None

    @property
    def residual(self) -> Optional[Fraction]:
        if self.exact is None:
            return None
        return self.exact - self.main_term

    def to_dict(self) -> dict:
        def pair(value):
            return None if value is None else [value.numerator, value.denominator]
        return {
            'tag': self.tag,
            'exact': pair(self.exact),
            'complete': self.complete,
            'main_term': pair(self.main_term),
            'residual': pair(self.residual),
            'residual_float': None if self.residual is None else float(self.residual),
            'bound': pair(self.bound)
        }


def assemble_L_integrals(frequency_set: FrequencySet, integrals: Mapping[str, ExactIntegral],
                         c6: int = None) -> List[AssembledIntegral]:
    """Assemble the X, Y moments from exact integrals and attach main terms.

    Order-2 and order-4 integrals are required; missing order-6 ones make
    the affected entries incomplete or unavailable.
    """
    required = [t for t, spec in INTEGRANDS.items() if spec.order < 6]
    missing = [t for t in required if t not in integrals]
    if missing:
        raise ValueError(f'Assembly needs the order 2 and 4 integrals, missing {missing}')
    d, n = frequency_set.d, frequency_set.n

    def value(tag):
        return integrals[tag].value if tag in integrals else None

    def with_optional(base, extra, scale):
        if extra is None:
            return base, False
        return base + scale * extra, True

    entries = {}
    exact, complete = with_optional(value('int_dd') + value('int_r2dd'), value('int_r4dd'), 1)
    entries['int_X'] = (-d * exact, complete)
    exact, complete = with_optional(value('int_dh2d'), value('int_rdddhd'), 2)
    entries['int_XY2'] = (-d ** 3 * exact, complete)
    entries['int_r2'] = (value('int_r2'), True)
    entries['int_r4'] = (value('int_r4'), True)
    entries['int_Y2'] = (d ** 2 * (value('int_h2') + 2 * value('int_rdhd')), True)
    entries['int_X2'] = (d ** 2 * value('int_dd2'), True)
    entries['int_Y4'] = (d ** 4 * value('int_h4'), True)
    entries['int_Y22'] = (d ** 4 * value('int_h22'), True)
    entries['int_XtrY2'] = (-d ** 3 * value('int_ddh2'), True)
    entries['int_r2X'] = (-d * value('int_r2dd'), True)
    entries['int_r2Y2'] = (d ** 2 * value('int_r2h2'), True)
    for tag, scale, source in (('int_X3', -d ** 3, 'int_dd3'), ('int_Y6', d ** 6, 'int_h6')):
        available = value(source)
        entries[tag] = (None if available is None else scale * available, available is not None)

    main = _main_terms(d)
    bound = None if c6 is None else Fraction(c6, n ** 6)
    assembled = []
    for tag, (exact, complete) in entries.items():
        c1, c2 = main[tag]
        assembled.append(AssembledIntegral(
            tag=tag, exact=exact, complete=complete,
            main_term=c1 / n + c2 / n ** 2,
            bound=bound if tag in ('int_X3', 'int_Y6') else None))
    return assembled


@dataclass(frozen=True)
class AssembledVariance:
    """Variance from the exact assembled integrals next to the main term."""
    value: float
    main_term: float
    complete: bool

    def to_dict(self) -> dict:
        return {'value': self.value, 'main_term': self.main_term, 'complete': self.complete}


def assembled_variance(frequency_set: FrequencySet,
                       assembled: Iterable[AssembledIntegral]) -> AssembledVariance:
    """(m G_d^2 / d) times the weighted sum of the assembled integrals."""
    d, m, n = frequency_set.d, frequency_set.m, frequency_set.n
    weights = berry_weights(d)
    by_tag = {entry.tag: entry for entry in assembled}
    total = sum((w * by_tag[tag].exact for tag, w in weights.items()), Fraction(0))
    complete = all(by_tag[tag].complete for tag in weights)
    scale = m * g_constant(d) ** 2 / d
    main = scale * float(expansion_coefficient(d, 2)) / n ** 2
    return AssembledVariance(value=scale * float(total), main_term=main, complete=complete)
