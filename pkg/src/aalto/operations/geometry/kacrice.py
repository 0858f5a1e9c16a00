# Aalto - Nodal volume toolkit for arithmetic random waves
#
# SPDX-License-Identifier: Apache-2.0

"""Two-point correlation K2 of the nodal set and its expansion around X = Y = 0.

Conditioned on F(0) = F(x) = 0, the normalised gradients (w1, w2) are centred
Gaussian with covariance

    Omega = I + [[X, Y], [Y, X]]

and K2(x) = E[|w1| |w2|] / (2 pi sqrt(1 - r^2)). The expectation is expanded as

    (G_d^2 / 2 pi) [A0 + A1 trX + A2 trY^2 + A3 tr(XY^2) + A4 trX^2
                    + A5 trY^4 + A6 (trY^2)^2 + A7 trX trY^2]

through the determinant f(t, s) = det(I + J(t, s))^(-1/2) of

    [[(1+t) I + tX, sqrt(ts) Y], [sqrt(ts) Y, (1+s) I + sX]].
"""
from dataclasses import asdict, dataclass
from fractions import Fraction
from logging import getLogger
from math import fsum, pi, sqrt
from typing import Optional, Tuple

import numpy as np
from scipy.integrate import quad

from aalto.exceptions import SeriesDomainError
from aalto.lattice_utilities.frequency_set import FrequencySet
from aalto.lattice_utilities.parallel import map_blocks
from aalto.lattice_utilities.random_streams import (GAUSSIAN_STREAM, block_sizes,
                                                    stream_generator)
from aalto.operations.geometry.singular import is_singular
from aalto.operations.geometry.spectral import SpectralFrame, eval_frame
from aalto.operations.prediction.predict import g_constant

logger = getLogger('aalto')

PSD_TOLERANCE = 1e-9
SYMMETRY_TOLERANCE = 1e-12
PATH_AGREEMENT = 1e-10
MC_BLOCK = 65536


@dataclass(frozen=True)
class ExpansionCoefficients:
    a0: Fraction
    a1: Fraction
    a2: Fraction
    a3: Fraction
    a4: Fraction
    a5: Fraction
    a6: Fraction
    a7: Fraction

    def as_tuple(self) -> Tuple[Fraction, ...]:
        return (self.a0, self.a1, self.a2, self.a3, self.a4, self.a5, self.a6, self.a7)

    def to_dict(self) -> dict:
        return {key: [value.numerator, value.denominator] for key, value in asdict(self).items()}


def expansion_coefficients(d: int) -> ExpansionCoefficients:
    if d < 2:
        raise ValueError(f'Dimension d must be at least 2, got {d}')
    a5 = Fraction(1, 4 * d ** 2 * (d + 2) ** 2)
    return ExpansionCoefficients(
        a0=Fraction(1),
        a1=Fraction(1, d),
        a2=Fraction(1, 2 * d ** 2),
        a3=Fraction(-1, d ** 2 * (d + 2)),
        a4=Fraction(-(d - 1), 2 * d ** 2 * (d + 2)),
        a5=a5,
        a6=a5 / 2,
        a7=Fraction(-1, 2 * d ** 2 * (d + 2))
    )


class OmegaMatrix:
    """Covariance I + [[X, Y], [Y, X]] of the conditioned gradient pair."""

    def __init__(self, x_block: np.ndarray, y_block: np.ndarray):
        x_block = np.asarray(x_block, dtype=float)
        y_block = np.asarray(y_block, dtype=float)
        if x_block.shape != y_block.shape or x_block.shape[0] != x_block.shape[1]:
            raise ValueError(f'Blocks must be square and equal in shape, got {x_block.shape}, {y_block.shape}')
        self.x_block = x_block
        self.y_block = y_block
        self.d = x_block.shape[0]
        self.dim = 2 * self.d
        self.full = np.eye(self.dim) + np.block([[x_block, y_block], [y_block, x_block]])

    @classmethod
    def from_frame(cls, frame: SpectralFrame) -> 'OmegaMatrix':
        x_mat, y_mat = frame.require_matrices()
        return cls(x_mat, y_mat)

    @classmethod
    def identity(cls, d: int) -> 'OmegaMatrix':
        return cls(np.zeros((d, d)), np.zeros((d, d)))

    def factor(self) -> np.ndarray:
        """Symmetric square root factor L with L L^t = Omega.

        Eigenvalues down to -1e-9 are clipped to zero.
        """
        values, vectors = np.linalg.eigh(self.full)
        if values.min() < -PSD_TOLERANCE:
            raise ValueError(f'Omega is not positive semidefinite: smallest eigenvalue {values.min():.3e}')
        if values.min() < 0:
            logger.debug(f'Clipping eigenvalue {values.min():.3e} of Omega to zero')
        return vectors * np.sqrt(np.clip(values, 0, None))


def _check_symmetric(name: str, matrix: np.ndarray):
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValueError(f'{name} must be a square matrix, got shape {matrix.shape}')
    if not np.allclose(matrix, matrix.T, rtol=0, atol=SYMMETRY_TOLERANCE):
        raise ValueError(f'{name} is not symmetric')


def trace_invariants(x_mat: np.ndarray, y_mat: np.ndarray) -> dict:
    """The traces entering the expansion, keyed by coefficient."""
    y2 = y_mat @ y_mat
    tr_x = float(np.trace(x_mat))
    tr_y2 = float(np.trace(y2))
    return {
        'a0': 1.0,
        'a1': tr_x,
        'a2': tr_y2,
        'a3': float(np.trace(x_mat @ y2)),
        'a4': float(np.trace(x_mat @ x_mat)),
        'a5': float(np.trace(y2 @ y2)),
        'a6': tr_y2 ** 2,
        'a7': tr_x * tr_y2
    }


def dropped_order_monitor(x_mat: np.ndarray, y_mat: np.ndarray, r: float = 0.0) -> float:
    """Size of the first omitted terms: r^6 + |tr X^3| + tr Y^6."""
    y2 = y_mat @ y_mat
    return r ** 6 + abs(float(np.trace(x_mat @ x_mat @ x_mat))) + float(np.trace(y2 @ y2 @ y2))


def norm_product_expectation(x_mat, y_mat, d: int) -> Tuple[float, float]:
    """Second-order expansion of E[|w1| |w2|] and the dropped-order monitor."""
    x_mat = np.asarray(x_mat, dtype=float)
    y_mat = np.asarray(y_mat, dtype=float)
    _check_symmetric('X', x_mat)
    _check_symmetric('Y', y_mat)
    coefficients = asdict(expansion_coefficients(d))
    traces = trace_invariants(x_mat, y_mat)
    series = fsum(float(coefficients[key]) * traces[key] for key in coefficients)
    return g_constant(d) ** 2 / (2 * pi) * series, dropped_order_monitor(x_mat, y_mat)


def mc_norm_product(omega: OmegaMatrix, samples: int, seed: int,
                    workers: int = 1, stream_id: int = 0) -> Tuple[float, float]:
    """Monte Carlo E[|w1| |w2|] for (w1, w2) ~ N(0, Omega).

    Samples are drawn in blocks of 65536, each from its own stream keyed by
    (seed, stream_id, block), and reduced in block order.
    Returns (mean, standard error).
    """
    if samples < 2:
        raise ValueError(f'Need at least two samples, got {samples}')
    factor = omega.factor()
    d = omega.d

    def block(item):
        index, size = item
        rng = stream_generator(seed, GAUSSIAN_STREAM, stream_id, index)
        w = rng.standard_normal((size, omega.dim)) @ factor.T
        values = np.linalg.norm(w[:, :d], axis=1) * np.linalg.norm(w[:, d:], axis=1)
        return fsum(values), fsum(values * values)

    parts = map_blocks(block, enumerate(block_sizes(samples, MC_BLOCK)), workers)
    total = fsum(p[0] for p in parts)
    total_sq = fsum(p[1] for p in parts)
    mean = total / samples
    variance = max(total_sq / samples - mean * mean, 0.0) * samples / (samples - 1)
    return mean, sqrt(variance / samples)


def _block_matrix(t: float, s: float, x_mat: np.ndarray, y_mat: np.ndarray):
    d = x_mat.shape[0]
    identity = np.eye(d)
    a = (1 + t) * identity + t * x_mat
    b = sqrt(t * s) * y_mat
    c = (1 + s) * identity + s * x_mat
    return a, b, c


def _f_direct(a, b, c) -> float:
    sign, logdet = np.linalg.slogdet(np.block([[a, b], [b, c]]))
    if sign <= 0:
        raise ValueError('I + J(t, s) is singular or not positive definite')
    return float(np.exp(-0.5 * logdet))


def _f_block(a, b, c) -> float:
    sign_a, logdet_a = np.linalg.slogdet(a)
    schur = c - b @ np.linalg.solve(a, b)
    sign_s, logdet_s = np.linalg.slogdet(schur)
    if sign_a <= 0 or sign_s <= 0:
        raise ValueError('I + J(t, s) is singular or not positive definite')
    return float(np.exp(-0.5 * (logdet_a + logdet_s)))


def f_exact(t: float, s: float, x_mat, y_mat) -> float:
    """det(I + J(t, s))^(-1/2), evaluated directly and through the Schur complement.

    Raises
    ------
    ArithmeticError
        If the two evaluations disagree beyond 1e-10 (relative).
    """
    if t < 0 or s < 0:
        raise ValueError(f't and s must be non-negative, got t={t}, s={s}')
    a, b, c = _block_matrix(t, s, np.asarray(x_mat, dtype=float), np.asarray(y_mat, dtype=float))
    direct = _f_direct(a, b, c)
    blocked = _f_block(a, b, c)
    if abs(direct - blocked) > PATH_AGREEMENT * max(abs(direct), 1.0):
        raise ArithmeticError(f'Determinant paths disagree: {direct} vs {blocked}')
    return direct


def eta(t: float, d: int) -> float:
    return (1 + t) ** (-d / 2)


def theta(t: float, d: int) -> float:
    return t * (1 + t) ** (-d / 2 - 1)


def xi(t: float, d: int) -> float:
    return t * t * (1 + t) ** (-d / 2 - 2)


def f_series(t: float, s: float, x_mat, y_mat, d: int) -> float:
    """Expansion of f(t, s) to weight four in (X, Y), X of weight 2 and Y of weight 1."""
    traces = trace_invariants(np.asarray(x_mat, dtype=float), np.asarray(y_mat, dtype=float))
    et, es = eta(t, d), eta(s, d)
    tt, ts = theta(t, d), theta(s, d)
    xt, xs = xi(t, d), xi(s, d)
    terms = [
        et * es,
        -0.5 * (tt * es + et * ts) * traces['a1'],
        0.5 * tt * ts * traces['a2'],
        -0.5 * (xt * ts + tt * xs) * traces['a3'],
        (0.375 * xt * es + 0.375 * et * xs + 0.25 * tt * ts) * traces['a4'],
        0.25 * xt * xs * traces['a5'],
        0.125 * xt * xs * traces['a6'],
        -0.25 * (xt * ts + tt * xs) * traces['a7']
    ]
    return fsum(terms)


def berry_integrand(t: float, s: float, x_mat, y_mat) -> float:
    """h(t, s) = f(0, 0) - f(t, 0) - f(0, s) + f(t, s)."""
    return (f_exact(0, 0, x_mat, y_mat) - f_exact(t, 0, x_mat, y_mat)
            - f_exact(0, s, x_mat, y_mat) + f_exact(t, s, x_mat, y_mat))


@dataclass(frozen=True)
class EtaThetaXi:
    """Integrals against t^(-3/2) over (0, inf) of 1 - eta, theta and xi."""
    d: int
    one_minus_eta: float
    theta: float
    xi: float
    quadrature: Optional[Tuple[float, float, float]] = None


def _half_line_integral(func) -> float:
    head, _ = quad(func, 0, 1, epsabs=1e-13, epsrel=1e-12, limit=200)
    tail, _ = quad(func, 1, np.inf, epsabs=1e-13, epsrel=1e-12, limit=200)
    return head + tail


def eta_theta_xi_integrals(d: int, numeric: bool = False) -> EtaThetaXi:
    """Closed forms G_d, G_d/d, G_d/(d(d+2)), with optional quadrature values."""
    if d < 2:
        raise ValueError(f'Dimension d must be at least 2, got {d}')
    g = g_constant(d)
    numeric_values = None
    if numeric:
        numeric_values = (
            _half_line_integral(lambda t: (1 - eta(t, d)) * t ** -1.5),
            _half_line_integral(lambda t: theta(t, d) * t ** -1.5),
            _half_line_integral(lambda t: xi(t, d) * t ** -1.5)
        )
    return EtaThetaXi(d=d, one_minus_eta=g, theta=g / d, xi=g / (d * (d + 2)),
                      quadrature=numeric_values)


def series_limit(d: int) -> float:
    """|r| at or above 1 - 1/(16d) is outside the range of the series."""
    return 1 - 1 / (16 * d)


def k2_series(frame: SpectralFrame, d: int) -> Tuple[float, float]:
    """G_d^2/4pi^2 + L(x), and the dropped-order monitor at the frame.

    L(x) carries the Taylor terms r^2/2 + 3r^4/8 of 1/sqrt(1 - r^2) and
    their products with the first-order traces.

    Raises
    ------
    SeriesDomainError
        If |r| >= 1 - 1/(16d).
    """
    if abs(frame.r) >= series_limit(d):
        raise SeriesDomainError(f'|r| = {abs(frame.r):.6f} is outside the series range')
    x_mat, y_mat = frame.require_matrices()
    coefficients = asdict(expansion_coefficients(d))
    traces = trace_invariants(x_mat, y_mat)
    r2 = frame.r ** 2
    terms = [float(coefficients[key]) * traces[key] for key in coefficients]
    terms += [r2 / 2, 3 * r2 * r2 / 8,
              r2 / 2 * float(coefficients['a1']) * traces['a1'],
              r2 / 2 * float(coefficients['a2']) * traces['a2']]
    value = g_constant(d) ** 2 / (4 * pi ** 2) * fsum(terms)
    return value, dropped_order_monitor(x_mat, y_mat, frame.r)


@dataclass(frozen=True)
class K2Diagnostic:
    x: list
    r: float
    singular: int
    k2_mc: float
    k2_se: float
    k2_series: Optional[float]
    eps_monitor: Optional[float]

    def to_dict(self) -> dict:
        return asdict(self)


def k2_pointwise(frequency_set: FrequencySet, x, mc_samples: int, seed: int,
                 workers: int = 1, stream_id: int = 0) -> K2Diagnostic:
    """K2 at x by Monte Carlo and, where it applies, by the series.

    The series is skipped at singular points and where |r| >= 1 - 1/(16d).

    Raises
    ------
    DegenerateFrameError
        If |r(x)| = 1, where K2 is undefined.
    """
    frame = eval_frame(frequency_set, x)
    omega = OmegaMatrix.from_frame(frame)
    singular = is_singular(frequency_set, frame.x)
    mean, se = mc_norm_product(omega, mc_samples, seed, workers=workers, stream_id=stream_id)
    density = 2 * pi * sqrt(1 - frame.r ** 2)
    series = monitor = None
    try:
        if singular:
            raise SeriesDomainError(f'x={frame.x.tolist()} is in the singular set')
        series, monitor = k2_series(frame, frequency_set.d)
    except SeriesDomainError as err:
        logger.debug(f'Series K2 skipped: {err}')
    return K2Diagnostic(x=frame.x.tolist(), r=frame.r, singular=singular,
                        k2_mc=mean / density, k2_se=se / density,
                        k2_series=series, eps_monitor=monitor)
