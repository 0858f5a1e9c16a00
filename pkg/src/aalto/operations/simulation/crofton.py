# Aalto - Nodal volume toolkit for arithmetic random waves
#
# SPDX-License-Identifier: Apache-2.0

"""Nodal volume by Crofton line transects.

A line x0 + t u, t in [0, length], with uniform x0 and uniform direction u
meets a hypersurface of volume V on average length * kappa_d * V times,
kappa_d = Gamma(d/2) / (sqrt(pi) Gamma((d+1)/2)) being the mean of |<u, e1>|.
Zeros along a line are counted as sign changes on a grid with `oversample`
points per shortest period 1/sqrt(m) of the restricted wave; a pair of
zeros closer than the grid step can be missed.
"""
from dataclasses import asdict, dataclass, field
from logging import getLogger
from math import ceil, exp, fsum, pi, sqrt
from typing import List, Tuple

import numpy as np
from scipy.optimize import bisect
from scipy.special import gammaln

from aalto.lattice_utilities.frequency_set import FrequencySet
from aalto.lattice_utilities.parallel import map_blocks
from aalto.lattice_utilities.random_streams import (BOOTSTRAP_STREAM, LINE_STREAM,
                                                    stream_generator)
from aalto.operations.simulation.waves import WaveSample, sample_wave

logger = getLogger('aalto')

MIN_OVERSAMPLE = 8
DEFAULT_OVERSAMPLE = 32
ROOT_TOLERANCE = 1e-10
MIN_BATCH_SAMPLES = 30
LINE_CHUNK = 256


def kappa(d: int) -> float:
    """Mean absolute first coordinate of a uniform unit vector in R^d."""
    if d < 1:
        raise ValueError(f'Dimension d must be positive, got {d}')
    return exp(gammaln(d / 2) - gammaln((d + 1) / 2)) / sqrt(pi)


def _steps(sample: WaveSample, length: float, oversample: int) -> np.ndarray:
    if length <= 0:
        raise ValueError(f'Transect length must be positive, got {length}')
    if oversample < MIN_OVERSAMPLE:
        raise ValueError(f'Need at least {MIN_OVERSAMPLE} samples per period, got {oversample}')
    count = int(ceil(length * oversample * sqrt(sample.frequency_set.m)))
    return np.linspace(0.0, length, count + 1)


def _line_values(sample: WaveSample, x0s: np.ndarray, us: np.ndarray, ts: np.ndarray) -> np.ndarray:
    """Wave values along lines, shape (lines, len(ts))."""
    freqs, coeffs = sample.representatives()
    base = x0s @ freqs.T
    speed = us @ freqs.T
    phase = 2 * pi * (base[:, None, :] + ts[None, :, None] * speed[:, None, :])
    scale = 2 / sqrt(sample.frequency_set.n)
    return scale * (np.cos(phase) @ coeffs.real - np.sin(phase) @ coeffs.imag)


def line_zero_counts(sample: WaveSample, x0s, us, length: float = 1.0,
                     oversample: int = DEFAULT_OVERSAMPLE) -> np.ndarray:
    """Sign changes of F along each line (rows of x0s and us)."""
    x0s = np.atleast_2d(np.asarray(x0s, dtype=float))
    us = np.atleast_2d(np.asarray(us, dtype=float))
    ts = _steps(sample, length, oversample)
    counts = []
    for start in range(0, x0s.shape[0], LINE_CHUNK):
        values = _line_values(sample, x0s[start:start + LINE_CHUNK], us[start:start + LINE_CHUNK], ts)
        negative = np.signbit(values)
        counts.append(np.count_nonzero(negative[:, 1:] != negative[:, :-1], axis=1))
    return np.concatenate(counts)


def transect_zero_count(sample: WaveSample, x0, u, length: float = 1.0,
                        oversample: int = DEFAULT_OVERSAMPLE) -> int:
    """Number of sign changes of g(t) = F(x0 + t u) on [0, length]."""
    return int(line_zero_counts(sample, x0, u, length, oversample)[0])


def transect_roots(sample: WaveSample, x0, u, length: float = 1.0,
                   oversample: int = DEFAULT_OVERSAMPLE, xtol: float = ROOT_TOLERANCE) -> np.ndarray:
    """Roots of g(t) = F(x0 + t u), bracketed on the sampling grid and refined by bisection."""
    x0 = np.atleast_2d(np.asarray(x0, dtype=float))
    u = np.atleast_2d(np.asarray(u, dtype=float))
    ts = _steps(sample, length, oversample)
    values = _line_values(sample, x0, u, ts)[0]

    def g(t):
        return float(_line_values(sample, x0, u, np.array([t]))[0, 0])

    negative = np.signbit(values)
    brackets = np.flatnonzero(negative[1:] != negative[:-1])
    return np.array([bisect(g, ts[i], ts[i + 1], xtol=xtol) for i in brackets])


def random_lines(d: int, n_lines: int, seed: int, sample_index: int = 0) -> Tuple[np.ndarray, np.ndarray]:
    """Uniform base points on the torus and uniform directions on the sphere."""
    rng = stream_generator(seed, LINE_STREAM, sample_index)
    x0s = rng.random((n_lines, d))
    us = rng.standard_normal((n_lines, d))
    us /= np.linalg.norm(us, axis=1, keepdims=True)
    return x0s, us


def crossing_rate(sample: WaveSample, n_lines: int, seed: int, sample_index: int = 0,
                  length: float = 1.0, oversample: int = DEFAULT_OVERSAMPLE) -> Tuple[float, float]:
    """Mean zeros per unit length over random lines, with its standard error."""
    x0s, us = random_lines(sample.frequency_set.d, n_lines, seed, sample_index)
    rates = line_zero_counts(sample, x0s, us, length, oversample) / length
    se = float(rates.std(ddof=1) / sqrt(n_lines)) if n_lines > 1 else 0.0
    return float(rates.mean()), se


@dataclass(frozen=True)
class NodalEstimate:
    volume: float
    n_lines: int
    per_line_variance: float
    std_error: float

    def to_dict(self) -> dict:
        return asdict(self)


def crofton_volume(sample: WaveSample, n_lines: int, seed: int, sample_index: int = 0,
                   length: float = 1.0, oversample: int = DEFAULT_OVERSAMPLE) -> NodalEstimate:
    """Nodal volume estimate: mean crossings per unit length divided by kappa_d.

    per_line_variance is the variance of the per-line crossing rates.
    """
    if n_lines < 1:
        raise ValueError(f'Need at least one line, got {n_lines}')
    x0s, us = random_lines(sample.frequency_set.d, n_lines, seed, sample_index)
    rates = line_zero_counts(sample, x0s, us, length, oversample) / length
    k = kappa(sample.frequency_set.d)
    variance = float(rates.var(ddof=1)) if n_lines > 1 else 0.0
    return NodalEstimate(volume=fsum(rates) / n_lines / k, n_lines=n_lines,
                         per_line_variance=variance,
                         std_error=sqrt(variance / n_lines) / k)


@dataclass(frozen=True)
class BatchStats:
    """Ensemble statistics of per-sample volume estimates.

    noise_variance = mean(per_line_variance) / (n_lines kappa^2) is the part
    of raw_variance due to the transect estimator; corrected_variance removes it.
    """
    n_samples: int
    n_lines: int
    mean: float
    mean_se: float
    raw_variance: float
    noise_variance: float
    corrected_variance: float
    raw_variance_se: float
    corrected_variance_se: float
    volumes: List[float] = field(repr=False)
    std_errors: List[float] = field(repr=False)

    def summary(self) -> dict:
        record = asdict(self)
        record.pop('volumes')
        record.pop('std_errors')
        return record

    def rows(self) -> List[list]:
        return [[i, v, s] for i, (v, s) in enumerate(zip(self.volumes, self.std_errors))]


def _variances(volumes: np.ndarray, line_variances: np.ndarray, n_lines: int, k: float):
    raw = float(np.var(volumes, ddof=1))
    noise = float(np.mean(line_variances)) / (n_lines * k * k)
    return raw, noise, raw - noise


def sample_estimates(frequency_set: FrequencySet, n_samples: int, n_lines: int, seed: int,
                     workers: int = 1, length: float = 1.0,
                     oversample: int = DEFAULT_OVERSAMPLE, coefficients=None) -> List[NodalEstimate]:
    """Crofton estimates for waves 0..n_samples-1.

    Sample i draws its wave and its lines from streams keyed by (seed, i),
    so the result does not depend on the worker count. With `coefficients`
    every sample reuses that fixed wave and only the lines are random.
    """
    fixed = None if coefficients is None else WaveSample(frequency_set, coefficients)

    def one(index):
        sample = fixed if fixed is not None else sample_wave(frequency_set, seed, index)
        return crofton_volume(sample, n_lines, seed, index, length, oversample)

    return map_blocks(one, range(n_samples), workers)


def batch_stats(frequency_set: FrequencySet, n_samples: int, n_lines: int, seed: int,
                workers: int = 1, n_boot: int = 200, length: float = 1.0,
                oversample: int = DEFAULT_OVERSAMPLE, coefficients=None) -> BatchStats:
    """Sample waves, estimate each nodal volume and aggregate.

    Uncertainties of both variances come from a seeded bootstrap.
    """
    if n_samples < MIN_BATCH_SAMPLES:
        raise ValueError(f'Need at least {MIN_BATCH_SAMPLES} samples, got {n_samples}')
    estimates = sample_estimates(frequency_set, n_samples, n_lines, seed, workers,
                                 length, oversample, coefficients)
    volumes = np.array([e.volume for e in estimates])
    line_variances = np.array([e.per_line_variance for e in estimates])
    k = kappa(frequency_set.d)
    raw, noise, corrected = _variances(volumes, line_variances, n_lines, k)

    rng = stream_generator(seed, BOOTSTRAP_STREAM, 0)
    picks = rng.integers(0, n_samples, (n_boot, n_samples))
    boot = np.array([_variances(volumes[p], line_variances[p], n_lines, k) for p in picks])
    logger.debug(f'Batch of {n_samples} samples x {n_lines} lines: raw variance {raw:.4e}, '
                 f'corrected {corrected:.4e}')
    return BatchStats(
        n_samples=n_samples, n_lines=n_lines,
        mean=fsum(volumes) / n_samples,
        mean_se=float(volumes.std(ddof=1) / sqrt(n_samples)),
        raw_variance=raw, noise_variance=noise, corrected_variance=corrected,
        raw_variance_se=float(boot[:, 0].std(ddof=1)),
        corrected_variance_se=float(boot[:, 2].std(ddof=1)),
        volumes=volumes.tolist(),
        std_errors=[e.std_error for e in estimates]
    )
