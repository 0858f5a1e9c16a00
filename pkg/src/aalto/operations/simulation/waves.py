# Aalto - Nodal volume toolkit for arithmetic random waves
#
# SPDX-License-Identifier: Apache-2.0

"""Arithmetic random waves F(x) = (1/sqrt(N)) sum a_mu e(mu.x).

One complex standard Gaussian is drawn per antipodal pair and its conjugate
is assigned to -mu, so F is real with E[F(x)^2] = 1.
"""
from dataclasses import dataclass
from logging import getLogger
from math import pi, sqrt

import numpy as np

from aalto.lattice_utilities.frequency_set import FrequencySet
from aalto.lattice_utilities.random_streams import WAVE_STREAM, stream_generator

logger = getLogger('aalto')

IMAGINARY_TOLERANCE = 1e-10


@dataclass(frozen=True, eq=False)
class WaveSample:
    frequency_set: FrequencySet
    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = np.asarray(self.coeffs, dtype=complex)
        if coeffs.shape != (self.frequency_set.n,):
            raise ValueError(f'Expected {self.frequency_set.n} coefficients, got shape {coeffs.shape}')
        negation = self.frequency_set.negation_index()
        if not np.array_equal(coeffs[negation], np.conj(coeffs)):
            raise ValueError('Coefficients must satisfy a(-mu) = conj(a(mu))')
        coeffs.setflags(write=False)
        object.__setattr__(self, 'coeffs', coeffs)

    @classmethod
    def from_representatives(cls, frequency_set: FrequencySet, values) -> 'WaveSample':
        """Build a sample from one coefficient per antipodal representative."""
        coeffs = np.empty(frequency_set.n, dtype=complex)
        reps = frequency_set.representatives()
        coeffs[reps] = values
        coeffs[frequency_set.negation_index()[reps]] = np.conj(coeffs[reps])
        return cls(frequency_set, coeffs)

    def representatives(self):
        """Frequencies (first nonzero coordinate positive) and their coefficients."""
        reps = self.frequency_set.representatives()
        return self.frequency_set.points[reps].astype(float), self.coeffs[reps]


def sample_wave(frequency_set: FrequencySet, seed: int, index: int = 0) -> WaveSample:
    """Draw the coefficients of wave `index` from the stream keyed by seed."""
    rng = stream_generator(seed, WAVE_STREAM, index)
    g = rng.standard_normal((frequency_set.n // 2, 2))
    return WaveSample.from_representatives(frequency_set, (g[:, 0] + 1j * g[:, 1]) / sqrt(2))


def eval_wave(sample: WaveSample, x, path: str = 'paired'):
    """F at x (shape (d,) or (P, d)).

    The paired path sums (2/sqrt(N)) (Re a cos - Im a sin) over antipodal
    representatives; the complex path sums all N exponentials and checks
    that the imaginary part vanishes.
    """
    x = np.asarray(x, dtype=float)
    single = x.ndim == 1
    xs = np.atleast_2d(x)
    n = sample.frequency_set.n
    if path == 'paired':
        freqs, coeffs = sample.representatives()
        phase = 2 * pi * (xs @ freqs.T)
        values = (2 / sqrt(n)) * (np.cos(phase) @ coeffs.real - np.sin(phase) @ coeffs.imag)
    elif path == 'complex':
        phase = 2 * pi * (xs @ sample.frequency_set.points.T.astype(float))
        total = np.exp(1j * phase) @ sample.coeffs / sqrt(n)
        worst = float(np.max(np.abs(total.imag)))
        if worst > IMAGINARY_TOLERANCE * max(1.0, float(np.max(np.abs(total.real)))):
            raise ArithmeticError(f'Wave has imaginary part {worst:.3e}')
        values = total.real
    else:
        raise ValueError(f"Unknown evaluation path {path!r}, use 'paired' or 'complex'")
    return float(values[0]) if single else values
