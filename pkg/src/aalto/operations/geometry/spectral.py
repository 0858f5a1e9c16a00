# Aalto - Nodal volume toolkit for arithmetic random waves
#
# SPDX-License-Identifier: Apache-2.0

"""Covariance function r(x) of an arithmetic wave and the matrices derived from it.

    r(x) = (1/N) sum cos(2 pi mu.x)
    D(x) = grad r = -(2 pi / N) sum sin(2 pi mu.x) mu
    H(x) = Hess r = -(4 pi^2 / N) sum cos(2 pi mu.x) mu mu^t
    X(x) = -(d/E) D^t D / (1 - r^2)
    Y(x) = -(d/E) (H + r D^t D / (1 - r^2))

with E = 4 pi^2 m. D is stored as a real vector; the imaginary part of the
complex exponential form vanishes by the symmetry mu -> -mu.
"""
from dataclasses import dataclass
from logging import getLogger
from math import pi
from typing import Optional

import numpy as np

from aalto.exceptions import DegenerateFrameError
from aalto.lattice_utilities.frequency_set import FrequencySet

logger = getLogger('aalto')

DEGENERACY_TOLERANCE = 1e-12


def energy(m: int) -> float:
    """Laplace eigenvalue E = 4 pi^2 m."""
    return 4 * pi ** 2 * m


@dataclass(frozen=True, eq=False)
class SpectralFrame:
    x: np.ndarray
    r: float
    grad: np.ndarray
    hess: np.ndarray
    x_mat: Optional[np.ndarray]
    y_mat: Optional[np.ndarray]

    @property
    def available(self) -> bool:
        """False when |r| = 1 and X, Y are undefined."""
        return self.x_mat is not None

    def require_matrices(self):
        if not self.available:
            raise DegenerateFrameError(f'|r(x)| = 1 at x={self.x.tolist()}: X and Y are undefined')
        return self.x_mat, self.y_mat

    def to_dict(self) -> dict:
        return {
            'x': self.x.tolist(),
            'r': self.r,
            'grad': self.grad.tolist(),
            'hess': self.hess.tolist(),
            'x_mat': None if self.x_mat is None else self.x_mat.tolist(),
            'y_mat': None if self.y_mat is None else self.y_mat.tolist()
        }


def _validate_point(frequency_set: FrequencySet, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape != (frequency_set.d,):
        raise ValueError(f'Point must have {frequency_set.d} coordinates, got shape {x.shape}')
    return x


def eval_frame(frequency_set: FrequencySet, x) -> SpectralFrame:
    """Evaluate r, D, H and, away from |r| = 1, X and Y at the torus point x."""
    x = _validate_point(frequency_set, x)
    points = frequency_set.points.astype(float)
    n = frequency_set.n
    phase = 2 * pi * (points @ x)
    cos, sin = np.cos(phase), np.sin(phase)
    r = float(cos.mean())
    grad = -(2 * pi / n) * (sin @ points)
    hess = -(4 * pi ** 2 / n) * np.einsum('j,ja,jb->ab', cos, points, points)
    gap = 1 - r * r
    if gap <= DEGENERACY_TOLERANCE:
        logger.debug(f'Degenerate frame at x={x.tolist()}, r={r}')
        return SpectralFrame(x=x, r=r, grad=grad, hess=hess, x_mat=None, y_mat=None)
    scale = frequency_set.d / energy(frequency_set.m)
    outer = np.outer(grad, grad)
    x_mat = -scale * outer / gap
    y_mat = -scale * (hess + r * outer / gap)
    return SpectralFrame(x=x, r=r, grad=grad, hess=hess, x_mat=x_mat, y_mat=y_mat)


def covariance_complex(frequency_set: FrequencySet, x) -> complex:
    """r(x) through the complex exponential sum (1/N) sum e(mu.x)."""
    x = _validate_point(frequency_set, x)
    return complex(np.exp(2j * pi * (frequency_set.points @ x)).mean())


def covariance_batch(frequency_set: FrequencySet, xs: np.ndarray):
    """r, D and H for a batch of points of shape (P, d)."""
    points = frequency_set.points.astype(float)
    n = frequency_set.n
    phase = 2 * pi * (np.asarray(xs, dtype=float) @ points.T)
    cos, sin = np.cos(phase), np.sin(phase)
    r = cos.mean(axis=1)
    grad = -(2 * pi / n) * (sin @ points)
    hess = -(4 * pi ** 2 / n) * np.einsum('pj,ja,jb->pab', cos, points, points)
    return r, grad, hess
