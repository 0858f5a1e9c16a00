from math import pi

import numpy as np
import pytest

from aalto.exceptions import DegenerateFrameError
from aalto.operations.geometry import covariance_complex, energy, eval_frame
from aalto.operations.geometry.spectral import covariance_batch

POINTS = [[0.1, 0.2, 0.3, 0.4], [0.37, 0.11, 0.83, 0.05], [0.5, 0.25, 0.125, 0.9]]


def test_energy():
    assert energy(5) == pytest.approx(20 * pi ** 2)


def test_frame_at_origin_should_be_degenerate(d4_m5):
    frame = eval_frame(d4_m5, np.zeros(4))
    assert frame.r == pytest.approx(1.0)
    assert not frame.available
    assert np.allclose(frame.grad, 0)
    assert np.allclose(frame.hess, -energy(5) / 4 * np.eye(4))
    with pytest.raises(DegenerateFrameError):
        frame.require_matrices()
    assert frame.to_dict()['x_mat'] is None


@pytest.mark.parametrize("x", POINTS)
def test_complex_and_real_covariance_should_agree(d4_m5, x):
    value = covariance_complex(d4_m5, x)
    assert abs(value.imag) < 1e-12
    assert value.real == pytest.approx(eval_frame(d4_m5, x).r, abs=1e-12)


@pytest.mark.parametrize("x", POINTS)
def test_covariance_should_be_even(d4_m5, x):
    x = np.asarray(x)
    assert eval_frame(d4_m5, -x).r == pytest.approx(eval_frame(d4_m5, x).r, abs=1e-12)


@pytest.mark.parametrize("x", POINTS)
def test_gradient_and_hessian_should_match_finite_differences(d4_m5, x):
    x = np.asarray(x)
    frame = eval_frame(d4_m5, x)
    step = 1e-5
    for a in range(4):
        e = np.zeros(4)
        e[a] = step
        plus, minus = eval_frame(d4_m5, x + e), eval_frame(d4_m5, x - e)
        assert (plus.r - minus.r) / (2 * step) == pytest.approx(frame.grad[a], rel=1e-5, abs=1e-6)
        assert np.allclose((plus.grad - minus.grad) / (2 * step), frame.hess[a], rtol=1e-5, atol=1e-4)


@pytest.mark.parametrize("x", POINTS)
def test_x_matrix_should_be_rank_one_and_negative(d4_m5, x):
    x_mat, y_mat = eval_frame(d4_m5, x).require_matrices()
    eigenvalues = np.linalg.eigvalsh(x_mat)
    assert np.all(eigenvalues <= 1e-12)
    assert np.count_nonzero(np.abs(eigenvalues) > 1e-12) <= 1
    assert np.allclose(y_mat, y_mat.T)


def test_batch_should_match_single_points(d4_m5):
    r, grad, hess = covariance_batch(d4_m5, np.array(POINTS))
    for i, x in enumerate(POINTS):
        frame = eval_frame(d4_m5, x)
        assert r[i] == pytest.approx(frame.r, abs=1e-12)
        assert np.allclose(grad[i], frame.grad)
        assert np.allclose(hess[i], frame.hess)


def test_point_of_wrong_dimension_should_raise(d4_m5):
    with pytest.raises(ValueError):
        eval_frame(d4_m5, [0.1, 0.2])
