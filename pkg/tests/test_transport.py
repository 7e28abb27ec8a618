"""Tests for elecmaps.transport."""

import math
import warnings

import numpy as np
import pytest

from elecmaps.errors import ArgumentError, DegenerateInputError, DimensionError
from elecmaps.transport import (as_distribution, emd_1d, matrix_wasserstein,
                                stretch, wasserstein_1d,
                                wasserstein_cost_grid)


def _tight_pair(m):
    # length 2m + 1: halves at the ends and 1/m on even inner entries
    a = np.zeros(2 * m + 1)
    b = np.zeros(2 * m + 1)
    a[0] = a[-1] = 1 / (2 * m)
    a[2:-1:2] = 1 / m
    b[1::2] = 1 / m
    return a, b


def test_as_distribution():
    assert as_distribution([1, 1, 2]).tolist() == [0.25, 0.25, 0.5]
    with pytest.raises(DegenerateInputError):
        as_distribution([0, 0])
    with pytest.raises(DegenerateInputError):
        as_distribution([1, -1, 1])


def test_wasserstein_uniform_vs_point():
    assert wasserstein_1d([0.5, 0.5], [1, 0]) == pytest.approx(0.25)
    assert wasserstein_1d([1, 0], [0, 1]) == pytest.approx(0.5)
    assert wasserstein_1d([0.2, 0.3, 0.5], [0.2, 0.3, 0.5]) == 0


def test_wasserstein_different_lengths():
    # identical step densities
    assert wasserstein_1d([1, 1], [1, 1, 1, 1]) == pytest.approx(0)
    assert wasserstein_1d([1, 0], [1, 1, 0, 0]) == pytest.approx(0)
    assert wasserstein_1d([1], [0, 1]) == pytest.approx(0.25)


def test_emd():
    assert emd_1d([0.5, 0, 0.5], [0, 1, 0]) == pytest.approx(1)
    assert emd_1d([1, 0, 0], [0, 0, 1]) == pytest.approx(2)
    with pytest.raises(DimensionError):
        emd_1d([1, 0], [1, 0, 0])


@pytest.mark.parametrize('m', [1, 2, 5])
def test_tight_family(m):
    a, b = _tight_pair(m)
    assert emd_1d(a, b) == pytest.approx(1)
    assert (2 * m + 1) * wasserstein_1d(a, b) \
        == pytest.approx(0.5 + 1 / (4 * m), abs=1e-9)


def _numeric_wasserstein(a, b, points=200_000):
    # midpoint rule on |A - B| with piecewise linear CDFs
    a, b = as_distribution(a), as_distribution(b)
    x = (np.arange(points) + 0.5) / points
    cdf_a = np.interp(x, np.linspace(0, 1, len(a) + 1),
                      np.concatenate([[0.], np.cumsum(a)]))
    cdf_b = np.interp(x, np.linspace(0, 1, len(b) + 1),
                      np.concatenate([[0.], np.cumsum(b)]))
    return np.abs(cdf_a - cdf_b).mean()


def test_wasserstein_sign_change_within_segment():
    # CDF difference 0, .3, -.3, 0 at the knots; each third adds .05
    assert wasserstein_1d([.3, .4, .3], [0, 1, 0]) == pytest.approx(0.15)
    assert wasserstein_1d([0, 1, 0], [.3, .4, .3]) == pytest.approx(0.15)
    # difference changes sign between 1/2 and 2/3
    assert wasserstein_1d([.2, .8], [.4, 0, .6]) \
        == pytest.approx(_numeric_wasserstein([.2, .8], [.4, 0, .6]),
                         abs=1e-6)


def test_wasserstein_matches_numeric_integration():
    rng = np.random.default_rng(3)
    for _ in range(100):
        a = rng.random(int(rng.integers(1, 9)))
        b = rng.random(int(rng.integers(1, 9)))
        assert wasserstein_1d(a, b) \
            == pytest.approx(_numeric_wasserstein(a, b), abs=1e-6)


def test_wasserstein_without_runtime_warnings():
    with warnings.catch_warnings():
        warnings.simplefilter('error')
        assert wasserstein_1d([1, 0, 0], [1, 0, 0]) == 0
        assert wasserstein_1d([.5, .5], [0, 1, 0, 0]) > 0
        wasserstein_cost_grid(np.eye(3), np.eye(3)[:, ::-1])


def test_emd_wasserstein_bounds():
    rng = np.random.default_rng(0)
    for _ in range(10_000):
        m = int(rng.integers(2, 21))
        a, b = rng.random(m), rng.random(m)
        emd = emd_1d(a, b)
        scaled = m * wasserstein_1d(a, b)
        assert scaled <= emd + 1e-9
        assert scaled >= max(emd / 2, emd - 1) - 1e-9


def test_cost_grid_matches_pairs():
    rng = np.random.default_rng(1)
    x, y = rng.random((3, 4)), rng.random((5, 2))
    grid = wasserstein_cost_grid(x, y)
    assert grid.shape == (4, 2)
    for i in range(4):
        for j in range(2):
            assert grid[i, j] == pytest.approx(
                wasserstein_1d(x[:, i], y[:, j]))


def test_stretch():
    x = np.array([[1, 2], [3, 4]])
    assert stretch(x, 4).tolist() == [[1, 1, 2, 2], [3, 3, 4, 4]]
    with pytest.raises(ArgumentError):
        stretch(x, 3)


def test_assignment_finds_permutation():
    x = np.eye(3)
    y = x[:, [2, 0, 1]]
    value, plan = matrix_wasserstein(x, y)
    assert value == pytest.approx(0)
    assert sorted(plan.assignment.tolist()) == [0, 1, 2]
    assert plan.conserves([1 / 3] * 3, [1 / 3] * 3)
    with pytest.raises(DimensionError):
        matrix_wasserstein(np.eye(3), np.eye(2))


def test_transport_equals_stretched_assignment():
    rng = np.random.default_rng(2)
    x, y = rng.random((2, 2)), rng.random((3, 3))
    value, plan = matrix_wasserstein(x, y, method='transport')
    stretched, _ = matrix_wasserstein(stretch(x, 6), stretch(y, 6))
    assert value == pytest.approx(stretched, abs=1e-9)
    assert plan.conserves([1 / 2] * 2, [1 / 3] * 3, tol=1e-9)
    assert plan.assignment is None


def _bistochastic(rng, m):
    # convex combination of permutation matrices
    weights = rng.dirichlet(np.ones(3))
    return sum(w * np.eye(m)[rng.permutation(m)] for w in weights)


@pytest.mark.parametrize('t', [2, 3, 5])
def test_assignment_invariant_to_stretching(t):
    rng = np.random.default_rng(t)
    for _ in range(200):
        m = int(rng.integers(2, 6))
        x, y = _bistochastic(rng, m), _bistochastic(rng, m)
        value, _ = matrix_wasserstein(x, y)
        stretched, _ = matrix_wasserstein(stretch(x, m * t),
                                          stretch(y, m * t))
        assert stretched == pytest.approx(value, abs=1e-9)


def test_transport_equals_stretched_assignment_up_to_lcm_24():
    rng = np.random.default_rng(4)
    sizes = [(m1, m2) for m1 in range(1, 25) for m2 in range(m1, 25)
             if math.lcm(m1, m2) <= 24]
    for m1, m2 in sizes:
        x, y = rng.random((m1, m1)), rng.random((m2, m2))
        value, plan = matrix_wasserstein(x, y, method='transport')
        s = math.lcm(m1, m2)
        stretched, _ = matrix_wasserstein(stretch(x, s), stretch(y, s))
        assert value == pytest.approx(stretched, abs=1e-9), (m1, m2)
        assert plan.conserves([1 / m1] * m1, [1 / m2] * m2, tol=1e-9)


def test_unknown_method():
    with pytest.raises(ArgumentError):
        matrix_wasserstein(np.eye(2), np.eye(2), method='greedy')
