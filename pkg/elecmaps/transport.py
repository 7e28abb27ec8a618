#! /usr/bin/env python

"""Wasserstein and EMD distances, stretching and column matching.

A nonnegative vector a of length m is identified with the step density
taking value m * a_i / sum(a) on ((i - 1) / m, i / m]. Its CDF is piecewise
linear with knots at i / m. The Wasserstein distance between two such
vectors is the integral over [0, 1] of the absolute difference of their
CDFs, evaluated here in closed form. Vectors of different lengths are
supported.

A 'column array' is a 2D array whose columns are such vectors (for
example the entries of a FrequencyMatrix, one column per candidate).

CLASSES
TransportPlan  Matching realised by a column matching.

FUNCTIONS
as_distribution()  Vector normalised to unit mass.
wasserstein_1d()  Wasserstein distance between two vectors.
emd_1d()  Earth mover's distance between two equal-length vectors.
wasserstein_cost_grid()  Wasserstein distance between every pair of
    columns.
stretch()  Copy each column of a column array.
matrix_wasserstein()  Minimum average column distance under an optimal
    column matching.
"""

from dataclasses import dataclass, field
from math import lcm
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
import ot
from scipy.optimize import linear_sum_assignment

import elecmaps
from .errors import ArgumentError, DegenerateInputError, DimensionError

# Iteration cap of the network simplex solving the transportation problem.
TRANSPORT_MAX_ITER = 10_000_000

settings = ['TRANSPORT_MAX_ITER']
elecmaps._config_import(vars(), settings)

Vector = Union[Sequence[float], np.ndarray]


def as_distribution(values: Vector) -> np.ndarray:
    """Return +values+ normalised to sum to 1.

    Raises DegenerateInputError if +values+ has a negative entry or sums
    to zero.
    """
    values = np.asarray(values, dtype=float)
    if values.ndim != 1 or not len(values):
        raise DegenerateInputError("expected a non-empty vector")
    if np.any(values < 0):
        raise DegenerateInputError("vector has negative entries")
    total = values.sum()
    if not total > 0:
        raise DegenerateInputError("vector sums to zero")
    return values / total


def _breakpoints(ma: int, mb: int) -> np.ndarray:
    # union of {i/ma} and {j/mb}, exact on the lcm grid
    denominator = lcm(ma, mb)
    ticks = np.union1d(np.arange(ma + 1) * (denominator // ma),
                       np.arange(mb + 1) * (denominator // mb))
    return ticks / denominator


def _cdf_at(cumulative: np.ndarray, x: np.ndarray) -> np.ndarray:
    """CDF values at +x+ of vectors with knot values +cumulative+.

    +cumulative+  (..., m + 1) array, knot values at 0, 1/m, ..., 1.
    """
    m = cumulative.shape[-1] - 1
    position = x * m
    lower = np.minimum(np.floor(position).astype(np.int64), m - 1)
    frac = position - lower
    low = cumulative[..., lower]
    high = cumulative[..., lower + 1]
    return low + frac * (high - low)


def _integrate_abs(diff: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Integral of |d| where d is linear between breakpoints +x+.

    +diff+  (..., k) values of d at the k breakpoints.
    """
    h = np.diff(x)
    d0 = diff[..., :-1]
    d1 = diff[..., 1:]
    a0, a1 = np.abs(d0), np.abs(d1)
    same_sign = d0 * d1 >= 0
    # a0 + a1 > 0 wherever the sign changes
    crossing = np.divide(d0 ** 2 + d1 ** 2, 2 * (a0 + a1),
                         out=np.zeros(np.shape(d0)), where=~same_sign)
    area = np.where(same_sign, (a0 + a1) / 2, crossing)
    return (area * h).sum(axis=-1)


def _knots(columns: np.ndarray) -> np.ndarray:
    # (count, m + 1) CDF knot values of each column
    columns = columns / columns.sum(axis=0, keepdims=True)
    zeros = np.zeros((1, columns.shape[1]))
    return np.concatenate([zeros, np.cumsum(columns, axis=0)]).T


def wasserstein_1d(a: Vector, b: Vector) -> float:
    """Return Wasserstein distance between vectors +a+ and +b+.

    +a+, +b+ may have different lengths.
    """
    a, b = as_distribution(a), as_distribution(b)
    x = _breakpoints(len(a), len(b))
    cdf_a = _cdf_at(np.concatenate([[0.], np.cumsum(a)]), x)
    cdf_b = _cdf_at(np.concatenate([[0.], np.cumsum(b)]), x)
    return float(_integrate_abs(cdf_a - cdf_b, x))


def emd_1d(a: Vector, b: Vector) -> float:
    """Return earth mover's distance between +a+ and +b+.

    Moving unit mass between adjacent entries costs 1. +a+ and +b+ are
    normalised to unit mass.

    Raises DimensionError if +a+ and +b+ differ in length.
    """
    a, b = as_distribution(a), as_distribution(b)
    if len(a) != len(b):
        raise DimensionError(f"emd of vectors of length {len(a)} and "
                             f"{len(b)}")
    return float(np.abs(np.cumsum(a - b)).sum())


def wasserstein_cost_grid(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Return Wasserstein distance between every column pair.

    +x+  (mx, sx) column array.
    +y+  (my, sy) column array.

    Returns (sx, sy) array, [i, j] the distance between column i of +x+
    and column j of +y+.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if np.any(x.sum(axis=0) <= 0) or np.any(y.sum(axis=0) <= 0):
        raise DegenerateInputError("column sums to zero")
    points = _breakpoints(x.shape[0], y.shape[0])
    cdf_x = _cdf_at(_knots(x), points)
    cdf_y = _cdf_at(_knots(y), points)
    grid = np.empty((x.shape[1], y.shape[1]))
    for i in range(x.shape[1]):
        grid[i] = _integrate_abs(cdf_x[i][None, :] - cdf_y, points)
    return grid


def stretch(x: np.ndarray, s: int) -> np.ndarray:
    """Return column array with +s+ columns stretched from +x+.

    Each of the m columns of +x+ is copied s / m times, in order.

    Raises ArgumentError if +s+ is not a multiple of the number of
    columns of +x+.
    """
    x = np.asarray(x)
    m = x.shape[1]
    if s < m or s % m:
        raise ArgumentError(f"cannot stretch {m} columns to {s}")
    return np.repeat(x, s // m, axis=1)


@dataclass
class TransportPlan:
    """Column matching realised by matrix_wasserstein.

    ++flow++  (source column, sink column, mass) for every matched pair
        with positive mass.
    ++assignment++  For a square assignment, sink column matched to
        each source column, otherwise None.

    METHODS
    --conserves()--  True if flow meets given supplies and demands.
    """

    flow: List[Tuple[int, int, float]]
    assignment: Optional[np.ndarray] = None
    cost: float = field(default=0.0)

    def conserves(self, supplies: Sequence[float],
                  demands: Sequence[float], tol: float = 1e-12) -> bool:
        out = np.zeros(len(supplies))
        into = np.zeros(len(demands))
        for i, j, mass in self.flow:
            if mass < -tol:
                return False
            out[i] += mass
            into[j] += mass
        return (np.allclose(out, supplies, rtol=0, atol=tol)
                and np.allclose(into, demands, rtol=0, atol=tol))


def _assignment(grid: np.ndarray) -> Tuple[float, TransportPlan]:
    rows, cols = linear_sum_assignment(grid)
    s = len(rows)
    cost = grid[rows, cols].sum()
    flow = [(int(i), int(j), 1 / s) for i, j in zip(rows, cols)]
    plan = TransportPlan(flow, assignment=cols.copy(), cost=float(cost))
    return float(cost) / s, plan


def _transportation(grid: np.ndarray) -> Tuple[float, TransportPlan]:
    sx, sy = grid.shape
    supplies = np.full(sx, 1 / sx)
    demands = np.full(sy, 1 / sy)
    # identical totals for the network simplex
    demands *= supplies.sum() / demands.sum()
    moved = ot.emd(supplies, demands, grid, numItermax=TRANSPORT_MAX_ITER)
    rows, cols = np.nonzero(moved > 0)
    flow = [(int(i), int(j), float(moved[i, j])) for i, j in zip(rows, cols)]
    value = float((moved * grid).sum())
    return value, TransportPlan(flow, cost=value)


def matrix_wasserstein(x: np.ndarray, y: np.ndarray,
                       method: str = 'assignment'
                       ) -> Tuple[float, TransportPlan]:
    """Return (distance, plan) of an optimal column matching.

    +x+, +y+  Column arrays. Columns may differ in length.
    +method+
        'assignment'  +x+ and +y+ must have the same number of columns
            s. Distance is the minimum over column bijections of the
            average Wasserstein distance between matched columns.
        'transport'  +x+ with sx columns, +y+ with sy columns. Distance
            is the minimum cost of moving supply 1/sx from each column
            of +x+ to demand 1/sy of each column of +y+. Equals the
            assignment distance between +x+ and +y+ both stretched to
            lcm(sx, sy) columns.

    Raises DimensionError if 'assignment' and column counts differ.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if method == 'assignment':
        if x.shape[1] != y.shape[1]:
            raise DimensionError(f"cannot match {x.shape[1]} columns "
                                 f"with {y.shape[1]}")
        return _assignment(wasserstein_cost_grid(x, y))
    if method == 'transport':
        return _transportation(wasserstein_cost_grid(x, y))
    raise ArgumentError(f"unknown matching method {method!r}")
