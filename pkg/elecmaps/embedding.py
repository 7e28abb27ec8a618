#! /usr/bin/env python

"""Embed distance matrices as 2D maps.

Two embedders minimise the stress of a configuration of points against
a distance matrix: SMACOF majorisation ('mds') and Kamada-Kawai
node-wise relaxation ('kk'). Each runs from several seeded uniform random
initialisations and keeps the lowest stress result (ties broken by
restart index).

Global ATTRIBUTES
The following module attributes are assigned default values that can be
overriden by defining an attribute of the same name in a configuration
file (see elecmaps.config.template.py):
    'MDS_MAX_ITER', 'KK_MAX_ITER', 'EMBED_TOL', 'EMBED_RESTARTS',
    'EMBED_WORKERS'

CLASSES
EmbedConfig  Embedder parameters.
Embedding2D  Labeled 2D points with the stress they realise.

FUNCTIONS
normalize_matrix()  Distance matrix scaled to a maximum of 1.
raw_stress()  Sum of squared differences of point and matrix distances.
normalized_stress()  Kruskal stress-1.
kk_energy()  Kamada-Kawai energy.
mds_embed()  SMACOF embedding.
kk_embed()  Kamada-Kawai embedding.
embed()  Embedding by algorithm name.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np
from scipy.spatial.distance import pdist, squareform

import elecmaps
from .distances import DistanceMatrix
from .errors import (ArgumentError, DegenerateInputError, EmptyInputError,
                     InputError)
from .lib import seeding
from .lib.parallel import map_tasks
from .lib.textio import (Source, Target, csv_rows, csv_text, read_text,
                         write_text)

log = logging.getLogger(__name__)

MDS_MAX_ITER = 500
KK_MAX_ITER = 1000
EMBED_TOL = 1e-7
EMBED_RESTARTS = 3
EMBED_WORKERS = 1

settings = ['MDS_MAX_ITER', 'KK_MAX_ITER', 'EMBED_TOL', 'EMBED_RESTARTS',
            'EMBED_WORKERS']
elecmaps._config_import(vars(), settings)

ALGORITHMS = ('mds', 'kk')

# Distances below are clamped in Kamada-Kawai weights.
KK_MIN_DISTANCE = 1e-9
_TINY = 1e-12


@dataclass(frozen=True)
class EmbedConfig:
    """Embedder parameters.

    ++max_iter++  Iteration cap per restart. None for the algorithm's
        module default, MDS_MAX_ITER or KK_MAX_ITER.
    ++tol++  Stop when the relative objective decrease of an iteration
        falls below tol.
    ++seed++  Seed of the initialisations.
    ++restarts++  Number of initialisations.
    ++workers++  Processes the restarts are distributed over.
    """

    max_iter: Optional[int] = None
    tol: float = field(default_factory=lambda: EMBED_TOL)
    seed: int = 0
    restarts: int = field(default_factory=lambda: EMBED_RESTARTS)
    workers: int = field(default_factory=lambda: EMBED_WORKERS)


@dataclass
class Embedding2D:
    """Labeled 2D points.

    ++labels++  Labels, in matrix order.
    ++points++  (n, 2) array of coordinates.
    ++final_stress++  raw_stress of points against the embedded matrix.
    ++algorithm++  'mds' or 'kk'.
    ++iterations_used++  Iterations of the kept restart.
    ++history++  Objective after each iteration of the kept restart,
        stress for 'mds', energy for 'kk'. Non-increasing.
    """

    labels: Tuple[str, ...]
    points: np.ndarray
    final_stress: float
    algorithm: str
    iterations_used: int = 0
    history: List[float] = field(default_factory=list)

    def __post_init__(self):
        self.labels = tuple(self.labels)
        assert self.points.shape == (len(self.labels), 2)

    def pairwise_distances(self) -> np.ndarray:
        """Return (n, n) Euclidean distances between the points."""
        return squareform(pdist(self.points))

    def to_csv(self, target: Target = None) -> str:
        """Write 'label,x,y' CSV and return the text."""
        rows = [['label', 'x', 'y']]
        rows += [[label, f'{x:.12g}', f'{y:.12g}']
                 for label, (x, y) in zip(self.labels, self.points)]
        text = csv_text(rows)
        write_text(text, target)
        return text

    @classmethod
    def from_csv(cls, source: Source, algorithm: str = '',
                 final_stress: float = float('nan')) -> 'Embedding2D':
        """Return embedding read from 'label,x,y' CSV."""
        rows = csv_rows(read_text(source))
        if not rows or rows[0][:3] != ['label', 'x', 'y']:
            raise InputError("coordinates CSV must start with a "
                             "'label,x,y' header")
        try:
            points = np.array([[float(x), float(y)]
                               for _, x, y, *_ in rows[1:]]).reshape(-1, 2)
        except ValueError as err:
            raise InputError(f"coordinates CSV has a non-numeric entry: "
                             f"{err}") from None
        return cls([row[0] for row in rows[1:]], points, final_stress,
                   algorithm)


def normalize_matrix(d: DistanceMatrix) -> DistanceMatrix:
    """Return +d+ with every entry divided by its largest entry.

    Raises EmptyInputError if +d+ is empty, DegenerateInputError if
    every entry is zero.
    """
    if not d.size:
        raise EmptyInputError("cannot normalize an empty matrix")
    largest = float(np.max(d.entries))
    if not largest > 0:
        raise DegenerateInputError("cannot normalize an all-zero matrix")
    return DistanceMatrix(d.labels, d.entries / largest, d.metric_id)


def raw_stress(points: np.ndarray, d: np.ndarray) -> float:
    """Return sum over i < j of (|p_i - p_j| - d_ij)**2."""
    upper = squareform(np.asarray(d, dtype=float), checks=False)
    return float(((pdist(points) - upper) ** 2).sum())


def normalized_stress(points: np.ndarray, d: np.ndarray) -> float:
    """Return Kruskal stress-1, sqrt(raw_stress / sum of d_ij**2)."""
    upper = squareform(np.asarray(d, dtype=float), checks=False)
    total = float((upper ** 2).sum())
    return float(np.sqrt(raw_stress(points, d) / total)) if total else 0.0


def _kk_weights(d: np.ndarray) -> np.ndarray:
    weights = 1 / np.maximum(d, KK_MIN_DISTANCE) ** 2
    np.fill_diagonal(weights, 0)
    return weights


def kk_energy(points: np.ndarray, d: np.ndarray) -> float:
    """Return sum over i < j of (|p_i - p_j| - d_ij)**2 / d_ij**2.

    Distances below KK_MIN_DISTANCE are clamped in the weights.
    """
    d = np.asarray(d, dtype=float)
    upper = squareform(d, checks=False)
    weights = squareform(_kk_weights(d), checks=False)
    return float((weights * (pdist(points) - upper) ** 2).sum())


def _checked(d: DistanceMatrix) -> np.ndarray:
    entries = d.entries
    if not d.size:
        raise EmptyInputError("cannot embed an empty matrix")
    if np.isnan(entries).any():
        raise InputError("distance matrix has NaN entries")
    if not d.is_symmetric(1e-9) or not d.has_zero_diagonal(1e-9):
        raise InputError("distance matrix must be symmetric with a zero "
                         "diagonal")
    return (entries + entries.T) / 2


def _initial(n: int, seed: int, restart: int) -> np.ndarray:
    return seeding.stream(seed, seeding.RESTART_KEY, restart).random((n, 2))


def _converged(previous: float, current: float, tol: float) -> bool:
    return previous - current <= tol * max(previous, _TINY)


def _smacof(task) -> Tuple[np.ndarray, List[float]]:
    d, seed, restart, max_iter, tol = task
    n = len(d)
    x = _initial(n, seed, restart)
    stress = raw_stress(x, d)
    history = [stress]
    for _ in range(max_iter):
        if stress <= _TINY:
            break
        distances = squareform(pdist(x))
        with np.errstate(divide='ignore', invalid='ignore'):
            b = np.where(distances > _TINY, -d / distances, 0.0)
        np.fill_diagonal(b, 0)
        np.fill_diagonal(b, -b.sum(axis=1))
        # Guttman transform, unit weights
        x = b @ x / n
        previous, stress = stress, raw_stress(x, d)
        history.append(stress)
        if _converged(previous, stress, tol):
            break
    return x, history


def _node_energy(x: np.ndarray, node: int, position: np.ndarray,
                 d: np.ndarray, weights: np.ndarray) -> float:
    lengths = np.linalg.norm(x - position, axis=1)
    terms = weights[node] * (lengths - d[node]) ** 2
    terms[node] = 0
    return float(terms.sum())


def _node_gradients(x: np.ndarray, d: np.ndarray,
                    weights: np.ndarray) -> np.ndarray:
    # gradient of the energy with respect to each point, (n, 2)
    delta = x[:, None, :] - x[None, :, :]
    lengths = np.maximum(np.linalg.norm(delta, axis=2), _TINY)
    factor = weights * (1 - d / lengths)
    return 2 * (factor[:, :, None] * delta).sum(axis=1)


def _pull(x: np.ndarray, node: int, position: np.ndarray, d: np.ndarray,
          weights: np.ndarray) -> np.ndarray:
    """Gradient term of every point due to +node+ placed at +position+."""
    delta = x - position
    lengths = np.maximum(np.linalg.norm(delta, axis=1), _TINY)
    terms = (2 * weights[node] * (1 - d[node] / lengths))[:, None] * delta
    terms[node] = 0
    return terms


def _newton_direction(x: np.ndarray, node: int, gradient: np.ndarray,
                      d: np.ndarray, weights: np.ndarray) -> np.ndarray:
    delta = x[node] - x
    lengths = np.maximum(np.linalg.norm(delta, axis=1), _TINY)
    w, l = weights[node], d[node]
    dx, dy = delta[:, 0], delta[:, 1]
    cube = lengths ** 3
    hessian = 2 * np.array([
        [np.sum(w * (1 - l * dy ** 2 / cube)),
         np.sum(w * l * dx * dy / cube)],
        [np.sum(w * l * dx * dy / cube),
         np.sum(w * (1 - l * dx ** 2 / cube))]])
    if np.all(np.linalg.eigvalsh(hessian) > _TINY):
        return -np.linalg.solve(hessian, gradient)
    return -gradient / max(np.abs(np.diag(hessian)).max(), 1.0)


def _kamada_kawai(task) -> Tuple[np.ndarray, List[float]]:
    d, seed, restart, max_iter, tol = task
    n = len(d)
    weights = _kk_weights(d)
    x = _initial(n, seed, restart)
    gradients = _node_gradients(x, d, weights)
    energy = kk_energy(x, d)
    history = [energy]
    for _ in range(max_iter):
        moved = False
        for _ in range(n):
            node = int(np.argmax(np.linalg.norm(gradients, axis=1)))
            if not np.linalg.norm(gradients[node]) > _TINY:
                break
            direction = _newton_direction(x, node, gradients[node], d,
                                          weights)
            before = _node_energy(x, node, x[node], d, weights)
            step = 1.0
            # halve the step until the node's energy decreases
            for _ in range(40):
                candidate = x[node] + step * direction
                if _node_energy(x, node, candidate, d, weights) < before:
                    break
                step /= 2
            else:
                break
            old_pull = _pull(x, node, x[node], d, weights)
            x[node] = candidate
            new_pull = _pull(x, node, x[node], d, weights)
            gradients += new_pull - old_pull
            gradients[node] = -new_pull.sum(axis=0)
            moved = True
        previous, energy = energy, kk_energy(x, d)
        history.append(energy)
        if not moved or _converged(previous, energy, tol):
            break
    return x, history


_RUNNERS = {'mds': (_smacof, lambda: MDS_MAX_ITER),
            'kk': (_kamada_kawai, lambda: KK_MAX_ITER)}


def embed(d: DistanceMatrix, algorithm: str = 'mds',
          cfg: Optional[EmbedConfig] = None) -> Embedding2D:
    """Return 2D embedding of +d+.

    +algorithm+  'mds' or 'kk'.
    +cfg+  Parameters. Default EmbedConfig().

    Deterministic for given +d+ and cfg.seed, whatever cfg.workers.

    Raises InputError if +d+ has NaN entries, is asymmetric or has a
    nonzero diagonal.
    """
    if algorithm not in _RUNNERS:
        raise ArgumentError(f"unknown embedding algorithm {algorithm!r}, "
                            f"expected one of {', '.join(ALGORITHMS)}")
    cfg = EmbedConfig() if cfg is None else cfg
    if cfg.restarts < 1:
        raise ArgumentError("embedding needs at least one restart")
    entries = _checked(d)
    runner, default_iter = _RUNNERS[algorithm]
    max_iter = default_iter() if cfg.max_iter is None else cfg.max_iter
    tasks = [(entries, cfg.seed, restart, max_iter, cfg.tol)
             for restart in range(cfg.restarts)]
    results = map_tasks(runner, tasks, cfg.workers)
    stresses = [raw_stress(x, entries) for x, _ in results]
    best = min(range(len(results)), key=lambda i: (stresses[i], i))
    points, history = results[best]
    log.info("%s embedding of %d points: stress %.6g (normalized %.4g) "
             "after %d iterations, restart %d of %d", algorithm, d.size,
             stresses[best], normalized_stress(points, entries),
             len(history) - 1, best + 1, len(results))
    return Embedding2D(d.labels, points, stresses[best], algorithm,
                       len(history) - 1, history)


def mds_embed(d: DistanceMatrix,
              cfg: Optional[EmbedConfig] = None) -> Embedding2D:
    """Return SMACOF embedding of +d+.

    Each iteration applies the Guttman transform, so stress is
    non-increasing. Stops on a relative stress decrease below cfg.tol.
    """
    return embed(d, 'mds', cfg)


def kk_embed(d: DistanceMatrix,
             cfg: Optional[EmbedConfig] = None) -> Embedding2D:
    """Return Kamada-Kawai embedding of +d+.

    Minimises kk_energy by repeatedly moving the point with the largest
    energy gradient along its Newton direction, with step halving until
    the energy decreases. An iteration comprises up to one move per
    point.
    """
    return embed(d, 'kk', cfg)
