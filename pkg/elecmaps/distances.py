#! /usr/bin/env python

"""Distances between elections.

Global ATTRIBUTES
The following module attributes are assigned default values that can be
overriden by defining an attribute of the same name in a configuration
file (see elecmaps.config.template.py):
    'MAX_EXACT_M', 'MAX_SUBSETS', 'POS_HAT_MAX_M', 'DEL_SAMPLES',
    'MATRIX_WORKERS'

----METRICS----  Metric identifiers accepted by MetricSpec.

CLASSES
DistanceValue  Distance between two elections.
DistanceMatrix  Labeled symmetric matrix of distances.
SearchBudget  Limits on exhaustive searches.
DelMode  Evaluation mode of the deletion swap extension.
MetricSpec  Metric with all its parameters.

FUNCTIONS
iso_swap_distance()  Isomorphic swap distance.
positionwise_distance()  Positionwise distance.
positionwise_hat()  Positionwise distance extended to different sizes.
swap_tr_hat()  Swap distance extended by padding with truncated
    candidates.
swap_del_hat()  Swap distance extended by expected candidate deletion.
feature_distance()  Norm of the difference of feature vectors.
pairwise_matrix()  Distance matrix of a list of elections.
"""

import logging
import time
from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import combinations
from math import comb, lcm
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.optimize import linear_sum_assignment

import elecmaps
from .election import Election, frequency_matrix
from .errors import (ArgumentError, CapabilityError, DimensionError,
                     ElecMapsError, EmptyInputError, InputError,
                     PairwiseMatrixError, SizeError)
from .lib import seeding
from .lib.combinatorics import unrank_combination
from .lib.parallel import map_tasks
from .lib.textio import (Source, Target, csv_rows, csv_text, read_text,
                         write_text)
from .transport import matrix_wasserstein, stretch

log = logging.getLogger(__name__)

MAX_EXACT_M = 8
MAX_SUBSETS = 2000
POS_HAT_MAX_M = 200
DEL_SAMPLES = 200
MATRIX_WORKERS = 1

settings = ['MAX_EXACT_M', 'MAX_SUBSETS', 'POS_HAT_MAX_M', 'DEL_SAMPLES',
            'MATRIX_WORKERS']
elecmaps._config_import(vars(), settings)

METRICS = ('swap', 'pos', 'pos_hat', 'swap_tr', 'swap_del', 'dap',
           'indicator')

FEATURE_METRICS = ('dap', 'indicator')


@dataclass(frozen=True)
class DistanceValue:
    """Distance between two elections.

    ++value++  Distance.
    ++metric_id++  Metric that evaluated the distance.
    ++exact++  Exact rational value, if metric evaluated it exactly.
    """

    value: float
    metric_id: str
    exact: Optional[Fraction] = None

    def __float__(self) -> float:
        return self.value


@dataclass(frozen=True)
class SearchBudget:
    """Limits on exhaustive searches.

    ++max_exact_m++  Largest candidate count of an exact isomorphic swap
        search.
    ++max_subsets++  Largest number of deletion subsets enumerated by an
        exact swap_del_hat.
    ++pos_hat_max_m++  Largest candidate count accepted by
        positionwise_hat.
    """

    max_exact_m: int = field(default_factory=lambda: MAX_EXACT_M)
    max_subsets: int = field(default_factory=lambda: MAX_SUBSETS)
    pos_hat_max_m: int = field(default_factory=lambda: POS_HAT_MAX_M)


@dataclass(frozen=True)
class DelMode:
    """Evaluation mode of swap_del_hat.

    ++kind++  'exact' to enumerate every deletion subset (falls back to
        'monte_carlo' if there are more than the budget's max_subsets),
        'monte_carlo' to average over sampled subsets.
    ++samples++  Number of subsets sampled, without replacement.
    ++seed++  Seed of the subset sample.
    """

    kind: str = 'exact'
    samples: int = field(default_factory=lambda: DEL_SAMPLES)
    seed: int = 0

    def __post_init__(self):
        if self.kind not in ('exact', 'monte_carlo'):
            raise ArgumentError(f"unknown deletion mode {self.kind!r}")


class DistanceMatrix:
    """Labeled symmetric matrix of election distances.

    ++labels++  Election labels, in matrix order.
    ++entries++  n x n array of distances.
    ++metric_id++  Metric that evaluated the distances.

    PROPERTIES
    --size--  Number of elections.

    METHODS
    --value()--  Distance between two labeled elections.
    --submatrix()--  Matrix restricted to given labels.
    --is_symmetric()--
    --has_zero_diagonal()--
    --triangle_violations()--  Count of violated triangles per election.
    --check_pseudodistance()--  Descriptions of violated axioms.
    --to_csv()--  Write matrix as CSV.
    ---from_csv---  Read matrix written by to_csv.
    """

    def __init__(self, labels: Sequence[str], entries: np.ndarray,
                 metric_id: str = ''):
        entries = np.asarray(entries, dtype=float)
        if entries.shape != (len(labels), len(labels)):
            raise DimensionError(f"{entries.shape} matrix for "
                                 f"{len(labels)} labels")
        if len(set(labels)) != len(labels):
            raise InputError("duplicate labels in distance matrix")
        self.labels = tuple(labels)
        self.entries = entries
        self.metric_id = metric_id
        self._index = {label: i for i, label in enumerate(self.labels)}

    def __repr__(self):
        return (f"DistanceMatrix(metric_id={self.metric_id!r}, "
                f"size={self.size})")

    def __eq__(self, other) -> bool:
        if not isinstance(other, DistanceMatrix):
            return NotImplemented
        return (self.labels == other.labels
                and self.metric_id == other.metric_id
                and np.array_equal(self.entries, other.entries))

    @property
    def size(self) -> int:
        return len(self.labels)

    def value(self, label_a: str, label_b: str) -> float:
        return float(self.entries[self._index[label_a],
                                  self._index[label_b]])

    def submatrix(self, labels: Sequence[str]) -> 'DistanceMatrix':
        indices = [self._index[label] for label in labels]
        return DistanceMatrix(labels, self.entries[np.ix_(indices, indices)],
                              self.metric_id)

    def is_symmetric(self, tol: float = 0.0) -> bool:
        return bool(np.all(np.abs(self.entries - self.entries.T) <= tol))

    def has_zero_diagonal(self, tol: float = 0.0) -> bool:
        return bool(np.all(np.abs(np.diag(self.entries)) <= tol))

    def triangle_violations(self, slack: float = 1e-9) -> np.ndarray:
        """Return count of violated triangles each election belongs to.

        A triangle (i, j, k) is violated if d(i, j) > d(i, k) + d(k, j)
        + +slack+. Each unordered triangle is counted once per member.
        """
        d = self.entries
        n = self.size
        triangles = set()
        for k in range(n):
            # pairs (i, j) whose detour through k is shorter
            bad = d > d[:, k][:, None] + d[k, :][None, :] + slack
            bad[k, :] = False
            bad[:, k] = False
            for i, j in zip(*np.nonzero(np.triu(bad, 1))):
                triangles.add(tuple(sorted((int(i), int(j), k))))
        counts = np.zeros(n, dtype=np.int64)
        for triangle in triangles:
            counts[list(triangle)] += 1
        return counts

    def check_pseudodistance(self, slack: float = 1e-9) -> List[str]:
        """Return descriptions of violated pseudodistance axioms.

        Returns empty list if matrix is symmetric, has a zero diagonal,
        is nonnegative and satisfies the triangle inequality within
        +slack+.
        """
        problems = []
        if not self.is_symmetric(slack):
            problems.append("matrix is not symmetric")
        if not self.has_zero_diagonal(slack):
            problems.append("diagonal is not zero")
        if np.any(self.entries < -slack):
            problems.append("matrix has negative entries")
        violations = self.triangle_violations(slack)
        if violations.any():
            problems.append(f"triangle inequality violated, "
                            f"{int(violations.sum()) // 3} triangle(s)")
        return problems

    def to_csv(self, target: Target = None) -> str:
        """Write matrix as CSV and return the text.

        Header row 'label' followed by the labels, then one row per
        election: label followed by distances to 12 significant digits.

        +target+  Path or text stream to write to, if any.
        """
        rows = [['label', *self.labels]]
        rows += [[label, *(f'{v:.12g}' for v in row)]
                 for label, row in zip(self.labels, self.entries)]
        text = csv_text(rows)
        write_text(text, target)
        return text

    @classmethod
    def from_csv(cls, source: Source,
                 metric_id: str = '') -> 'DistanceMatrix':
        """Return matrix read from CSV written by to_csv.

        +source+  Path or text stream.
        """
        rows = csv_rows(read_text(source))
        if not rows or rows[0][0] != 'label':
            raise InputError("distance CSV must start with a 'label' "
                             "header")
        labels = rows[0][1:]
        if [row[0] for row in rows[1:]] != labels:
            raise InputError("distance CSV row labels do not match header")
        try:
            entries = np.array([[float(v) for v in row[1:]]
                                for row in rows[1:]])
        except ValueError as err:
            raise InputError(f"distance CSV has a non-numeric entry: "
                             f"{err}") from None
        if entries.shape != (len(labels), len(labels)):
            raise DimensionError("distance CSV is not square")
        return cls(labels, entries, metric_id)


# ---------------------------------------------------------------------------
# Isomorphic swap distance

def _sign_tensor(e: Election) -> np.ndarray:
    # [v, a, b] = 1 if vote v prefers a to b, -1 if b to a, 0 if tied
    ranks = e.rank_matrix
    return np.sign(ranks[:, None, :] - ranks[:, :, None]).astype(np.int8)


def _prominence_order(e: Election) -> List[int]:
    ranks = e.rank_matrix
    borda = (e.m - 1 - ranks).sum(axis=0)
    return sorted(range(e.m), key=lambda c: (-borda[c], c))


def _lap(cost: np.ndarray) -> int:
    rows, cols = linear_sum_assignment(cost)
    return int(cost[rows, cols].sum())


class _IsoSwapSearch(object):
    """Branch-and-bound over candidate bijections.

    Candidates of the first election are fixed in order of prominence.
    Each node holds the n x n matrix of half-swaps between votes over
    pairs of already-fixed candidates. The assignment value of that
    matrix bounds every completion from below.
    """

    def __init__(self, e: Election, f: Election):
        self.m = e.m
        self.signs_e = _sign_tensor(e)
        self.signs_f = _sign_tensor(f)
        self.order = _prominence_order(e)
        self.best = None
        self.best_mapping = None
        self.nodes = 0

    def _increment(self, fixed: List[Tuple[int, int]], c: int,
                   t: int) -> np.ndarray:
        if not fixed:
            n_e, n_f = len(self.signs_e), len(self.signs_f)
            return np.zeros((n_e, n_f), dtype=np.int64)
        sources = [a for a, _ in fixed]
        targets = [b for _, b in fixed]
        se = self.signs_e[:, sources, c].astype(np.int64)
        sf = self.signs_f[:, targets, t].astype(np.int64)
        return np.abs(se[:, None, :] - sf[None, :, :]).sum(axis=-1)

    def _search(self, fixed: List[Tuple[int, int]], cost: np.ndarray):
        self.nodes += 1
        depth = len(fixed)
        if depth == self.m:
            value = _lap(cost)
            if self.best is None or value < self.best:
                self.best = value
                self.best_mapping = dict(fixed)
            return
        c = self.order[depth]
        used = {b for _, b in fixed}
        children = []
        for t in range(self.m):
            if t in used:
                continue
            child = cost + self._increment(fixed, c, t)
            children.append((_lap(child), t, child))
        children.sort(key=lambda item: (item[0], item[1]))
        for bound, t, child in children:
            if self.best is not None and bound >= self.best:
                break
            self._search(fixed + [(c, t)], child)

    def run(self) -> int:
        n_e, n_f = len(self.signs_e), len(self.signs_f)
        self._search([], np.zeros((n_e, n_f), dtype=np.int64))
        return self.best


def _normalized_swap(total_half_swaps: int, n: int, m: int) -> Fraction:
    # swaps / (n * m * (m - 1) / 4)
    if m < 2:
        return Fraction(0)
    return Fraction(2 * total_half_swaps, n * m * (m - 1))


def _check_equal_sized(e: Election, f: Election):
    if not e.votes or not f.votes:
        raise EmptyInputError("election without votes")
    if e.m != f.m or e.n != f.n:
        raise SizeError(f"elections {e.label!r} ({e.m} candidates, {e.n} "
                        f"votes) and {f.label!r} ({f.m} candidates, {f.n} "
                        f"votes) are not equal-sized")


def iso_swap_distance(e: Election, f: Election,
                      budget: Optional[SearchBudget] = None
                      ) -> DistanceValue:
    """Return isomorphic swap distance between +e+ and +f+.

    Minimum over candidate and voter bijections of the total swap
    distance between matched votes, divided by n * (m**2 - m) / 4.

    +budget+  Search limits. Default SearchBudget().

    Raises SizeError if elections are not equal-sized.
    Raises CapabilityError if m exceeds the budget's max_exact_m.
    """
    budget = SearchBudget() if budget is None else budget
    _check_equal_sized(e, f)
    if e.m > budget.max_exact_m:
        raise CapabilityError(f"exact isomorphic swap distance is limited "
                              f"to {budget.max_exact_m} candidates, "
                              f"elections have {e.m}")
    start = time.perf_counter()
    search = _IsoSwapSearch(e, f)
    total = search.run()
    exact = _normalized_swap(total, e.n, e.m)
    log.debug("iso swap %r vs %r: %s half-swaps, %d nodes, %.3fs",
              e.label, f.label, total, search.nodes,
              time.perf_counter() - start)
    return DistanceValue(float(exact), 'swap', exact)


# ---------------------------------------------------------------------------
# Positionwise distances

def _check_votes(*elections: Election):
    for e in elections:
        if not e.votes:
            raise EmptyInputError(f"election {e.label!r} has no votes")


def positionwise_distance(e: Election, f: Election) -> DistanceValue:
    """Return positionwise distance between +e+ and +f+.

    Wasserstein distance between the elections' frequency matrices
    under an optimal candidate matching. Voter counts may differ.

    Raises SizeError if candidate counts differ.
    """
    _check_votes(e, f)
    if e.m != f.m:
        raise SizeError(f"elections {e.label!r} and {f.label!r} have "
                        f"{e.m} and {f.m} candidates, use pos_hat")
    value, _ = matrix_wasserstein(frequency_matrix(e).entries,
                                  frequency_matrix(f).entries)
    return DistanceValue(value, 'pos')


def positionwise_hat(e: Election, f: Election,
                     method: str = 'transport',
                     budget: Optional[SearchBudget] = None
                     ) -> DistanceValue:
    """Return extended positionwise distance between +e+ and +f+.

    Both frequency matrices are stretched to lcm(m1, m2) columns and
    optimally matched. Equals positionwise_distance for equal candidate
    counts.

    +method+
        'transport'  Solve the equivalent m1 x m2 transportation problem.
        'assignment'  Stretch explicitly and solve the assignment.
    +budget+  Search limits. Default SearchBudget().

    Raises CapabilityError if a candidate count exceeds the budget's
    pos_hat_max_m.
    """
    budget = SearchBudget() if budget is None else budget
    _check_votes(e, f)
    if max(e.m, f.m) > budget.pos_hat_max_m:
        raise CapabilityError(f"pos_hat is limited to "
                              f"{budget.pos_hat_max_m} candidates, "
                              f"elections have {e.m} and {f.m}")
    x = frequency_matrix(e).entries
    y = frequency_matrix(f).entries
    if e.m == f.m:
        value, _ = matrix_wasserstein(x, y)
    elif method == 'transport':
        value, _ = matrix_wasserstein(x, y, method='transport')
    elif method == 'assignment':
        s = lcm(e.m, f.m)
        value, _ = matrix_wasserstein(stretch(x, s), stretch(y, s))
    else:
        raise ArgumentError(f"unknown pos_hat method {method!r}")
    return DistanceValue(value, 'pos_hat')


# ---------------------------------------------------------------------------
# Swap extensions

def _check_equal_voters(e: Election, f: Election):
    _check_votes(e, f)
    if e.n != f.n:
        raise SizeError(f"elections {e.label!r} and {f.label!r} have "
                        f"{e.n} and {f.n} votes")


def swap_tr_hat(e: Election, f: Election,
                budget: Optional[SearchBudget] = None) -> DistanceValue:
    """Return swap distance extended by truncated padding.

    The election with fewer candidates gains candidates that every vote
    has in its truncated part, then the isomorphic swap distance is
    taken.

    Raises SizeError if voter counts differ.
    """
    _check_equal_voters(e, f)
    m = max(e.m, f.m)
    value = iso_swap_distance(e.pad_candidates(m), f.pad_candidates(m),
                              budget)
    return replace(value, metric_id='swap_tr')


def _deletion_subsets(m: int, k: int, mode: DelMode,
                      budget: SearchBudget) -> Tuple[List[tuple], bool]:
    """Return (subsets to delete, True if every subset included)."""
    total = comb(m, k)
    if mode.kind == 'exact' and total <= budget.max_subsets:
        return list(combinations(range(m), k)), True
    if mode.kind == 'exact':
        log.warning("%d deletion subsets exceed budget of %d, sampling %d "
                    "with seed %d", total, budget.max_subsets,
                    mode.samples, mode.seed)
    rng = seeding.stream(mode.seed, seeding.SAMPLE_KEY)
    size = min(mode.samples, total)
    ranks = rng.choice(total, size=size, replace=False)
    subsets = [unrank_combination(int(r), m, k) for r in sorted(ranks)]
    return subsets, size == total


def swap_del_hat(e: Election, f: Election,
                 mode: Optional[DelMode] = None,
                 budget: Optional[SearchBudget] = None) -> DistanceValue:
    """Return swap distance extended by expected candidate deletion.

    Mean isomorphic swap distance between the smaller election and the
    larger one with a uniformly random set of surplus candidates
    deleted. Not a distance: the triangle inequality can fail.

    +mode+  Exact enumeration or Monte Carlo. Default DelMode().

    Raises SizeError if voter counts differ.
    """
    mode = DelMode() if mode is None else mode
    budget = SearchBudget() if budget is None else budget
    _check_equal_voters(e, f)
    small, large = (e, f) if e.m <= f.m else (f, e)
    k = large.m - small.m
    if k == 0:
        return replace(iso_swap_distance(e, f, budget), metric_id='swap_del')
    if small.m > budget.max_exact_m:
        raise CapabilityError(f"swap_del_hat is limited to "
                              f"{budget.max_exact_m} candidates after "
                              f"deletion, elections have {small.m} and "
                              f"{large.m}")
    subsets, complete = _deletion_subsets(large.m, k, mode, budget)
    values = [iso_swap_distance(small, large.delete_candidates(subset),
                                budget).exact
              for subset in subsets]
    mean = sum(values, Fraction(0)) / len(values)
    return DistanceValue(float(mean), 'swap_del', mean if complete else None)


# ---------------------------------------------------------------------------
# Feature distances

def feature_distance(fe: Sequence[float], ff: Sequence[float],
                     norm: str = 'l2',
                     metric_id: str = 'feature') -> DistanceValue:
    """Return norm of the difference of feature vectors +fe+ and +ff+.

    +norm+  'l2' or 'l1'.

    Raises DimensionError if vectors differ in length.
    """
    fe = np.asarray(fe, dtype=float)
    ff = np.asarray(ff, dtype=float)
    if fe.shape != ff.shape:
        raise DimensionError(f"feature vectors of length {len(fe)} and "
                             f"{len(ff)}")
    if norm not in ('l2', 'l1'):
        raise ArgumentError(f"unknown norm {norm!r}")
    order = 2 if norm == 'l2' else 1
    return DistanceValue(float(np.linalg.norm(fe - ff, ord=order)),
                         metric_id)


# ---------------------------------------------------------------------------
# Distance matrices

@dataclass(frozen=True)
class MetricSpec:
    """Metric with its parameters.

    ++name++  One of METRICS. Hyphens are read as underscores.
    ++budget++  Search limits.
    ++del_mode++  Mode of swap_del.
    ++pos_method++  Method of pos_hat.
    ++emk++  Strategy of dap, a dap.EmkStrategy. If None, the dap default.
    ++norm++  Norm of feature metrics.
    """

    name: str
    budget: SearchBudget = field(default_factory=SearchBudget)
    del_mode: DelMode = field(default_factory=DelMode)
    pos_method: str = 'transport'
    emk: Optional[object] = None
    norm: str = 'l2'

    def __post_init__(self):
        name = self.name.replace('-', '_')
        if name not in METRICS:
            raise ArgumentError(f"unknown metric {self.name!r}, expected "
                                f"one of {', '.join(METRICS)}")
        object.__setattr__(self, 'name', name)

    @property
    def is_feature_metric(self) -> bool:
        return self.name in FEATURE_METRICS

    def distance(self, e: Election, f: Election) -> DistanceValue:
        """Return distance between +e+ and +f+ under this metric."""
        if self.is_feature_metric:
            return feature_distance(self.features(e), self.features(f),
                                    self.norm, self.name)
        if self.name == 'swap':
            return iso_swap_distance(e, f, self.budget)
        if self.name == 'pos':
            return positionwise_distance(e, f)
        if self.name == 'pos_hat':
            return positionwise_hat(e, f, self.pos_method, self.budget)
        if self.name == 'swap_tr':
            return swap_tr_hat(e, f, self.budget)
        return swap_del_hat(e, f, self.del_mode, self.budget)

    def features(self, e: Election) -> Tuple[float, ...]:
        """Return feature vector of +e+ under a feature metric."""
        from . import dap
        assert self.is_feature_metric
        if self.name == 'indicator':
            return tuple(float(v) for v in dap.indicator_features(e))
        return dap.dap_vector(e, self.emk).as_tuple()


def _cell(task: Tuple[MetricSpec, Election, Election]):
    spec, e, f = task
    try:
        return spec.distance(e, f).value, None
    except ElecMapsError as err:
        return None, err


def _features(task: Tuple[MetricSpec, Election]):
    spec, e = task
    try:
        return spec.features(e), None
    except ElecMapsError as err:
        return None, err


def _labels(es: Sequence[Election]) -> List[str]:
    labels = [e.label if e.label is not None else f'e{i}'
              for i, e in enumerate(es)]
    if len(set(labels)) != len(labels):
        raise InputError("election labels are not unique")
    return labels


def pairwise_matrix(es: Sequence[Election], metric: Union[MetricSpec, str],
                    workers: Optional[int] = None) -> DistanceMatrix:
    """Return distance matrix of elections +es+.

    +metric+  MetricSpec or metric name.
    +workers+  Number of worker processes. Default MATRIX_WORKERS.
        Output does not depend on the number of workers.

    Raises PairwiseMatrixError reporting every failed cell if any
    distance could not be evaluated.
    """
    spec = MetricSpec(metric) if isinstance(metric, str) else metric
    workers = MATRIX_WORKERS if workers is None else workers
    labels = _labels(es)
    n = len(es)
    entries = np.zeros((n, n))
    failures = []
    start = time.perf_counter()
    if spec.is_feature_metric:
        results = map_tasks(_features, [(spec, e) for e in es], workers)
        for label, (_, err) in zip(labels, results):
            if err is not None:
                failures.append((label, label, err))
        if not failures:
            vectors = [features for features, _ in results]
            for i, j in combinations(range(n), 2):
                value = feature_distance(vectors[i], vectors[j], spec.norm)
                entries[i, j] = entries[j, i] = value.value
    else:
        pairs = list(combinations(range(n), 2))
        results = map_tasks(_cell, [(spec, es[i], es[j]) for i, j in pairs],
                            workers)
        for (i, j), (value, err) in zip(pairs, results):
            if err is not None:
                failures.append((labels[i], labels[j], err))
            else:
                entries[i, j] = entries[j, i] = value
    if failures:
        raise PairwiseMatrixError(failures)
    log.info("%s matrix of %d elections in %.2fs with %d worker(s)",
             spec.name, n, time.perf_counter() - start, max(1, workers))
    return DistanceMatrix(labels, entries, spec.name)
