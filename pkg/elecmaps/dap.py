#! /usr/bin/env python

"""Diversity, agreement and polarization.

The empirical i-Kemeny score of an election, emk_i, is the minimum over
sets of i of its votes ('centers') of the total swap distance from every
vote to its nearest center. Scores are computed on the election's
distinct votes weighted by multiplicity and reported in half-swap units
internally.

Diversity is (2 / DIVERSITY_DEPTH) * sum of emk_1..emk_DIVERSITY_DEPTH,
polarization is 2 * (emk_1 - emk_2), both over n * C(m, 2). Agreement is
the mean over candidate pairs of max(|N(a > b) - N(b > a)|, N(a ~ b)) / n.

Global ATTRIBUTES
The following module attributes are assigned default values that can be
overriden by defining an attribute of the same name in a configuration
file (see elecmaps.config.template.py):
    'DIVERSITY_DEPTH', 'LOCAL_SEARCH_RESTARTS', 'EXACT_COMBINATION_LIMIT',
    'SUBSAMPLE_ABOVE', 'SUBSAMPLE_COUNT', 'SUBSAMPLE_VOTES', 'DAP_WORKERS'

CLASSES
EmkStrategy  How empirical Kemeny scores are searched.
EmkResult  Empirical i-Kemeny score.
DapVector  Diversity, agreement and polarization of an election.
DapReportRow  Row of a DAP report.

FUNCTIONS
agreement_index()  Agreement index.
emk_score()  Empirical i-Kemeny score.
emk_scores()  Empirical 1..depth-Kemeny scores.
diversity_index()  Diversity index.
polarization_index()  Polarization index.
sample_votes()  Election of votes sampled without replacement.
dap_vector()  Diversity, agreement and polarization.
dap_distance()  DAP distance.
indicator_features()  ID, AN and UN indicator features.
closest_reference()  Nearest reference election by DAP.
dap_report_rows()  DAP report rows of elections.
write_dap_report()  Write DAP report as CSV.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, islice
from math import comb, factorial
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

import elecmaps
from .distances import DistanceValue, feature_distance
from .election import Election, pair_indicators, vote_distance_table
from .errors import (ArgumentError, CapabilityError, DegenerateInputError,
                     ElecMapsError, EmptyInputError)
from .lib import seeding
from .lib.combinatorics import pairs
from .lib.parallel import map_tasks
from .lib.textio import Target, csv_text, write_text

log = logging.getLogger(__name__)

DIVERSITY_DEPTH = 5
LOCAL_SEARCH_RESTARTS = 4
EXACT_COMBINATION_LIMIT = 1_000_000
# Diversity and polarization of elections with more votes are averaged
# over SUBSAMPLE_COUNT samples of SUBSAMPLE_VOTES votes. None to disable.
SUBSAMPLE_ABOVE: Optional[int] = 10_000
SUBSAMPLE_COUNT = 20
SUBSAMPLE_VOTES = 500
DAP_WORKERS = 1

settings = ['DIVERSITY_DEPTH', 'LOCAL_SEARCH_RESTARTS',
            'EXACT_COMBINATION_LIMIT', 'SUBSAMPLE_ABOVE', 'SUBSAMPLE_COUNT',
            'SUBSAMPLE_VOTES', 'DAP_WORKERS']
elecmaps._config_import(vars(), settings)

# Elements of the (votes x center sets x i) block of an exact search.
_BATCH_ELEMENTS = 4_000_000
_COLUMN_BLOCK = 1024


@dataclass(frozen=True)
class EmkStrategy:
    """How empirical Kemeny scores are searched.

    ++kind++
        'exact'  Enumerate every set of centers among the distinct votes.
        'local_search'  Swap-based local search from farthest-first
            starts.
        'auto'  'exact' if there are at most ++exact_limit++ center sets,
            otherwise 'local_search'.
    ++restarts++  Number of local search starts.
    ++seed++  Seed of randomised starts and of vote subsamples.
    ++exact_limit++  Largest number of center sets enumerated.
    """

    kind: str = 'auto'
    restarts: int = field(default_factory=lambda: LOCAL_SEARCH_RESTARTS)
    seed: int = 0
    exact_limit: int = field(default_factory=lambda: EXACT_COMBINATION_LIMIT)

    def __post_init__(self):
        if self.kind not in ('exact', 'local_search', 'auto'):
            raise ArgumentError(f"unknown emk strategy {self.kind!r}")
        if self.restarts < 1:
            raise ArgumentError("local search needs at least one restart")


@dataclass(frozen=True)
class EmkResult:
    """Empirical i-Kemeny score.

    ++i++  Number of centers.
    ++half_swaps++  Score in half-swap units.
    ++centers++  Index of the first vote of each center.
    ++exact++  True if score is known to be the minimum.

    PROPERTIES
    --score--  Score in swaps.
    """

    i: int
    half_swaps: int
    centers: Tuple[int, ...]
    exact: bool

    @property
    def score(self) -> Fraction:
        return Fraction(self.half_swaps, 2)


# ---------------------------------------------------------------------------
# Agreement

def agreement_index(e: Election) -> float:
    """Return agreement index of +e+.

    Candidates both in the truncated part of a vote are tied in that
    vote.

    Raises DegenerateInputError if +e+ has fewer than 2 candidates.
    """
    if not e.votes:
        raise EmptyInputError(f"election {e.label!r} has no votes")
    if e.m < 2:
        raise DegenerateInputError("agreement needs at least 2 candidates")
    votes, counts = e.unique_votes
    preferred, dispreferred = pair_indicators(
        np.stack([vote.ranks for vote in votes]))
    forward = counts @ preferred.astype(np.int64)
    backward = counts @ dispreferred.astype(np.int64)
    tied = e.n - forward - backward
    alpha = np.maximum(np.abs(forward - backward), tied) / e.n
    return float(alpha.mean())


# ---------------------------------------------------------------------------
# Empirical Kemeny scores

def _total(table: np.ndarray, weights: np.ndarray,
           centers: Sequence[int]) -> int:
    return int(weights @ table[:, list(centers)].min(axis=1))


def _exact(table: np.ndarray, weights: np.ndarray,
           i: int) -> Tuple[int, Tuple[int, ...]]:
    k = len(table)
    sets = combinations(range(k), i)
    batch = max(1, _BATCH_ELEMENTS // (k * i))
    best, best_centers = None, None
    while True:
        chunk = list(islice(sets, batch))
        if not chunk:
            break
        nearest = table[:, np.array(chunk)].min(axis=2)
        totals = weights @ nearest
        j = int(np.argmin(totals))
        if best is None or totals[j] < best:
            best, best_centers = int(totals[j]), chunk[j]
    return best, tuple(best_centers)


def _farthest_first(table: np.ndarray, weights: np.ndarray,
                    centers: List[int], i: int) -> List[int]:
    centers = list(centers)
    while len(centers) < i:
        nearest = table[:, centers].min(axis=1).astype(np.int64)
        nearest[centers] = -1
        centers.append(int(np.argmax(nearest)))
    return centers


def _swap_totals(table: np.ndarray, weights: np.ndarray,
                 base: np.ndarray) -> np.ndarray:
    # total with each vote q added to centers whose nearest are +base+
    k = len(table)
    totals = np.empty(k, dtype=np.int64)
    for start in range(0, k, _COLUMN_BLOCK):
        block = np.minimum(base[:, None], table[:, start:start+_COLUMN_BLOCK])
        totals[start:start+_COLUMN_BLOCK] = weights @ block
    return totals


def _local_search(table: np.ndarray, weights: np.ndarray,
                  centers: List[int]) -> Tuple[int, List[int]]:
    """Improve +centers+ by single-center swaps to a fixed point.

    Positions are scanned in order. At each position the lowest index
    vote that strictly improves the total replaces the center.
    """
    centers = list(centers)
    total = _total(table, weights, centers)
    unreachable = np.iinfo(np.int32).max
    improved = True
    while improved:
        improved = False
        for p in range(len(centers)):
            others = centers[:p] + centers[p+1:]
            if others:
                base = table[:, others].min(axis=1).astype(np.int64)
            else:
                base = np.full(len(table), unreachable, dtype=np.int64)
            totals = _swap_totals(table, weights, base)
            totals[centers] = np.iinfo(np.int64).max
            better = np.nonzero(totals < total)[0]
            if len(better):
                centers[p] = int(better[0])
                total = int(totals[better[0]])
                improved = True
    return total, centers


def _starts(table: np.ndarray, weights: np.ndarray, i: int,
            strategy: EmkStrategy) -> List[List[int]]:
    k = len(table)
    median = int(np.argmin(weights @ table))
    starts = [_farthest_first(table, weights, [median], i)]
    for restart in range(1, strategy.restarts):
        rng = seeding.stream(strategy.seed, seeding.RESTART_KEY, i, restart)
        first = int(rng.integers(k))
        starts.append(_farthest_first(table, weights, [first], i))
    return starts


def _search(table: np.ndarray, weights: np.ndarray, i: int,
            strategy: EmkStrategy,
            previous: Optional[List[int]] = None
            ) -> Tuple[int, Tuple[int, ...], bool]:
    """Return (half-swaps, distinct vote centers, exact)."""
    k = len(table)
    if i >= k:
        return 0, tuple(range(k)), True
    kind = strategy.kind
    if kind == 'auto':
        kind = 'exact' if comb(k, i) <= strategy.exact_limit else \
            'local_search'
    if kind == 'exact':
        if comb(k, i) > strategy.exact_limit:
            raise CapabilityError(f"exact emk_{i} over {k} distinct votes "
                                  f"needs {comb(k, i)} center sets, limit "
                                  f"is {strategy.exact_limit}")
        total, centers = _exact(table, weights, i)
        return total, centers, True
    starts = _starts(table, weights, i, strategy)
    if previous is not None:
        starts.append(_farthest_first(table, weights, previous, i))
    best = None
    for start in starts:
        total, centers = _local_search(table, weights, start)
        if best is None or total < best[0]:
            best = (total, tuple(sorted(centers)))
    return best[0], best[1], False


def _first_indices(e: Election) -> List[int]:
    # index of the first vote equal to each distinct vote
    first: Dict[object, int] = {}
    for index, vote in enumerate(e.votes):
        first.setdefault(vote, index)
    return list(first.values())


def emk_scores(e: Election, depth: Optional[int] = None,
               strategy: Optional[EmkStrategy] = None) -> List[EmkResult]:
    """Return empirical i-Kemeny scores for i = 1, ..., +depth+.

    +depth+  Default DIVERSITY_DEPTH.
    +strategy+  Default EmkStrategy().

    Scores are non-increasing in i. For i above the number of votes the
    score is 0.
    """
    depth = DIVERSITY_DEPTH if depth is None else depth
    strategy = EmkStrategy() if strategy is None else strategy
    table, weights = vote_distance_table(e)
    firsts = _first_indices(e)
    results = []
    previous = None
    for i in range(1, depth + 1):
        total, centers, exact = _search(table, weights, min(i, e.n),
                                        strategy, previous)
        previous = list(centers)
        results.append(EmkResult(i, total,
                                 tuple(firsts[c] for c in centers), exact))
    log.debug("emk scores of %r: %s", e.label,
              [result.half_swaps for result in results])
    return results


def emk_score(e: Election, i: int,
              strategy: Optional[EmkStrategy] = None) -> EmkResult:
    """Return empirical +i+-Kemeny score of +e+.

    +strategy+  Default EmkStrategy().

    Raises ArgumentError if +i+ is less than 1 or more than the number
    of votes.
    """
    if not e.votes:
        raise EmptyInputError(f"election {e.label!r} has no votes")
    if not 1 <= i <= e.n:
        raise ArgumentError(f"emk_{i} of an election with {e.n} votes")
    strategy = EmkStrategy() if strategy is None else strategy
    table, weights = vote_distance_table(e)
    total, centers, exact = _search(table, weights, i, strategy)
    firsts = _first_indices(e)
    return EmkResult(i, total, tuple(firsts[c] for c in centers), exact)


def _normaliser(e: Election) -> int:
    # n * C(m, 2) in half-swaps per swap units
    if e.m < 2:
        raise DegenerateInputError("indices need at least 2 candidates")
    return e.n * pairs(e.m)


def _diversity(e: Election, results: List[EmkResult], depth: int) -> float:
    total = sum(result.half_swaps for result in results[:depth])
    # (2 / depth) * (total / 2) / (n * C(m, 2))
    return total / (depth * _normaliser(e))


def _polarization(e: Election, results: List[EmkResult]) -> float:
    if e.n < 2:
        raise DegenerateInputError("polarization needs at least 2 votes")
    # 2 * (emk_1 - emk_2) in swaps
    return (results[0].half_swaps - results[1].half_swaps) / _normaliser(e)


def diversity_index(e: Election, strategy: Optional[EmkStrategy] = None,
                    depth: Optional[int] = None) -> float:
    """Return diversity index of +e+.

    +depth+  Number of emk scores summed. Default DIVERSITY_DEPTH.
    """
    depth = DIVERSITY_DEPTH if depth is None else depth
    _normaliser(e)
    return _diversity(e, emk_scores(e, depth, strategy), depth)


def polarization_index(e: Election,
                       strategy: Optional[EmkStrategy] = None) -> float:
    """Return polarization index of +e+.

    Raises DegenerateInputError if +e+ has fewer than 2 votes.
    """
    if e.n < 2:
        raise DegenerateInputError("polarization needs at least 2 votes")
    _normaliser(e)
    return _polarization(e, emk_scores(e, 2, strategy))


def sample_votes(e: Election, size: int, seed: int) -> Election:
    """Return election of +size+ votes of +e+ sampled without replacement.

    Sampled votes keep their order in +e+.
    """
    rng = seeding.stream(seed, seeding.SAMPLE_KEY)
    chosen = np.sort(rng.choice(e.n, size=min(size, e.n), replace=False))
    return Election(e.m, tuple(e.votes[i] for i in chosen), e.label,
                    e.candidate_names)


@dataclass(frozen=True)
class DapVector:
    """Diversity, agreement and polarization of an election.

    ++subsampled++  True if diversity and polarization are averages over
        vote subsamples.

    METHODS
    --as_tuple()--  (diversity, agreement, polarization).
    """

    diversity: float
    agreement: float
    polarization: float
    subsampled: bool = False

    def as_tuple(self) -> Tuple[float, float, float]:
        return (self.diversity, self.agreement, self.polarization)


def _diversity_polarization(e: Election, strategy: EmkStrategy,
                            depth: int) -> Tuple[float, float]:
    results = emk_scores(e, max(depth, 2), strategy)
    return _diversity(e, results, depth), _polarization(e, results)


def dap_vector(e: Election, strategy: Optional[EmkStrategy] = None,
               depth: Optional[int] = None) -> DapVector:
    """Return diversity, agreement and polarization of +e+.

    For elections of more than SUBSAMPLE_ABOVE votes diversity and
    polarization are averaged over SUBSAMPLE_COUNT samples of
    SUBSAMPLE_VOTES votes, seeded from the strategy's seed. Agreement is
    always evaluated on every vote.
    """
    strategy = EmkStrategy() if strategy is None else strategy
    depth = DIVERSITY_DEPTH if depth is None else depth
    agreement = agreement_index(e)
    if e.n < 2:
        raise DegenerateInputError("polarization needs at least 2 votes")
    if SUBSAMPLE_ABOVE is not None and e.n > SUBSAMPLE_ABOVE:
        values = []
        for sample in range(SUBSAMPLE_COUNT):
            seed = seeding.derive_seed(strategy.seed, seeding.SAMPLE_KEY,
                                       sample)
            part = sample_votes(e, SUBSAMPLE_VOTES, seed)
            values.append(_diversity_polarization(part, strategy, depth))
        diversity, polarization = np.mean(values, axis=0)
        log.info("dap of %r (%d votes) averaged over %d samples of %d",
                 e.label, e.n, SUBSAMPLE_COUNT, SUBSAMPLE_VOTES)
        return DapVector(float(diversity), agreement, float(polarization),
                         subsampled=True)
    diversity, polarization = _diversity_polarization(e, strategy, depth)
    return DapVector(diversity, agreement, polarization)


def dap_distance(e: Election, f: Election,
                 strategy: Optional[EmkStrategy] = None) -> DistanceValue:
    """Return DAP distance, the l2 distance of the elections' DAP vectors."""
    return feature_distance(dap_vector(e, strategy).as_tuple(),
                            dap_vector(f, strategy).as_tuple(),
                            metric_id='dap')


def indicator_features(e: Election) -> Tuple[int, int, int]:
    """Return (id, an, un) indicator features of +e+.

    Each feature is 0 if +e+ is isomorphic to, respectively, an ID, AN
    or UN election, otherwise 1.

    Raises CapabilityError if +e+ has a truncated vote.
    """
    if not e.votes:
        raise EmptyInputError(f"election {e.label!r} has no votes")
    if not e.is_complete:
        raise CapabilityError("indicator features are defined for "
                              "complete elections only")
    votes, counts = e.unique_votes
    orders = [vote.order for vote in votes]
    is_id = len(orders) == 1
    is_an = (len(orders) == 2 and counts[0] == counts[1]
             and orders[0] == orders[1][::-1])
    is_un = (len(orders) == factorial(e.m)
             and bool(np.all(counts == counts[0])))
    return (int(not is_id), int(not is_an), int(not is_un))


def closest_reference(vector: DapVector,
                      references: Mapping[str, DapVector]
                      ) -> Tuple[str, float]:
    """Return (label, distance) of the reference nearest +vector+.

    Ties go to the first reference in iteration order.
    """
    if not references:
        raise ArgumentError("no reference elections")
    best = None
    for label, reference in references.items():
        distance = float(np.linalg.norm(np.subtract(vector.as_tuple(),
                                                    reference.as_tuple())))
        if best is None or distance < best[1]:
            best = (label, distance)
    return best


@dataclass(frozen=True)
class DapReportRow:
    """Row of a DAP report."""

    label: str
    m: int
    n: int
    unique_votes: int
    vector: DapVector
    closest: Optional[str] = None
    closest_distance: Optional[float] = None


def _report_task(task: Tuple[Election, EmkStrategy]):
    e, strategy = task
    try:
        return dap_vector(e, strategy), None
    except ElecMapsError as err:
        return None, err


def dap_report_rows(es: Sequence[Election],
                    strategy: Optional[EmkStrategy] = None,
                    references: Optional[Mapping[str, DapVector]] = None,
                    workers: Optional[int] = None) -> List[DapReportRow]:
    """Return DAP report rows of elections +es+.

    +references+  If passed, each row names its nearest reference.
    +workers+  Number of worker processes. Default DAP_WORKERS.

    Elections that fail are logged and omitted.
    """
    strategy = EmkStrategy() if strategy is None else strategy
    workers = DAP_WORKERS if workers is None else workers
    results = map_tasks(_report_task, [(e, strategy) for e in es], workers)
    rows = []
    for e, (vector, err) in zip(es, results):
        if err is not None:
            log.warning("dap of %r failed: %s", e.label, err)
            continue
        closest = distance = None
        if references:
            closest, distance = closest_reference(vector, references)
        rows.append(DapReportRow(e.label, e.m, e.n, len(e.unique_votes[0]),
                                 vector, closest, distance))
    return rows


def write_dap_report(rows: Sequence[DapReportRow],
                     target: Target = None) -> str:
    """Write DAP report as CSV and return the text.

    Columns label, m, n, unique_votes, diversity, agreement,
    polarization, followed by closest and closest_distance if any row
    names a closest reference.
    """
    with_closest = any(row.closest is not None for row in rows)
    header = ['label', 'm', 'n', 'unique_votes', 'diversity', 'agreement',
              'polarization']
    if with_closest:
        header += ['closest', 'closest_distance']
    lines = [header]
    for row in rows:
        values = [row.label, row.m, row.n, row.unique_votes,
                  *(f'{v:.6f}' for v in row.vector.as_tuple())]
        if with_closest:
            values += [row.closest or '',
                       '' if row.closest_distance is None
                       else f'{row.closest_distance:.6f}']
        lines.append(values)
    text = csv_text(lines)
    write_text(text, target)
    return text
