#! /usr/bin/env python

"""Votes, elections, vote swap distance and frequency matrices.

Candidates are indexed from 0. A vote ranks a prefix of the candidates, its
'top' part; every candidate not in the top part is in the vote's truncated
part, below every ranked candidate and indifferent to every other
truncated candidate. A vote that ranks all but one candidate is stored as
the complete vote it implies.

Global ATTRIBUTES
The following module attributes are assigned default values that can be
overriden by defining an attribute of the same name in a configuration
file (see elecmaps.config.template.py):
    'DISTANCE_BLOCK_SIZE'

CLASSES
Vote  Top-truncated vote.
Election  Candidate count and an ordered collection of votes.
FrequencyMatrix  Position-by-candidate frequency matrix.

FUNCTIONS
half_swaps()  Swap distance between two votes in half-swap units.
swap_distance_votes()  Exact swap distance between two votes.
pairwise_half_swaps()  Table of half-swap distances between two sets of
    votes.
vote_distance_table()  Half-swap distances between an election's distinct
    votes.
pair_indicators()  Strict preference indicators of every candidate pair.
frequency_matrix()  Frequency matrix of an election.
validate_election()  List of violated vote and election invariants.
check_election()  Raise if an election is not well-formed.
"""

import logging
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

import elecmaps
from .errors import DimensionError, EmptyInputError, InputError

log = logging.getLogger(__name__)

# Rows of vote-pair indicators processed per block of pairwise_half_swaps.
DISTANCE_BLOCK_SIZE = 1024

settings = ['DISTANCE_BLOCK_SIZE']
elecmaps._config_import(vars(), settings)


@dataclass(frozen=True, order=True)
class Vote:
    """Top-truncated vote.

    ++top++  Ranked candidates, most preferred first.
    ++m++  Total number of candidates.

    PROPERTIES
    --is_complete--  True if the vote ranks every candidate.
    --truncated--  Candidates of the truncated part, ascending.
    --ranks--  Position of each candidate, truncated candidates all share
        position len(top).
    --order--  Complete order of a complete vote.

    METHODS
    --relabel()--  Vote with candidates renamed.
    --pad()--  Vote over more candidates, new candidates truncated.
    --restrict()--  Vote over a subset of the candidates.
    """

    top: Tuple[int, ...]
    m: int

    def __post_init__(self):
        top = tuple(int(c) for c in self.top)
        if len(top) == self.m - 1:
            missing = set(range(self.m)).difference(top)
            if len(missing) == 1:
                top += tuple(missing)
        object.__setattr__(self, 'top', top)

    @property
    def is_complete(self) -> bool:
        return len(self.top) == self.m

    @property
    def truncated(self) -> Tuple[int, ...]:
        ranked = set(self.top)
        return tuple(c for c in range(self.m) if c not in ranked)

    @property
    def ranks(self) -> np.ndarray:
        ranks = np.full(self.m, len(self.top), dtype=np.int64)
        ranks[list(self.top)] = np.arange(len(self.top))
        return ranks

    @property
    def order(self) -> Tuple[int, ...]:
        assert self.is_complete
        return self.top + self.truncated

    def relabel(self, mapping: Sequence[int]) -> 'Vote':
        """Return vote with candidate c renamed +mapping+[c]."""
        return Vote(tuple(mapping[c] for c in self.top), self.m)

    def pad(self, m: int) -> 'Vote':
        """Return vote over +m+ candidates, added candidates truncated."""
        assert m >= self.m
        return Vote(self.top, m)

    def restrict(self, keep: Sequence[int]) -> 'Vote':
        """Return vote over candidates +keep+ only.

        Candidate keep[i] becomes candidate i. +keep+ ascending.
        """
        index = {c: i for i, c in enumerate(keep)}
        return Vote(tuple(index[c] for c in self.top if c in index),
                    len(keep))


@dataclass(frozen=True)
class Election:
    """Election.

    ++m++  Number of candidates.
    ++votes++  Votes, duplicates allowed.
    ++label++  Identifier.
    ++candidate_names++  Name of each candidate.

    PROPERTIES
    --n--  Number of votes.
    --is_complete--  True if every vote is complete.
    --rank_matrix--  n x m array of candidate positions, one row per vote.
    --unique_votes--  (distinct votes in order of first appearance,
        multiplicity of each).

    METHODS
    ---from_orders---  Election from sequences of candidate indices.
    --relabel()--  Election with candidates renamed.
    --pad_candidates()--  Election with added always-truncated candidates.
    --delete_candidates()--  Election with candidates removed.
    --with_label()--  Same election with another label.
    """

    m: int
    votes: Tuple[Vote, ...]
    label: Optional[str] = field(default=None, compare=False)
    candidate_names: Optional[Tuple[str, ...]] = field(default=None,
                                                       compare=False)

    def __post_init__(self):
        object.__setattr__(self, 'votes', tuple(self.votes))
        if self.candidate_names is not None:
            object.__setattr__(self, 'candidate_names',
                               tuple(self.candidate_names))

    @classmethod
    def from_orders(cls, orders: Iterable[Sequence[int]],
                    m: Optional[int] = None,
                    label: Optional[str] = None) -> 'Election':
        """Return Election with one vote for each of +orders+.

        +m+  Number of candidates. If not passed, one more than the
            highest ranked index.
        """
        orders = [tuple(order) for order in orders]
        if m is None:
            m = max((max(order) + 1 for order in orders if order),
                    default=0)
        return cls(m, tuple(Vote(order, m) for order in orders), label)

    @property
    def n(self) -> int:
        return len(self.votes)

    @property
    def is_complete(self) -> bool:
        return all(vote.is_complete for vote in self.votes)

    @cached_property
    def rank_matrix(self) -> np.ndarray:
        if not self.votes:
            return np.zeros((0, self.m), dtype=np.int64)
        return np.stack([vote.ranks for vote in self.votes])

    @cached_property
    def unique_votes(self) -> Tuple[Tuple[Vote, ...], np.ndarray]:
        counts: Dict[Vote, int] = {}
        for vote in self.votes:
            counts[vote] = counts.get(vote, 0) + 1
        return tuple(counts), np.array(list(counts.values()), dtype=np.int64)

    def relabel(self, mapping: Sequence[int]) -> 'Election':
        """Return election with candidate c renamed +mapping+[c]."""
        return replace(self, votes=tuple(v.relabel(mapping)
                                         for v in self.votes),
                       candidate_names=None)

    def pad_candidates(self, m: int) -> 'Election':
        """Return election over +m+ candidates.

        Added candidates are in the truncated part of every vote.
        """
        if m == self.m:
            return self
        return replace(self, m=m, votes=tuple(v.pad(m) for v in self.votes),
                       candidate_names=None)

    def delete_candidates(self, removed: Iterable[int]) -> 'Election':
        """Return election without candidates +removed+.

        Remaining candidates are renumbered in ascending order.
        """
        removed = set(removed)
        keep = [c for c in range(self.m) if c not in removed]
        names = None
        if self.candidate_names is not None:
            names = tuple(self.candidate_names[c] for c in keep)
        return replace(self, m=len(keep),
                       votes=tuple(v.restrict(keep) for v in self.votes),
                       candidate_names=names)

    def with_label(self, label: Optional[str]) -> 'Election':
        return replace(self, label=label)


def half_swaps(u: Vote, v: Vote) -> int:
    """Return swap distance between +u+ and +v+ in half-swap units.

    A pair ranked strictly in both votes contributes 2 if the votes
    disagree on it. A pair strict in one vote and tied in the other
    contributes 1.
    """
    if u.m != v.m:
        raise DimensionError(f"votes over {u.m} and {v.m} candidates")
    su = np.sign(u.ranks[:, None] - u.ranks[None, :])
    sv = np.sign(v.ranks[:, None] - v.ranks[None, :])
    return int(np.abs(su - sv)[np.triu_indices(u.m, 1)].sum())


def swap_distance_votes(u: Vote, v: Vote) -> Fraction:
    """Return swap distance between votes +u+ and +v+."""
    return Fraction(half_swaps(u, v), 2)


def pair_indicators(ranks: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Return (a preferred, b preferred) indicators of every vote.

    +ranks+  k x m array of candidate positions.

    Returns two k x C(m, 2) float32 arrays, one column per candidate
    pair a < b in np.triu_indices order.
    """
    m = ranks.shape[1]
    first, second = np.triu_indices(m, 1)
    diff = ranks[:, second] - ranks[:, first]
    return (diff > 0).astype(np.float32), (diff < 0).astype(np.float32)


def pairwise_half_swaps(ranks_a: np.ndarray,
                        ranks_b: Optional[np.ndarray] = None,
                        block_size: Optional[int] = None) -> np.ndarray:
    """Return table of half-swap distances.

    +ranks_a+  k x m array of candidate positions, one row per vote (as
        Election.rank_matrix).
    +ranks_b+  l x m array as +ranks_a+. If not passed, +ranks_a+.
    +block_size+  Rows of +ranks_a+ processed at a time. Default
        DISTANCE_BLOCK_SIZE.

    Returns k x l int32 array, [i, j] the half-swap distance between
    vote i of +ranks_a+ and vote j of +ranks_b+.
    """
    block_size = DISTANCE_BLOCK_SIZE if block_size is None else block_size
    ranks_a = np.asarray(ranks_a)
    ranks_b = ranks_a if ranks_b is None else np.asarray(ranks_b)
    if ranks_a.shape[1] != ranks_b.shape[1]:
        raise DimensionError(f"votes over {ranks_a.shape[1]} and "
                             f"{ranks_b.shape[1]} candidates")
    pref_a, disp_a = pair_indicators(ranks_a)
    if ranks_b is ranks_a:
        pref_b, disp_b = pref_a, disp_a
    else:
        pref_b, disp_b = pair_indicators(ranks_b)
    strict_a = pref_a.sum(axis=1) + disp_a.sum(axis=1)
    strict_b = pref_b.sum(axis=1) + disp_b.sum(axis=1)
    table = np.empty((len(ranks_a), len(ranks_b)), dtype=np.int32)
    for start in range(0, len(ranks_a), block_size):
        stop = start + block_size
        agree = pref_a[start:stop] @ pref_b.T + disp_a[start:stop] @ disp_b.T
        block = strict_a[start:stop, None] + strict_b[None, :] - 2 * agree
        table[start:stop] = np.rint(block)
    return table


def vote_distance_table(e: Election) -> Tuple[np.ndarray, np.ndarray]:
    """Return (half-swap table, multiplicities) of +e+'s distinct votes.

    Table rows and columns ordered as Election.unique_votes.
    """
    votes, counts = e.unique_votes
    if not votes:
        raise EmptyInputError(f"election {e.label!r} has no votes")
    ranks = np.stack([vote.ranks for vote in votes])
    log.debug("distance table for %r: %d distinct of %d votes",
              e.label, len(votes), e.n)
    return pairwise_half_swaps(ranks), counts


@dataclass(frozen=True, eq=False)
class FrequencyMatrix:
    """Frequency matrix.

    ++m++  Dimension.
    ++entries++  m x m array, [i, j] the probability that candidate j is
        at position i.

    PROPERTIES
    --columns--  Candidate columns, each a distribution over positions.

    METHODS
    --is_bistochastic()--
    """

    m: int
    entries: np.ndarray

    @property
    def columns(self) -> List[np.ndarray]:
        return [self.entries[:, j] for j in range(self.m)]

    def is_bistochastic(self, tol: float = 1e-9) -> bool:
        entries = self.entries
        return (entries.shape == (self.m, self.m)
                and bool(np.all(entries >= -tol))
                and bool(np.all(entries <= 1 + tol))
                and np.allclose(entries.sum(axis=0), 1, rtol=0, atol=tol)
                and np.allclose(entries.sum(axis=1), 1, rtol=0, atol=tol))


def frequency_matrix(e: Election) -> FrequencyMatrix:
    """Return frequency matrix of election +e+.

    A candidate ranked at position i contributes 1 to entry [i, c]. A
    truncated candidate of a vote ranking t candidates contributes
    1 / (m - t) to each of positions t to m - 1.
    """
    if not e.votes:
        raise EmptyInputError(f"election {e.label!r} has no votes")
    m = e.m
    entries = np.zeros((m, m))
    votes, counts = e.unique_votes
    for vote, count in zip(votes, counts):
        t = len(vote.top)
        entries[np.arange(t), np.array(vote.top, dtype=np.int64)] += count
        if t < m:
            truncated = np.array(vote.truncated, dtype=np.int64)
            entries[t:, truncated] += count / (m - t)
    return FrequencyMatrix(m, entries / e.n)


def validate_election(e: Election) -> List[str]:
    """Return violations of vote and election invariants.

    Returns empty list if election well-formed, otherwise one message
    for each violation naming the offending vote.
    """
    violations = []
    if e.m < 1:
        violations.append(f"election: candidate count {e.m} less than 1")
    if not e.votes:
        violations.append("election: empty election, no votes")
    if e.candidate_names is not None and len(e.candidate_names) != e.m:
        violations.append(f"election: {len(e.candidate_names)} candidate "
                          f"names for {e.m} candidates")
    for i, vote in enumerate(e.votes):
        if vote.m != e.m:
            violations.append(f"vote {i}: dimension mismatch, vote over "
                              f"{vote.m} candidates in election over "
                              f"{e.m}")
        seen = set()
        for c in vote.top:
            if not 0 <= c < vote.m:
                violations.append(f"vote {i}: index {c} out of range")
            elif c in seen:
                violations.append(f"vote {i}: duplicate index {c}")
            seen.add(c)
    return violations


def check_election(e: Election):
    """Raise InputError listing violations if +e+ is not well-formed."""
    violations = validate_election(e)
    if violations:
        raise InputError(f"election {e.label!r} is malformed: "
                         + '; '.join(violations))
