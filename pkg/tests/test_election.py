"""Tests for elecmaps.election."""

from fractions import Fraction
from itertools import permutations

import numpy as np
import pytest
from scipy import stats

from conftest import (antagonism, identity, random_election, random_vote,
                      uniformity)
from elecmaps.election import (Election, Vote, check_election,
                               frequency_matrix, half_swaps,
                               pairwise_half_swaps, swap_distance_votes,
                               validate_election, vote_distance_table)
from elecmaps.errors import DimensionError, EmptyInputError, InputError


def test_vote_missing_last_candidate_is_completed():
    vote = Vote((0, 1), 3)
    assert vote.top == (0, 1, 2)
    assert vote.is_complete
    assert vote == Vote((0, 1, 2), 3)


def test_vote_truncated_part():
    vote = Vote((2,), 4)
    assert not vote.is_complete
    assert vote.truncated == (0, 1, 3)
    assert vote.ranks.tolist() == [1, 1, 0, 1]


def test_vote_relabel_pad_restrict():
    vote = Vote((2, 0, 1), 3)
    assert vote.relabel([1, 2, 0]).top == (0, 1, 2)
    padded = vote.pad(5)
    assert padded.m == 5 and padded.top == (2, 0, 1)
    assert not padded.is_complete
    assert vote.restrict([1, 2]).top == (1, 0)


def test_swap_distance_complete_votes():
    assert half_swaps(Vote((0, 1, 2), 3), Vote((2, 1, 0), 3)) == 6
    assert swap_distance_votes(Vote((0, 1, 2), 3),
                               Vote((1, 0, 2), 3)) == 1


def test_swap_distance_half_swap_for_tie():
    # pair (1, 2) strict in one vote, tied in the other
    assert swap_distance_votes(Vote((0,), 3), Vote((0, 1, 2), 3)) \
        == Fraction(1, 2)
    assert half_swaps(Vote((0,), 3), Vote((0,), 3)) == 0


def test_swap_distance_dimension_mismatch():
    with pytest.raises(DimensionError):
        half_swaps(Vote((0, 1), 2), Vote((0, 1, 2), 3))


def test_pairwise_half_swaps_matches_vote_pairs():
    votes = [Vote(p, 4) for p in permutations(range(4))]
    votes += [Vote((3,), 4), Vote((1, 2), 4), Vote((), 4)]
    ranks = np.stack([v.ranks for v in votes])
    table = pairwise_half_swaps(ranks, block_size=5)
    expected = [[half_swaps(u, v) for v in votes] for u in votes]
    assert table.tolist() == expected


def test_pairwise_half_swaps_dimension_mismatch():
    with pytest.raises(DimensionError):
        pairwise_half_swaps(np.zeros((2, 3)), np.zeros((2, 4)))


def test_election_from_orders_and_properties():
    e = Election.from_orders([(0, 1, 2), (2, 1, 0), (0, 1, 2)], label='e')
    assert e.m == 3 and e.n == 3
    assert e.is_complete
    votes, counts = e.unique_votes
    assert [v.top for v in votes] == [(0, 1, 2), (2, 1, 0)]
    assert counts.tolist() == [2, 1]
    assert e.rank_matrix.tolist() == [[0, 1, 2], [2, 1, 0], [0, 1, 2]]


def test_election_equality_ignores_label():
    assert identity(3, 2, 'a') == identity(3, 2, 'b')
    assert identity(3, 2) != identity(3, 3)


def test_election_pad_and_delete():
    e = Election.from_orders([(2, 0, 1)], 3, 'e')
    assert e.pad_candidates(3) is e
    padded = e.pad_candidates(5)
    assert padded.m == 5 and not padded.is_complete
    assert padded.label == 'e'
    deleted = e.delete_candidates([0])
    assert deleted.m == 2
    assert deleted.votes[0].top == (1, 0)


def test_election_delete_keeps_names():
    e = Election(3, (Vote((0, 1, 2), 3),), 'e', ('a', 'b', 'c'))
    assert e.delete_candidates([1]).candidate_names == ('a', 'c')


def test_vote_distance_table():
    table, counts = vote_distance_table(antagonism(3, 4))
    assert table.tolist() == [[0, 6], [6, 0]]
    assert counts.tolist() == [2, 2]
    with pytest.raises(EmptyInputError):
        vote_distance_table(Election(3, ()))


def test_frequency_matrix_truncated_votes_spread_evenly():
    e = Election(3, (Vote((0, 1, 2), 3), Vote((2,), 3)))
    freq = frequency_matrix(e)
    expected = [[0.5, 0.0, 0.5],
                [0.25, 0.75, 0.0],
                [0.25, 0.25, 0.5]]
    assert np.allclose(freq.entries, expected)
    assert freq.is_bistochastic()
    assert len(freq.columns) == 3


@pytest.mark.parametrize('e', [identity(4, 5), antagonism(5, 6),
                               uniformity(3, 2)])
def test_frequency_matrix_bistochastic(e):
    assert frequency_matrix(e).is_bistochastic()


def test_frequency_matrix_of_uniformity_is_flat():
    assert np.allclose(frequency_matrix(uniformity(4)).entries, 0.25)


def test_frequency_matrix_empty():
    with pytest.raises(EmptyInputError):
        frequency_matrix(Election(2, ()))


def test_validate_election():
    assert validate_election(identity(3, 2)) == []
    bad = Election(3, (Vote((0, 0), 3), Vote((5,), 3), Vote((0,), 2)))
    violations = validate_election(bad)
    assert any('vote 0: duplicate index 0' in v for v in violations)
    assert any('vote 1: index 5 out of range' in v for v in violations)
    assert any('vote 2: dimension mismatch' in v for v in violations)
    assert validate_election(Election(3, ())) == [
        "election: empty election, no votes"]
    with pytest.raises(InputError, match='malformed'):
        check_election(bad)


def test_swap_distance_is_a_metric_on_random_votes():
    rng = np.random.default_rng(11)
    for _ in range(500):
        m = int(rng.integers(2, 8))
        u, v, w = (random_vote(rng, m) for _ in range(3))
        assert half_swaps(u, u) == 0
        assert half_swaps(u, v) == half_swaps(v, u)
        assert half_swaps(u, w) <= half_swaps(u, v) + half_swaps(v, w)


def test_swap_distance_agrees_with_kendall_tau():
    rng = np.random.default_rng(12)
    for _ in range(300):
        m = int(rng.integers(2, 9))
        u = random_vote(rng, m, truncate=False)
        v = random_vote(rng, m, truncate=False)
        tau = stats.kendalltau(u.ranks, v.ranks)[0]
        discordant = (m * (m - 1) / 2) * (1 - tau) / 2
        assert float(swap_distance_votes(u, v)) \
            == pytest.approx(discordant, abs=1e-9)


def test_frequency_matrix_bistochastic_on_random_truncated_elections():
    rng = np.random.default_rng(13)
    for _ in range(1000):
        m = int(rng.integers(2, 9))
        e = random_election(rng, m, int(rng.integers(1, 13)))
        freq = frequency_matrix(e)
        assert freq.entries.shape == (m, m)
        assert np.all(freq.entries >= 0)
        assert freq.is_bistochastic()
