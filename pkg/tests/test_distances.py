"""Tests for elecmaps.distances."""

import io
from fractions import Fraction
from itertools import permutations

import numpy as np
import pytest

from conftest import antagonism, identity, random_election, uniformity
from elecmaps.cultures import CultureSpec, sample_election
from elecmaps.dap import dap_distance
from elecmaps.distances import (DelMode, DistanceMatrix, MetricSpec,
                                SearchBudget, feature_distance,
                                iso_swap_distance, pairwise_matrix,
                                positionwise_distance, positionwise_hat,
                                swap_del_hat, swap_tr_hat)
from elecmaps.election import Election
from elecmaps.errors import (ArgumentError, CapabilityError, DimensionError,
                             InputError, PairwiseMatrixError, SizeError)

# every vote a cyclic shift of a > b > c, two of each
CYCLIC = Election.from_orders([(0, 1, 2), (0, 1, 2), (1, 2, 0), (1, 2, 0),
                               (2, 0, 1), (2, 0, 1)], 3, 'cyclic')


def test_iso_swap_golden_values():
    assert iso_swap_distance(antagonism(3, 6), uniformity(3)).exact \
        == Fraction(4, 9)
    assert iso_swap_distance(antagonism(4, 24), uniformity(4)).exact \
        == Fraction(11, 18)


def test_iso_swap_invariant_under_relabeling():
    e = sample_election(CultureSpec('ic', 5, 8, seed=3))
    shuffled = Election(e.m, tuple(reversed(e.votes))).relabel(
        [3, 0, 4, 1, 2])
    value = iso_swap_distance(e, shuffled)
    assert value.exact == 0
    assert value.metric_id == 'swap'


def test_iso_swap_id_an():
    # half the votes reversed: C(m, 2) swaps each
    assert iso_swap_distance(identity(4, 4), antagonism(4, 4)).exact \
        == Fraction(1, 1)


def test_iso_swap_requires_equal_size():
    with pytest.raises(SizeError):
        iso_swap_distance(identity(3, 4), identity(3, 5))
    with pytest.raises(SizeError):
        iso_swap_distance(identity(3, 4), identity(4, 4))


def test_iso_swap_budget():
    with pytest.raises(CapabilityError):
        iso_swap_distance(identity(5, 2), identity(5, 2),
                          SearchBudget(max_exact_m=4))


def test_swap_tr_pads_with_truncated_candidates():
    assert swap_tr_hat(identity(3, 6), identity(4, 6)).value == 0
    value = swap_tr_hat(identity(3, 6), identity(5, 6))
    assert value.value > 0
    assert value.metric_id == 'swap_tr'


def test_swap_tr_requires_equal_voters():
    with pytest.raises(SizeError):
        swap_tr_hat(identity(3, 6), identity(4, 5))


def test_swap_del_violates_triangle_inequality():
    id3, id2 = identity(3, 6, 'id3'), identity(2, 6, 'id2')
    assert swap_del_hat(CYCLIC, id3).exact == Fraction(8, 9)
    assert swap_del_hat(CYCLIC, id2).exact == Fraction(2, 3)
    assert swap_del_hat(id2, id3).exact == 0
    d = pairwise_matrix([CYCLIC, id3, id2], 'swap_del')
    assert any('triangle' in p for p in d.check_pseudodistance())
    assert d.triangle_violations().tolist() == [1, 1, 1]


def test_swap_del_monte_carlo():
    mode = DelMode('monte_carlo', samples=2, seed=5)
    value = swap_del_hat(CYCLIC, identity(2, 6), mode)
    assert value.value == pytest.approx(2 / 3)
    assert value.exact is None
    with pytest.raises(ArgumentError):
        DelMode('greedy')


def test_swap_del_equal_sizes_is_swap():
    value = swap_del_hat(antagonism(3, 6), uniformity(3))
    assert value.exact == Fraction(4, 9)
    assert value.metric_id == 'swap_del'


@pytest.mark.parametrize('m', [2, 4, 6,
                               pytest.param(8, marks=pytest.mark.slow)])
def test_positionwise_uniformity_identity(m):
    value = positionwise_distance(uniformity(m), identity(m, 3)).value
    assert value == pytest.approx(1 / 3 - 1 / (3 * m ** 2), abs=1e-9)


@pytest.mark.parametrize('m', [4, 6,
                               pytest.param(8, marks=pytest.mark.slow)])
def test_positionwise_uniformity_antagonism(m):
    value = positionwise_distance(uniformity(m), antagonism(m, 2)).value
    assert value == pytest.approx(1 / 6 - 1 / (6 * m), abs=1e-9)


def test_positionwise_two_candidates_an_is_un():
    assert positionwise_distance(uniformity(2), antagonism(2, 4)).value \
        == pytest.approx(0)


def test_positionwise_requires_equal_candidates():
    with pytest.raises(SizeError):
        positionwise_distance(identity(3, 2), identity(4, 2))


def test_positionwise_hat_equal_sizes_is_positionwise():
    e = sample_election(CultureSpec('ic', 4, 10, seed=1))
    f = sample_election(CultureSpec('mallows', 4, 7, seed=2, norm_phi=0.3))
    assert positionwise_hat(e, f).value \
        == pytest.approx(positionwise_distance(e, f).value)


def test_positionwise_hat_different_sizes():
    assert positionwise_hat(identity(3, 2), identity(6, 2)).value \
        == pytest.approx(1 / 12)
    e = sample_election(CultureSpec('ic', 3, 10, seed=1))
    f = sample_election(CultureSpec('urn', 4, 10, seed=2, alpha=0.5))
    transport = positionwise_hat(e, f, 'transport').value
    assignment = positionwise_hat(e, f, 'assignment').value
    assert transport == pytest.approx(assignment, abs=1e-9)


def test_positionwise_hat_budget():
    with pytest.raises(CapabilityError):
        positionwise_hat(identity(3, 2), identity(6, 2),
                         budget=SearchBudget(pos_hat_max_m=5))
    with pytest.raises(ArgumentError):
        positionwise_hat(identity(3, 2), identity(6, 2), method='greedy')


def test_feature_distance():
    assert feature_distance((0, 0), (3, 4)).value == 5
    assert feature_distance((0, 0), (3, 4), 'l1').value == 7
    with pytest.raises(DimensionError):
        feature_distance((0, 0), (1, 2, 3))
    with pytest.raises(ArgumentError):
        feature_distance((0,), (1,), 'max')


def test_metric_spec_names():
    assert MetricSpec('pos-hat').name == 'pos_hat'
    assert MetricSpec('dap').is_feature_metric
    with pytest.raises(ArgumentError):
        MetricSpec('hamming')


def test_pairwise_matrix_indicator():
    es = [identity(3, 6), antagonism(3, 6), uniformity(3)]
    d = pairwise_matrix(es, 'indicator')
    assert d.labels == ('id', 'an', 'un')
    off_diagonal = d.entries[~np.eye(3, dtype=bool)]
    assert np.allclose(off_diagonal, np.sqrt(2))
    assert d.check_pseudodistance() == []


def test_pairwise_matrix_reports_failed_cells():
    es = [identity(3, 4, 'a'), identity(3, 5, 'b'), identity(3, 4, 'c')]
    with pytest.raises(PairwiseMatrixError) as info:
        pairwise_matrix(es, 'swap')
    failures = info.value.failures
    assert [(a, b) for a, b, _ in failures] == [('a', 'b'), ('b', 'c')]
    assert all(isinstance(err, SizeError) for _, _, err in failures)
    assert info.value.exit_code == 2


def test_pairwise_matrix_unlabeled_and_duplicate_labels():
    d = pairwise_matrix([Election.from_orders([(0, 1)]),
                         Election.from_orders([(1, 0)])], 'pos')
    assert d.labels == ('e0', 'e1')
    with pytest.raises(InputError):
        pairwise_matrix([identity(2, 2), identity(2, 2)], 'pos')


@pytest.mark.slow
def test_pairwise_matrix_independent_of_workers():
    es = [sample_election(CultureSpec('ic', 4, 8, seed=s), f'e{s}')
          for s in range(5)]
    assert pairwise_matrix(es, 'pos', workers=1) \
        == pairwise_matrix(es, 'pos', workers=2)


def test_distance_matrix_csv(tmp_path):
    d = DistanceMatrix(['a', 'b'], [[0, 0.5], [0.5, 0]], 'pos')
    path = tmp_path / 'd.csv'
    text = d.to_csv(path)
    assert text == 'label,a,b\na,0,0.5\nb,0.5,0\n'
    assert DistanceMatrix.from_csv(path, 'pos') == d
    assert d.value('a', 'b') == 0.5
    assert d.submatrix(['b']).entries.tolist() == [[0.0]]


@pytest.mark.parametrize('text', [
    'x,a\na,0\n',
    'label,a,b\nb,0,1\na,1,0\n',
    'label,a\na,zero\n',
])
def test_distance_matrix_csv_errors(text):
    with pytest.raises(InputError):
        DistanceMatrix.from_csv(io.StringIO(text))


def test_distance_matrix_checks():
    d = DistanceMatrix(['a', 'b'], [[0.1, 1], [2, 0]])
    problems = d.check_pseudodistance()
    assert "matrix is not symmetric" in problems
    assert "diagonal is not zero" in problems
    with pytest.raises(DimensionError):
        DistanceMatrix(['a'], np.zeros((2, 2)))


def _brute_force_iso_swap(e, f):
    # every candidate bijection, every voter bijection
    m, n = e.m, e.n
    ranks_f = np.stack([v.ranks for v in f.votes])
    voter_perms = np.array(list(permutations(range(n))))
    first, second = np.triu_indices(m, 1)
    sign_f = np.sign(ranks_f[:, second] - ranks_f[:, first])
    best = None
    for mapping in permutations(range(m)):
        ranks_e = np.stack([v.relabel(mapping).ranks for v in e.votes])
        sign_e = np.sign(ranks_e[:, second] - ranks_e[:, first])
        cost = (sign_e[:, None, :] != sign_f[None, :, :]).sum(axis=2)
        total = cost[np.arange(n), voter_perms].sum(axis=1).min()
        best = total if best is None else min(best, total)
    return Fraction(int(best) * 4, n * (m * m - m))


def test_iso_swap_matches_brute_force():
    rng = np.random.default_rng(21)
    for _ in range(25):
        m, n = int(rng.integers(2, 6)), int(rng.integers(1, 7))
        e = random_election(rng, m, n, truncate=False)
        f = random_election(rng, m, n, truncate=False)
        assert iso_swap_distance(e, f).exact == _brute_force_iso_swap(e, f)


def test_positionwise_hat_is_positionwise_on_random_pairs():
    rng = np.random.default_rng(22)
    for _ in range(100):
        m = int(rng.integers(2, 7))
        e = random_election(rng, m, int(rng.integers(1, 10)))
        f = random_election(rng, m, int(rng.integers(1, 10)))
        assert positionwise_hat(e, f).value \
            == pytest.approx(positionwise_distance(e, f).value, abs=1e-12)


def _mixed_triples(seed, count):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        yield [random_election(rng, int(rng.integers(2, 7)),
                               int(rng.integers(2, 9)),
                               truncate=bool(rng.integers(0, 2)))
               for _ in range(3)]


def _check_pseudodistance(distance, triple):
    a, b, c = triple
    ab, bc, ac = distance(a, b), distance(b, c), distance(a, c)
    assert distance(a, a) == pytest.approx(0, abs=1e-12)
    assert distance(b, a) == pytest.approx(ab, abs=1e-12)
    assert ac <= ab + bc + 1e-9


def test_positionwise_hat_pseudodistance_on_mixed_sizes():
    for triple in _mixed_triples(23, 500):
        _check_pseudodistance(lambda e, f: positionwise_hat(e, f).value,
                              triple)


@pytest.mark.slow
def test_dap_pseudodistance_on_mixed_sizes():
    for triple in _mixed_triples(24, 500):
        _check_pseudodistance(lambda e, f: dap_distance(e, f).value, triple)


def test_positionwise_hat_of_uniformity_across_sizes():
    assert positionwise_hat(uniformity(3), uniformity(4)).value \
        == pytest.approx(0, abs=1e-12)


@pytest.mark.parametrize('e, f', [(identity(3, 5), identity(7, 9)),
                                  (antagonism(4, 8), antagonism(6, 10))])
def test_dap_consistent_across_sizes(e, f):
    assert dap_distance(e, f).value == pytest.approx(0, abs=1e-12)
