"""Tests for elecmaps.dap."""

import math
import os
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

from conftest import antagonism, identity, random_election, uniformity
from elecmaps import dap
from elecmaps.cultures import CultureSpec, sample_election
from elecmaps.dap import (DapReportRow, DapVector, EmkStrategy,
                          agreement_index, closest_reference, dap_distance,
                          dap_report_rows, dap_vector, diversity_index,
                          emk_score, emk_scores, indicator_features,
                          polarization_index, sample_votes, write_dap_report)
from elecmaps.election import Election, Vote
from elecmaps.errors import (ArgumentError, CapabilityError,
                             DegenerateInputError, EmptyInputError)
from elecmaps.preflib import read_preflib


def test_emk_scores_of_uniformity():
    results = emk_scores(uniformity(3), 5, EmkStrategy('exact'))
    assert [int(r.score) for r in results] == [9, 4, 3, 2, 1]
    assert all(r.exact for r in results)
    assert [r.i for r in results] == [1, 2, 3, 4, 5]


def test_emk_scores_beyond_vote_count_are_zero():
    results = emk_scores(antagonism(3, 2), 3)
    assert [r.half_swaps for r in results] == [6, 0, 0]


def test_emk_score_centers_are_vote_indices():
    e = Election.from_orders([(0, 1, 2), (0, 1, 2), (2, 1, 0)], 3)
    result = emk_score(e, 1)
    assert result.centers == (0,)
    assert result.score == 3
    with pytest.raises(ArgumentError):
        emk_score(e, 4)
    with pytest.raises(ArgumentError):
        emk_score(e, 0)


def test_local_search_matches_exact():
    e = sample_election(CultureSpec('mallows', 5, 30, seed=4, norm_phi=0.6))
    exact = emk_scores(e, 4, EmkStrategy('exact'))
    local = emk_scores(e, 4, EmkStrategy('local_search', restarts=6, seed=1))
    for a, b in zip(exact, local):
        assert b.half_swaps >= a.half_swaps
    assert local[0].half_swaps == exact[0].half_swaps
    assert not local[0].exact


def test_local_search_agrees_with_exact_on_random_elections():
    exact_strategy = EmkStrategy('exact')
    local_strategy = EmkStrategy('local_search', seed=1)
    matches = 0
    for seed in range(200):
        e = sample_election(CultureSpec('ic', 4, 8, seed=seed))
        exact = [r.half_swaps for r in emk_scores(e, 3, exact_strategy)]
        local = [r.half_swaps for r in emk_scores(e, 3, local_strategy)]
        assert all(b >= a for a, b in zip(exact, local))
        matches += local == exact
    assert matches >= 190


def test_indices_within_unit_interval():
    rng = np.random.default_rng(31)
    for _ in range(1000):
        e = random_election(rng, int(rng.integers(2, 7)),
                            int(rng.integers(2, 11)))
        for value in dap_vector(e).as_tuple():
            assert -1e-12 <= value <= 1 + 1e-12


def test_normalised_emk_of_uniformity_grows_with_m():
    for i in (1, 2):
        ratios = []
        for m in (3, 4):
            e = uniformity(m)
            score = emk_score(e, i, EmkStrategy('exact')).score
            ratios.append(score / (Fraction(e.n, 2) * math.comb(m, 2)))
        assert ratios[0] <= ratios[1]


@pytest.mark.slow
def test_dap_distance_of_uniformity_shrinks_with_m():
    near = dap_distance(uniformity(3), uniformity(4)).value
    far = dap_distance(uniformity(4), uniformity(5)).value
    assert far < near


def test_emk_scores_non_increasing():
    e = sample_election(CultureSpec('urn', 6, 40, seed=2, alpha=0.3))
    scores = [r.half_swaps for r in emk_scores(e, 5)]
    assert scores == sorted(scores, reverse=True)


def test_exact_strategy_limit():
    strategy = EmkStrategy('exact', exact_limit=3)
    with pytest.raises(CapabilityError):
        emk_score(uniformity(3), 2, strategy)
    auto = EmkStrategy('auto', exact_limit=3)
    assert not emk_score(uniformity(3), 2, auto).exact
    with pytest.raises(ArgumentError):
        EmkStrategy('greedy')


def test_indices_of_uniformity():
    e = uniformity(3)
    strategy = EmkStrategy('exact')
    assert diversity_index(e, strategy) == pytest.approx(19 / 45)
    assert polarization_index(e, strategy) == pytest.approx(5 / 9)
    assert agreement_index(e) == pytest.approx(0)


def test_dap_of_identity_and_antagonism():
    assert dap_vector(identity(4, 10)).as_tuple() == (0, 1, 0)
    an = dap_vector(antagonism(4, 10))
    assert an.as_tuple() == pytest.approx((1 / 5, 0, 1))
    assert dap_distance(identity(4, 10), antagonism(4, 10)).value \
        == pytest.approx(math.sqrt(1 / 25 + 2))


def test_agreement_with_truncated_votes():
    # the truncated pair is tied in every vote
    e = Election(3, (Vote((0,), 3), Vote((0,), 3)))
    assert agreement_index(e) == pytest.approx(1)
    e = Election(3, (Vote((0,), 3), Vote((1,), 3)))
    # (0, 1) split, (0, 2) and (1, 2) each half strict half tied
    assert agreement_index(e) == pytest.approx((0 + 0.5 + 0.5) / 3)


def test_degenerate_inputs():
    with pytest.raises(DegenerateInputError):
        agreement_index(identity(1, 4))
    with pytest.raises(DegenerateInputError):
        polarization_index(identity(3, 1))
    with pytest.raises(EmptyInputError):
        agreement_index(Election(3, ()))


def test_indicator_features():
    assert indicator_features(identity(3, 6)) == (0, 1, 1)
    assert indicator_features(antagonism(3, 6)) == (1, 0, 1)
    assert indicator_features(uniformity(3, 2)) == (1, 1, 0)
    lopsided = Election.from_orders([(0, 1, 2)] * 3 + [(2, 1, 0)], 3)
    assert indicator_features(lopsided) == (1, 1, 1)
    with pytest.raises(CapabilityError):
        indicator_features(Election(3, (Vote((0,), 3),)))


def test_sample_votes():
    e = sample_election(CultureSpec('ic', 4, 50, seed=1))
    part = sample_votes(e, 10, seed=3)
    assert part.n == 10
    assert part == sample_votes(e, 10, seed=3)
    assert set(part.votes) <= set(e.votes)
    assert sample_votes(e, 80, seed=3).n == 50


def test_dap_subsampling(monkeypatch):
    monkeypatch.setattr(dap, 'SUBSAMPLE_ABOVE', 20)
    monkeypatch.setattr(dap, 'SUBSAMPLE_COUNT', 3)
    monkeypatch.setattr(dap, 'SUBSAMPLE_VOTES', 10)
    vector = dap_vector(identity(3, 30))
    assert vector.subsampled
    assert vector.as_tuple() == (0, 1, 0)
    assert not dap_vector(identity(3, 20)).subsampled


def test_closest_reference():
    references = {'ID': DapVector(0, 1, 0), 'AN': DapVector(0.2, 0, 1)}
    label, distance = closest_reference(DapVector(0.1, 0.9, 0.1), references)
    assert label == 'ID'
    assert distance == pytest.approx(math.sqrt(0.03))
    with pytest.raises(ArgumentError):
        closest_reference(DapVector(0, 0, 0), {})


def test_dap_report():
    es = [identity(3, 4, 'id'), identity(3, 1, 'single'),
          antagonism(3, 4, 'an')]
    references = {'ID': DapVector(0, 1, 0)}
    rows = dap_report_rows(es, references=references)
    # a single vote has no polarization
    assert [row.label for row in rows] == ['id', 'an']
    assert rows[0] == DapReportRow('id', 3, 4, 1, DapVector(0, 1, 0), 'ID',
                                   0.0)
    text = write_dap_report(rows)
    lines = text.splitlines()
    assert lines[0] == ('label,m,n,unique_votes,diversity,agreement,'
                        'polarization,closest,closest_distance')
    assert lines[1] == 'id,3,4,1,0.000000,1.000000,0.000000,ID,0.000000'


def test_dap_report_without_references():
    text = write_dap_report(dap_report_rows([antagonism(3, 4, 'an')]))
    assert text == ('label,m,n,unique_votes,diversity,agreement,'
                    'polarization\nan,3,4,2,0.200000,0.000000,1.000000\n')


@pytest.mark.skipif('ELECMAPS_PREFLIB_DIR' not in os.environ,
                    reason="needs real Preflib files")
def test_tshirt_dap():
    paths = sorted(Path(os.environ['ELECMAPS_PREFLIB_DIR']).glob(
        '00012-*.soc'))
    if not paths:
        pytest.skip("T-Shirt file not present")
    _, e = read_preflib(paths[0])
    vector = dap_vector(e, EmkStrategy(seed=0))
    assert vector.as_tuple() == pytest.approx((0.46, 0.43, 0.09), abs=0.02)
