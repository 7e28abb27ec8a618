"""Tests for elecmaps.lib helpers."""

import io
from itertools import combinations
from math import comb

import numpy as np
import pytest

from elecmaps.lib import seeding
from elecmaps.lib.combinatorics import pairs, unrank_combination
from elecmaps.lib.parallel import map_tasks
from elecmaps.lib.textio import csv_rows, csv_text, read_text, write_text


def test_stream_reproducible():
    a = seeding.stream(7, seeding.VOTER_KEY, 3).random(5)
    b = seeding.stream(7, seeding.VOTER_KEY, 3).random(5)
    assert np.array_equal(a, b)


def test_streams_separated_by_key_and_seed():
    base = seeding.stream(7, seeding.VOTER_KEY, 3).random(5)
    assert not np.array_equal(
        base, seeding.stream(7, seeding.VOTER_KEY, 4).random(5))
    assert not np.array_equal(
        base, seeding.stream(8, seeding.VOTER_KEY, 3).random(5))
    assert not np.array_equal(
        base, seeding.stream(7, seeding.TRUNCATION_KEY, 3).random(5))


def test_substreams_independent_of_count():
    few = [rng.random() for rng in seeding.substreams(1, 3, 0)]
    many = [rng.random() for rng in seeding.substreams(1, 10, 0)]
    assert few == many[:3]


def test_derive_seed():
    seed = seeding.derive_seed(42, 1, 2)
    assert seed == seeding.derive_seed(42, 1, 2)
    assert seed != seeding.derive_seed(42, 2, 1)
    assert 0 <= seed < 2 ** 63


def test_pairs():
    assert [pairs(m) for m in range(5)] == [0, 0, 1, 3, 6]


@pytest.mark.parametrize('n, k', [(5, 2), (6, 3), (4, 4), (7, 1)])
def test_unrank_combination_matches_itertools(n, k):
    expected = list(combinations(range(n), k))
    assert [unrank_combination(r, n, k) for r in range(comb(n, k))] \
        == expected


def _square(x):
    return x * x


def test_map_tasks_in_process():
    assert map_tasks(_square, [1, 2, 3], 1) == [1, 4, 9]
    assert map_tasks(_square, [], 4) == []


@pytest.mark.slow
def test_map_tasks_processes_keep_order():
    tasks = list(range(20))
    assert map_tasks(_square, tasks, 2) == [t * t for t in tasks]


def test_csv_text_and_rows(tmp_path):
    text = csv_text([['label', 'x'], ['a,b', 1.5]])
    assert text == 'label,x\n"a,b",1.5\n'
    assert csv_rows(text + '\n') == [['label', 'x'], ['a,b', '1.5']]
    path = tmp_path / 'out.csv'
    write_text(text, path)
    assert read_text(path) == text
    assert read_text(str(path)) == text
    stream = io.StringIO()
    write_text(text, stream)
    assert stream.getvalue() == text
    write_text(text, None)
