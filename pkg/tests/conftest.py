"""Shared fixtures and election builders."""

from itertools import permutations
from pathlib import Path

import pytest

import elecmaps
from elecmaps.election import Election, Vote

FIXTURES = Path(__file__).parent / 'fixtures'


def identity(m: int, n: int, label: str = 'id') -> Election:
    return Election.from_orders([range(m)] * n, m, label)


def antagonism(m: int, n: int, label: str = 'an') -> Election:
    half = n // 2
    return Election.from_orders([range(m)] * half
                                + [range(m - 1, -1, -1)] * half, m, label)


def uniformity(m: int, copies: int = 1, label: str = 'un') -> Election:
    return Election.from_orders(list(permutations(range(m))) * copies, m,
                                label)


def random_vote(rng, m: int, truncate: bool = True) -> Vote:
    """Vote of a uniform order cut at a uniform length if +truncate+."""
    order = rng.permutation(m)
    length = int(rng.integers(0, m + 1)) if truncate else m
    return Vote(tuple(int(c) for c in order[:length]), m)


def random_election(rng, m: int, n: int, truncate: bool = True,
                    label: str = 'random') -> Election:
    return Election(m, tuple(random_vote(rng, m, truncate)
                             for _ in range(n)), label)


@pytest.fixture(autouse=True)
def default_settings():
    """Every test starts and ends with default module settings."""
    elecmaps.configure(None)
    yield
    elecmaps.configure(None)


@pytest.fixture
def preflib_dir() -> Path:
    return FIXTURES / 'preflib'
