#! /usr/bin/env python

"""Combinatorial helpers.

FUNCTIONS
pairs()  Number of unordered pairs.
unrank_combination()  Combination with a given lexicographic rank.
"""

from math import comb
from typing import Tuple


def pairs(m: int) -> int:
    """Number of unordered pairs of +m+ items."""
    return m * (m - 1) // 2


def unrank_combination(rank: int, n: int, k: int) -> Tuple[int, ...]:
    """Return the +rank+-th +k+-subset of range(+n+).

    Subsets are ordered as itertools.combinations(range(n), k) yields
    them, ranks from 0.
    """
    assert 0 <= rank < comb(n, k)
    chosen = []
    start = 0
    for slot in range(k):
        for item in range(start, n):
            count = comb(n - item - 1, k - slot - 1)
            if rank < count:
                chosen.append(item)
                start = item + 1
                break
            rank -= count
    return tuple(chosen)
