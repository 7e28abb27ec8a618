#! /usr/bin/env python

"""Seed stream derivation.

All randomness in elecmaps flows from explicit integer seeds. Independent
streams are derived from a seed and a key so that, for example, the
stream of voter 17 does not depend on how many voters precede it.

FUNCTIONS
stream()  Random generator for a seed and key.
substreams()  Independent generators for consecutive indices.
derive_seed()  Integer seed for a seed and key.
"""

from typing import List

import numpy as np

# Keys that separate the purposes streams are drawn for.
ELECTION_KEY = 0
VOTER_KEY = 1
TRUNCATION_KEY = 2
DATASET_KEY = 3
RESTART_KEY = 4
SAMPLE_KEY = 5


def _sequence(seed: int, key: tuple) -> np.random.SeedSequence:
    return np.random.SeedSequence(entropy=int(seed) & (2**64 - 1),
                                  spawn_key=tuple(int(k) for k in key))


def stream(seed: int, *key: int) -> np.random.Generator:
    """Return generator for +seed+ and +key+.

    Identical (+seed+, +key+) always return identically seeded generators.
    """
    return np.random.default_rng(_sequence(seed, key))


def substreams(seed: int, n: int, *key: int) -> List[np.random.Generator]:
    """Return +n+ generators, the i-th keyed by +key+ + (i,)."""
    return [stream(seed, *key, i) for i in range(n)]


def derive_seed(seed: int, *key: int) -> int:
    """Return a 63-bit integer seed derived from +seed+ and +key+."""
    state = _sequence(seed, key).generate_state(2, dtype=np.uint32)
    return int(state[0]) << 31 | int(state[1]) >> 1
