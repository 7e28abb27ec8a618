#! /usr/bin/env python

"""Configuration file for full-scale experiment runs.

Robustness curves over 8 to 24 candidates with 100 samples per point
(size) and 25 elections per culture (truncation), normalized by the
diameter of the basic dataset.
"""

##                              **MODULE SETTINGS**

#SIZE_RANGE = list(range(8, 25))

#SIZE_SAMPLES = 100

#TRUNCATION_SAMPLES = 25

#REFERENCE_RECIPE = 'basic'

## Exhaustive emk where at most this many center sets.
EXACT_COMBINATION_LIMIT = 2_000_000

LOCAL_SEARCH_RESTARTS = 8

EMBED_RESTARTS = 5

MATRIX_WORKERS = 8
DAP_WORKERS = 8
EXPERIMENT_WORKERS = 8

##                              **EXPERIMENT KEYS**

seed = 42

metric = 'pos_hat'

algorithm = 'kk'

workers = 8
