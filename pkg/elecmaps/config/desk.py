#! /usr/bin/env python

"""Configuration file for desk-scale experiment runs.

Robustness curves with fewer samples and sizes, finishing in minutes on
a laptop.
"""

##                              **MODULE SETTINGS**

SIZE_RANGE = list(range(8, 17))

SIZE_SAMPLES = 25

TRUNCATION_SAMPLES = 10

# Normalize by the diameter of the smaller dataset.
REFERENCE_RECIPE = 'size_mini'

LOCAL_SEARCH_RESTARTS = 2

EMBED_RESTARTS = 2

##                              **EXPERIMENT KEYS**

seed = 20231

metric = 'dap'

workers = 4
