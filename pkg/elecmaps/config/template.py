#! /usr/bin/env python

"""Configuration file template.

A copy of this template can be used to create a configuration file that
defines custom settings for elecmaps.

Configuration files should:
    Be based on this template.
    Be saved either to the elecmaps/config directory, in which case they
        can be referred to by name (for example --config desk), or
        anywhere else, in which case they are referred to by path (for
        example --config runs/big.py).
    Have extension .py (a configuration file is imported by elecmaps).

This template includes all customisable module settings as commented out
lines of code. Uncommenting the line associated with any setting will
result in elecmaps assigning the default value for that setting. The
value for any setting can be customised by uncommenting the associated
line and replacing the default value with the desired value.

elecmaps will assign default values to any setting that remains commented
out.

elecmaps distinguishes between Module Settings and Experiment Keys.
    A Module Setting is an UPPERCASE name defining a default of one of
        the elecmaps modules. Module Settings apply whether elecmaps is
        used from the command line or from python (elecmaps.configure()).
    An Experiment Key is a lowercase name defining a parameter of a
        command line run, for example the seed or the metric. Experiment
        Keys must be assigned python literals. Command line options
        override them. See elecmaps.cli.ExperimentConfig for all keys.
"""

##                              **MODULE SETTINGS**

##  election

## Rows of vote-pair indicators processed per block when computing tables
## of swap distances between votes.
#DISTANCE_BLOCK_SIZE = 1024

##  transport

## Iteration cap of the network simplex solving transportation problems.
#TRANSPORT_MAX_ITER = 10_000_000

##  distances

## Largest number of candidates for which the isomorphic swap distance is
## computed.
#MAX_EXACT_M = 8

## Largest number of candidate subsets enumerated by the exact deletion
## swap extension.
#MAX_SUBSETS = 2000

## Largest number of candidates accepted by the extended positionwise
## distance.
#POS_HAT_MAX_M = 200

## Subsets sampled by the Monte Carlo deletion swap extension.
#DEL_SAMPLES = 200

## Worker processes computing distance matrices.
#MATRIX_WORKERS = 1

##  dap

## Number of empirical Kemeny scores averaged by the diversity index.
#DIVERSITY_DEPTH = 5

## Local search starts per empirical Kemeny score.
#LOCAL_SEARCH_RESTARTS = 4

## Largest number of center sets enumerated by the exact search.
#EXACT_COMBINATION_LIMIT = 1_000_000

## Elections with more votes have diversity and polarization averaged over
## SUBSAMPLE_COUNT subsamples of SUBSAMPLE_VOTES votes.
#SUBSAMPLE_ABOVE = 10_000
#SUBSAMPLE_COUNT = 20
#SUBSAMPLE_VOTES = 500

## Worker processes computing DAP reports.
#DAP_WORKERS = 1

##  cultures

## Size of the elections of the basic dataset.
#BASIC_M = 8
#BASIC_N = 96

## (candidates, voters) of the four groups of size oriented datasets.
#SIZES = [(8, 96), (8, 192), (16, 96), (16, 192)]

## (candidates, voters) of the two groups of the size mini dataset.
#MINI_SIZES = [(4, 96), (8, 96)]

## Drop probability of the random drop dataset.
#DROP_PROBABILITY = 0.5

## Urn contagion of dataset elections is drawn from a Gamma distribution.
#URN_ALPHA_SHAPE = 0.8
#URN_ALPHA_SCALE = 1.0

##  embedding

#MDS_MAX_ITER = 500
#KK_MAX_ITER = 1000

## Embedders stop when an iteration decreases their objective by less than
## this fraction.
#EMBED_TOL = 1e-7

## Seeded initialisations per embedding, the best is kept.
#EMBED_RESTARTS = 3

#EMBED_WORKERS = 1

##  preflib

## Files sampled from a dataset of a scanned directory.
#MAX_FILES_PER_DATASET = 10

#SCAN_WORKERS = 1

##  experiments

## Culture spec strings of robustness experiments.
#ROBUSTNESS_CULTURES = ['ic', 'mallows:norm_phi=0.25', 'mallows:norm_phi=0.5', 'mallows:norm_phi=0.75', 'euclidean:dim=1', 'euclidean:dim=2', 'euclidean:dim=5', 'id', 'an']

## Candidates of the reference elections of the size experiment and of the
## elections of truncation experiments.
#REFERENCE_M = 16

#ROBUSTNESS_N = 192

## Candidate counts compared against REFERENCE_M.
#SIZE_RANGE = list(range(8, 25))

## Election pairs per point of the size experiment.
#SIZE_SAMPLES = 100

## Complete elections per culture of truncation experiments.
#TRUNCATION_SAMPLES = 25

## Probabilities of random cut and random drop experiments.
#CUT_LEVELS = [0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0]

## Dataset whose largest distance normalizes robustness curves.
#REFERENCE_RECIPE = 'basic'

#CONFIDENCE = 0.95

#EXPERIMENT_WORKERS = 1

##  render

## Width and height of maps, inches.
#MAP_SIZE = 8.0

## Area of map markers, points squared.
#POINT_SIZE = 30.0

#PALETTE = ['#1f77b4', '#ff7f0e', '#2ca02c', '#d62728', '#9467bd', '#8c564b', '#e377c2', '#7f7f7f', '#bcbd22', '#17becf', '#393b79', '#637939', '#8c6d31', '#843c39', '#7b4173', '#3182bd', '#e6550d', '#31a354', '#756bb1']

##                              **EXPERIMENT KEYS**

#seed = 0
#metric = 'dap'
#emk = 'auto'
#algorithm = 'mds'
#normalize = False
#workers = 1
