#! /usr/bin/env python

"""Robustness of distances to election size and truncation.

Global ATTRIBUTES
The following module attributes are assigned default values that can be
overriden by defining an attribute of the same name in a configuration
file (see elecmaps.config.template.py):
    'ROBUSTNESS_CULTURES', 'REFERENCE_M', 'ROBUSTNESS_N', 'SIZE_RANGE',
    'SIZE_SAMPLES', 'TRUNCATION_SAMPLES', 'CUT_LEVELS', 'REFERENCE_RECIPE',
    'CONFIDENCE', 'EXPERIMENT_WORKERS'

CLASSES
CurvePoint  Mean distance with confidence interval at one parameter.

FUNCTIONS
mean_confidence_interval()  Mean and Student t confidence interval.
reference_diameter()  Largest distance within a reference dataset.
size_robustness()  Distances between elections of different sizes from
    the same culture.
truncation_robustness()  Distances between elections and their
    truncations.
write_curves()  Curve points as CSV.
read_curves()  Curve points from CSV.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy import stats

import elecmaps
from .cultures import (CultureSpec, TruncationSpec, build_dataset,
                       sample_election, truncate)
from .distances import MetricSpec, pairwise_matrix
from .errors import ArgumentError, InputError
from .lib import seeding
from .lib.parallel import map_tasks
from .lib.textio import (Source, Target, csv_rows, csv_text, read_text,
                         write_text)

log = logging.getLogger(__name__)

ROBUSTNESS_CULTURES = ['ic', 'mallows:norm_phi=0.25', 'mallows:norm_phi=0.5',
                       'mallows:norm_phi=0.75', 'euclidean:dim=1',
                       'euclidean:dim=2', 'euclidean:dim=5', 'id', 'an']
REFERENCE_M = 16
ROBUSTNESS_N = 192
SIZE_RANGE = list(range(8, 25))
SIZE_SAMPLES = 100
TRUNCATION_SAMPLES = 25
# Parameter p of random cut and random drop curves.
CUT_LEVELS = [0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0]
REFERENCE_RECIPE = 'basic'
CONFIDENCE = 0.95
EXPERIMENT_WORKERS = 1

settings = ['ROBUSTNESS_CULTURES', 'REFERENCE_M', 'ROBUSTNESS_N',
            'SIZE_RANGE', 'SIZE_SAMPLES', 'TRUNCATION_SAMPLES', 'CUT_LEVELS',
            'REFERENCE_RECIPE', 'CONFIDENCE', 'EXPERIMENT_WORKERS']
elecmaps._config_import(vars(), settings)

CSV_HEADER = ['experiment', 'culture', 'parameter', 'mean', 'ci_low',
              'ci_high', 'samples']


@dataclass(frozen=True)
class CurvePoint:
    """Mean distance, as a fraction of the diameter, at one parameter.

    ++experiment++  'size' or the truncation method.
    ++culture++  Culture spec string.
    ++parameter++  Number of candidates (size), k (top_k) or p.
    """

    experiment: str
    culture: str
    parameter: float
    mean: float
    ci_low: float
    ci_high: float
    samples: int


def mean_confidence_interval(values: Sequence[float],
                             confidence: Optional[float] = None
                             ) -> Tuple[float, float, float]:
    """Return (mean, low, high) of a Student t confidence interval.

    +confidence+  Default CONFIDENCE.

    The interval collapses onto the mean for fewer than two values or
    identical values.
    """
    confidence = CONFIDENCE if confidence is None else confidence
    values = np.asarray(values, dtype=float)
    if not len(values):
        raise InputError("no values to average")
    mean = float(values.mean())
    if len(values) < 2 or np.all(values == values[0]):
        return mean, mean, mean
    half = float(stats.sem(values)
                 * stats.t.ppf((1 + confidence) / 2, len(values) - 1))
    return mean, mean - half, mean + half


def reference_diameter(metric: Union[MetricSpec, str], seed: int,
                       recipe: Optional[str] = None,
                       workers: Optional[int] = None) -> float:
    """Return largest distance between elections of a dataset.

    +recipe+  Dataset recipe. Default REFERENCE_RECIPE.
    """
    recipe = REFERENCE_RECIPE if recipe is None else recipe
    es = [entry.election for entry in build_dataset(recipe, seed)]
    d = pairwise_matrix(es, metric, workers)
    diameter = float(d.entries.max())
    log.info("%s diameter of the %s dataset: %.6g", d.metric_id, recipe,
             diameter)
    return diameter


def _point(experiment: str, culture: str, parameter: float,
           values: Sequence[float]) -> CurvePoint:
    mean, low, high = mean_confidence_interval(values)
    return CurvePoint(experiment, culture, parameter, mean, low, high,
                      len(values))


def _size_sample(task) -> float:
    metric, culture, reference_m, m, n, seeds, diameter = task
    reference = sample_election(CultureSpec.from_string(
        culture, reference_m, n, seeds[0]))
    other = sample_election(CultureSpec.from_string(culture, m, n, seeds[1]))
    return float(metric.distance(reference, other).value) / diameter


def size_robustness(metric: Union[MetricSpec, str], seed: int,
                    cultures: Optional[Sequence[str]] = None,
                    ms: Optional[Sequence[int]] = None,
                    n: Optional[int] = None,
                    reference_m: Optional[int] = None,
                    samples: Optional[int] = None,
                    diameter: float = 1.0,
                    workers: Optional[int] = None) -> List[CurvePoint]:
    """Return mean distance between elections with +reference_m+ and m
    candidates from the same culture, for each culture and m.

    Each sample draws a fresh pair of elections.

    +cultures+  Culture spec strings. Default ROBUSTNESS_CULTURES.
    +ms+  Candidate counts. Default SIZE_RANGE.
    +n+  Voters. Default ROBUSTNESS_N.
    +reference_m+  Default REFERENCE_M.
    +samples+  Pairs per point. Default SIZE_SAMPLES.
    +diameter+  Distances are divided by diameter.
    """
    metric = MetricSpec(metric) if isinstance(metric, str) else metric
    cultures = ROBUSTNESS_CULTURES if cultures is None else cultures
    ms = SIZE_RANGE if ms is None else ms
    n = ROBUSTNESS_N if n is None else n
    reference_m = REFERENCE_M if reference_m is None else reference_m
    samples = SIZE_SAMPLES if samples is None else samples
    workers = EXPERIMENT_WORKERS if workers is None else workers
    if not diameter > 0:
        raise ArgumentError("diameter must be positive")
    tasks, keys = [], []
    for ci, culture in enumerate(cultures):
        for m in ms:
            for s in range(samples):
                seeds = (seeding.derive_seed(seed, seeding.DATASET_KEY, ci,
                                             m, s, 0),
                         seeding.derive_seed(seed, seeding.DATASET_KEY, ci,
                                             m, s, 1))
                tasks.append((metric, culture, reference_m, m, n, seeds,
                              diameter))
                keys.append((culture, m))
    values = map_tasks(_size_sample, tasks, workers)
    points = []
    for culture in cultures:
        for m in ms:
            chosen = [v for key, v in zip(keys, values)
                      if key == (culture, m)]
            points.append(_point('size', culture, m, chosen))
    log.info("size robustness under %s: %d cultures, %d sizes, %d "
             "samples each", metric.name, len(cultures), len(ms), samples)
    return points


def _truncation_sample(task) -> List[float]:
    metric, culture, m, n, seed, truncations, diameter = task
    complete = sample_election(CultureSpec.from_string(culture, m, n, seed))
    return [float(metric.distance(complete, truncate(complete, spec)).value)
            / diameter for spec in truncations]


def truncation_robustness(metric: Union[MetricSpec, str], seed: int,
                          method: str = 'top_k',
                          cultures: Optional[Sequence[str]] = None,
                          levels: Optional[Sequence[float]] = None,
                          m: Optional[int] = None, n: Optional[int] = None,
                          samples: Optional[int] = None,
                          diameter: float = 1.0,
                          workers: Optional[int] = None) -> List[CurvePoint]:
    """Return mean distance between complete elections and their
    truncations, for each culture and truncation level.

    +method+  'top_k', 'random_cut' or 'random_drop'.
    +levels+  k values for 'top_k', default 1, ..., m. p values
        otherwise, default CUT_LEVELS.
    +m+  Candidates. Default REFERENCE_M.
    +n+  Voters. Default ROBUSTNESS_N.
    +samples+  Complete elections per culture. Default
        TRUNCATION_SAMPLES. Every level truncates the same elections.
    +diameter+  Distances are divided by diameter.
    """
    metric = MetricSpec(metric) if isinstance(metric, str) else metric
    cultures = ROBUSTNESS_CULTURES if cultures is None else cultures
    m = REFERENCE_M if m is None else m
    n = ROBUSTNESS_N if n is None else n
    samples = TRUNCATION_SAMPLES if samples is None else samples
    workers = EXPERIMENT_WORKERS if workers is None else workers
    if levels is None:
        levels = list(range(1, m + 1)) if method == 'top_k' else CUT_LEVELS
    if not diameter > 0:
        raise ArgumentError("diameter must be positive")
    tasks = []
    for ci, culture in enumerate(cultures):
        for s in range(samples):
            truncations = []
            for li, level in enumerate(levels):
                truncation_seed = seeding.derive_seed(
                    seed, seeding.TRUNCATION_KEY, ci, s, li)
                if method == 'top_k':
                    spec = TruncationSpec('top_k', k=int(level),
                                          seed=truncation_seed)
                else:
                    spec = TruncationSpec(method, p=float(level),
                                          seed=truncation_seed)
                spec.validate(m)
                truncations.append(spec)
            culture_seed = seeding.derive_seed(seed, seeding.DATASET_KEY, ci,
                                               s)
            tasks.append((metric, culture, m, n, culture_seed, truncations,
                          diameter))
    results = map_tasks(_truncation_sample, tasks, workers)
    points = []
    for ci, culture in enumerate(cultures):
        rows = results[ci * samples:(ci + 1) * samples]
        for li, level in enumerate(levels):
            points.append(_point(method, culture, level,
                                 [row[li] for row in rows]))
    log.info("%s robustness under %s: %d cultures, %d levels, %d samples "
             "each", method, metric.name, len(cultures), len(levels),
             samples)
    return points


def write_curves(points: Sequence[CurvePoint], target: Target = None) -> str:
    """Write curve points as CSV and return the text.

    Columns experiment, culture, parameter, mean, ci_low, ci_high,
    samples.
    """
    rows = [CSV_HEADER]
    rows += [[p.experiment, p.culture, f'{p.parameter:g}', f'{p.mean:.9g}',
              f'{p.ci_low:.9g}', f'{p.ci_high:.9g}', p.samples]
             for p in points]
    text = csv_text(rows)
    write_text(text, target)
    return text


def read_curves(source: Source) -> List[CurvePoint]:
    rows = csv_rows(read_text(source))
    if not rows or rows[0] != CSV_HEADER:
        raise InputError(f"curves CSV must start with the header "
                         f"{','.join(CSV_HEADER)}")
    try:
        return [CurvePoint(row[0], row[1], float(row[2]), float(row[3]),
                           float(row[4]), float(row[5]), int(row[6]))
                for row in rows[1:]]
    except (ValueError, IndexError) as err:
        raise InputError(f"malformed curves CSV row: {err}") from None
