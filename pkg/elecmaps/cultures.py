#! /usr/bin/env python

"""Statistical cultures, special elections, truncation and datasets.

Every sampled election is reproducible from its specification's seed.
Each voter draws from an independent stream derived from (seed, voter
index) so adding voters does not change earlier votes. Candidate i sits
at position i of the axis of single-peaked cultures and of the circle of
SPOC. The central vote of Mallows is the identity.

Global ATTRIBUTES
The following module attributes are assigned default values that can be
overriden by defining an attribute of the same name in a configuration
file (see elecmaps.config.template.py):
    'BASIC_M', 'BASIC_N', 'SIZES', 'MINI_SIZES', 'DROP_PROBABILITY',
    'URN_ALPHA_SHAPE', 'URN_ALPHA_SCALE'

----KINDS----  Culture kinds.
----RECIPES----  Dataset recipes.
----BASIC_GROUPS----  Culture groups of the basic dataset.

CLASSES
CultureSpec  Culture with parameters, size and seed.
TruncationSpec  Truncation method with parameter and seed.
DatasetEntry  Election of a dataset with its provenance.

FUNCTIONS
sample_election()  Election sampled from a culture.
euclidean_points()  Candidate and voter points of a Euclidean culture.
expected_mallows_swaps()  Mean swap distance of a Mallows vote to its
    center.
norm_phi_to_phi()  Mallows dispersion for a normalized dispersion.
truncate()  Top-truncated copy of a complete election.
half_ranked_cut_probability()  Random cut probability ranking half the
    candidates in expectation.
build_dataset()  Elections of a dataset recipe.
balanced_tree(), caterpillar_tree()  Group-separable trees.
is_single_peaked(), is_spoc(), is_gs_compatible()  Structural recognition
    of votes.
"""

import logging
from dataclasses import dataclass, replace
from itertools import permutations
from math import ceil, factorial
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.optimize import bisect

import elecmaps
from .election import Election, Vote
from .errors import ArgumentError, CapabilityError
from .lib import seeding

log = logging.getLogger(__name__)

BASIC_M = 8
BASIC_N = 96
# (m, n) of the four groups of the size oriented datasets.
SIZES = [(8, 96), (8, 192), (16, 96), (16, 192)]
# (m, n) of the two groups of the size mini dataset.
MINI_SIZES = [(4, 96), (8, 96)]
DROP_PROBABILITY = 0.5
URN_ALPHA_SHAPE = 0.8
URN_ALPHA_SCALE = 1.0

settings = ['BASIC_M', 'BASIC_N', 'SIZES', 'MINI_SIZES', 'DROP_PROBABILITY',
            'URN_ALPHA_SHAPE', 'URN_ALPHA_SCALE']
elecmaps._config_import(vars(), settings)

KINDS = ('ic', 'mallows', 'urn', 'euclidean', 'sp_conitzer', 'sp_walsh',
         'spoc', 'gs', 'id', 'an', 'un_exact', 'un_approx', 'st')

RECIPES = ('basic', 'size_oriented', 'truncation_oriented', 'comprehensive',
           'random_drop', 'size_mini')

TRUNCATION_METHODS = ('top_k', 'random_cut', 'random_drop')

# (group name, kind, number of elections, fixed parameters)
BASIC_GROUPS = [
    ('IC', 'ic', 16, {}),
    ('Mallows', 'mallows', 48, {}),
    ('Urn', 'urn', 48, {}),
    ('Interval', 'euclidean', 16, {'dim': 1, 'shape': 'cube'}),
    ('Square', 'euclidean', 16, {'dim': 2, 'shape': 'cube'}),
    ('Cube', 'euclidean', 16, {'dim': 3, 'shape': 'cube'}),
    ('5D Cube', 'euclidean', 8, {'dim': 5, 'shape': 'cube'}),
    ('10D Cube', 'euclidean', 8, {'dim': 10, 'shape': 'cube'}),
    ('Circle', 'euclidean', 16, {'dim': 2, 'shape': 'sphere'}),
    ('Sphere', 'euclidean', 16, {'dim': 3, 'shape': 'sphere'}),
    ('SP Con', 'sp_conitzer', 16, {}),
    ('SP Wal', 'sp_walsh', 16, {}),
    ('SPOC', 'spoc', 16, {}),
    ('GS bal', 'gs', 16, {'tree': 'balanced'}),
    ('GS cat', 'gs', 16, {'tree': 'caterpillar'}),
]

COMPASS_GROUPS = [('ID', 'id'), ('AN', 'an'), ('UN', 'un_approx'),
                  ('ST', 'st')]

_PARAMETERS = {'norm_phi': float, 'alpha': float, 'dim': int, 'shape': str,
               'tree': str}


@dataclass(frozen=True)
class CultureSpec:
    """Culture with its parameters, election size and seed.

    ++kind++  One of KINDS.
    ++m++  Number of candidates.
    ++n++  Number of voters.
    ++seed++  Seed.
    ++norm_phi++  Normalized dispersion of 'mallows', in [0, 1].
    ++alpha++  Contagion of 'urn', at least 0.
    ++dim++  Dimension of 'euclidean'. For the 'sphere' shape the
        dimension of the space the sphere is the surface of, so 2 is a
        circle.
    ++shape++  'cube' or 'sphere', for 'euclidean'.
    ++tree++  'balanced' or 'caterpillar', for 'gs'.

    METHODS
    --validate()--  Raise ArgumentError if spec is invalid.
    --describe()--  Culture as a spec string.
    ---from_string---  Spec from a spec string.
    """

    kind: str
    m: int
    n: int
    seed: int = 0
    norm_phi: Optional[float] = None
    alpha: Optional[float] = None
    dim: Optional[int] = None
    shape: str = 'cube'
    tree: str = 'balanced'

    def validate(self):
        """Raise ArgumentError naming the violated constraint, if any."""
        if self.kind not in KINDS:
            raise ArgumentError(f"unknown culture {self.kind!r}, expected "
                                f"one of {', '.join(KINDS)}")
        if self.m < 1 or self.n < 1:
            raise ArgumentError("cultures need m >= 1 and n >= 1")
        if self.kind == 'mallows':
            if self.norm_phi is None or not 0 <= self.norm_phi <= 1:
                raise ArgumentError("mallows needs norm_phi in [0, 1]")
        if self.kind == 'urn':
            if self.alpha is None or self.alpha < 0:
                raise ArgumentError("urn needs alpha >= 0")
        if self.kind == 'euclidean':
            if self.dim is None or self.dim < 1:
                raise ArgumentError("euclidean needs dim >= 1")
            if self.shape not in ('cube', 'sphere'):
                raise ArgumentError(f"unknown euclidean shape "
                                    f"{self.shape!r}")
            if self.shape == 'sphere' and self.dim < 2:
                raise ArgumentError("sphere needs dim >= 2")
        if self.kind == 'gs' and self.tree not in ('balanced', 'caterpillar'):
            raise ArgumentError(f"unknown group-separable tree "
                                f"{self.tree!r}")
        if self.kind == 'an' and self.n % 2:
            raise ArgumentError(f"an needs an even number of voters, "
                                f"got n={self.n}")
        if self.kind == 'un_exact' and self.n % factorial(self.m):
            raise ArgumentError(f"un_exact needs n a multiple of m! = "
                                f"{factorial(self.m)}, got n={self.n}")

    def parameters(self) -> Dict[str, Union[int, float, str]]:
        """Return the parameters relevant to the culture's kind."""
        names = {'mallows': ['norm_phi'], 'urn': ['alpha'],
                 'euclidean': ['dim', 'shape'], 'gs': ['tree']}
        return {name: getattr(self, name)
                for name in names.get(self.kind, [])}

    def describe(self) -> str:
        """Return spec string, for example 'euclidean:dim=2,shape=cube'."""
        params = self.parameters()
        if not params:
            return self.kind
        return self.kind + ':' + ','.join(f'{k}={v:.6g}' if
                                          isinstance(v, float) else
                                          f'{k}={v}'
                                          for k, v in params.items())

    @classmethod
    def from_string(cls, text: str, m: int, n: int,
                    seed: int = 0) -> 'CultureSpec':
        """Return spec from spec string +text+.

        +text+  Culture kind optionally followed by a colon and comma
            separated key=value parameters, for example
            'mallows:norm_phi=0.5'.
        """
        kind, _, rest = text.strip().partition(':')
        kwargs = _parse_parameters(rest, _PARAMETERS)
        spec = cls(kind.strip().replace('-', '_'), m, n, seed, **kwargs)
        spec.validate()
        return spec


def _parse_parameters(text: str, known: Dict[str, type]) -> dict:
    kwargs = {}
    for item in filter(None, (part.strip() for part in text.split(','))):
        key, sep, value = item.partition('=')
        key = key.strip().replace('-', '_')
        if not sep or key not in known:
            raise ArgumentError(f"invalid parameter {item!r}, expected "
                                f"key=value with key one of "
                                f"{', '.join(known)}")
        try:
            kwargs[key] = known[key](value.strip())
        except ValueError:
            raise ArgumentError(f"invalid value for {key}: "
                                f"{value!r}") from None
    return kwargs


@dataclass(frozen=True)
class TruncationSpec:
    """Truncation method with parameter and seed.

    ++method++
        'top_k'  Keep the top ++k++ candidates of every vote.
        'random_cut'  Keep the top candidate, then each next one with
            probability ++p++ until the first rejection.
        'random_drop'  Move each candidate to the truncated part
            independently with probability ++p++.
    ++seed++  Seed.
    """

    method: str
    k: Optional[int] = None
    p: Optional[float] = None
    seed: int = 0

    def validate(self, m: int):
        if self.method not in TRUNCATION_METHODS:
            raise ArgumentError(f"unknown truncation {self.method!r}, "
                                f"expected one of "
                                f"{', '.join(TRUNCATION_METHODS)}")
        if self.method == 'top_k':
            if self.k is None or not 1 <= self.k <= m:
                raise ArgumentError(f"top_k needs 1 <= k <= {m}")
        elif self.p is None or not 0 <= self.p <= 1:
            raise ArgumentError(f"{self.method} needs p in [0, 1]")

    def describe(self) -> str:
        if self.method == 'top_k':
            return f'top_k:k={self.k}'
        return f'{self.method}:p={self.p:.6g}'

    @classmethod
    def from_string(cls, text: str, seed: int = 0) -> 'TruncationSpec':
        """Return spec from a string such as 'top_k:k=4'."""
        method, _, rest = text.strip().partition(':')
        kwargs = _parse_parameters(rest, {'k': int, 'p': float})
        return cls(method.strip().replace('-', '_'), seed=seed, **kwargs)


# ---------------------------------------------------------------------------
# Samplers

def _voters(spec: CultureSpec) -> List[np.random.Generator]:
    return seeding.substreams(spec.seed, spec.n, seeding.VOTER_KEY)


def _ic(spec: CultureSpec) -> List[Sequence[int]]:
    return [rng.permutation(spec.m) for rng in _voters(spec)]


def expected_mallows_swaps(phi: float, m: int) -> float:
    """Return expected swap distance of a Mallows vote to its center.

    Equals m*phi/(1-phi) - sum over i of i*phi**i/(1-phi**i), evaluated
    as a sum of per-insertion expectations to remain stable as phi
    approaches 1.
    """
    if phi <= 0:
        return 0.0
    total = 0.0
    for j in range(1, m):
        weights = phi ** np.arange(j + 1)
        total += (np.arange(j + 1) * weights).sum() / weights.sum()
    return float(total)


def norm_phi_to_phi(norm_phi: float, m: int) -> float:
    """Return Mallows phi for normalized dispersion +norm_phi+.

    phi gives an expected swap distance to the center of
    norm_phi * m * (m - 1) / 4.
    """
    assert m >= 2 or norm_phi in (0, 1)
    if norm_phi <= 0:
        return 0.0
    if norm_phi >= 1:
        return 1.0
    target = norm_phi * m * (m - 1) / 4
    return float(bisect(lambda phi: expected_mallows_swaps(phi, m) - target,
                        0.0, 1.0, xtol=1e-12, maxiter=200))


def _mallows(spec: CultureSpec) -> List[Sequence[int]]:
    phi = norm_phi_to_phi(spec.norm_phi, spec.m) if spec.m > 1 else 0.0
    votes = []
    for rng in _voters(spec):
        vote: List[int] = []
        for j in range(spec.m):
            # position p of candidate j adds j - p inversions
            weights = np.power(phi, j - np.arange(j + 1), dtype=float)
            position = rng.choice(j + 1, p=weights / weights.sum())
            vote.insert(int(position), j)
        votes.append(vote)
    return votes


def _urn(spec: CultureSpec) -> List[Sequence[int]]:
    votes: List[Sequence[int]] = []
    for k, rng in enumerate(_voters(spec)):
        if rng.random() < 1 / (1 + k * spec.alpha):
            votes.append(rng.permutation(spec.m))
        else:
            votes.append(votes[int(rng.integers(k))])
    return votes


def _sphere(rng: np.random.Generator, size: int, dim: int) -> np.ndarray:
    points = rng.standard_normal((size, dim))
    return points / np.linalg.norm(points, axis=1, keepdims=True)


def euclidean_points(spec: CultureSpec) -> Tuple[np.ndarray, np.ndarray]:
    """Return (candidate points, voter points) of a euclidean culture."""
    candidate_rng = seeding.stream(spec.seed, seeding.ELECTION_KEY)
    if spec.shape == 'cube':
        candidates = candidate_rng.random((spec.m, spec.dim))
        voters = np.stack([rng.random(spec.dim) for rng in _voters(spec)])
    else:
        candidates = _sphere(candidate_rng, spec.m, spec.dim)
        voters = np.concatenate([_sphere(rng, 1, spec.dim)
                                 for rng in _voters(spec)])
    return candidates, voters


def _euclidean(spec: CultureSpec) -> List[Sequence[int]]:
    candidates, voters = euclidean_points(spec)
    distances = np.linalg.norm(voters[:, None, :] - candidates[None, :, :],
                               axis=2)
    return list(np.argsort(distances, axis=1, kind='stable'))


def _sp_conitzer(spec: CultureSpec) -> List[Sequence[int]]:
    votes = []
    for rng in _voters(spec):
        peak = int(rng.integers(spec.m))
        vote = [peak]
        left, right = peak - 1, peak + 1
        while left >= 0 and right < spec.m:
            if rng.random() < 0.5:
                vote.append(left)
                left -= 1
            else:
                vote.append(right)
                right += 1
        vote += list(range(left, -1, -1)) + list(range(right, spec.m))
        votes.append(vote)
    return votes


def _sp_walsh(spec: CultureSpec) -> List[Sequence[int]]:
    votes = []
    for rng in _voters(spec):
        low, high = 0, spec.m - 1
        reverse_vote = []
        # last place first: always an end of the remaining interval
        while low < high:
            if rng.random() < 0.5:
                reverse_vote.append(low)
                low += 1
            else:
                reverse_vote.append(high)
                high -= 1
        reverse_vote.append(low)
        votes.append(reverse_vote[::-1])
    return votes


def _spoc(spec: CultureSpec) -> List[Sequence[int]]:
    m = spec.m
    votes = []
    for rng in _voters(spec):
        top = int(rng.integers(m))
        vote = [top]
        left, right = (top - 1) % m, (top + 1) % m
        while len(vote) < m:
            if rng.random() < 0.5:
                vote.append(left)
                left = (left - 1) % m
            else:
                vote.append(right)
                right = (right + 1) % m
        votes.append(vote)
    return votes


Tree = Union[int, tuple]


def balanced_tree(m: int) -> Tree:
    """Return balanced binary tree over leaves 0, ..., +m+ - 1."""
    def build(low, high):
        if high - low == 1:
            return low
        middle = (low + high) // 2
        return (build(low, middle), build(middle, high))
    return build(0, m)


def caterpillar_tree(m: int) -> Tree:
    """Return caterpillar tree over leaves 0, ..., +m+ - 1.

    Each internal node has a leaf as its first child.
    """
    tree: Tree = m - 1
    for leaf in range(m - 2, -1, -1):
        tree = (leaf, tree)
    return tree


def _frontier(tree: Tree, rng: np.random.Generator) -> List[int]:
    if isinstance(tree, int):
        return [tree]
    children = [_frontier(child, rng) for child in tree]
    if rng.random() < 0.5:
        children.reverse()
    return [leaf for child in children for leaf in child]


def _tree(spec: CultureSpec) -> Tree:
    if spec.tree == 'balanced':
        return balanced_tree(spec.m)
    return caterpillar_tree(spec.m)


def _gs(spec: CultureSpec) -> List[Sequence[int]]:
    tree = _tree(spec)
    return [_frontier(tree, rng) for rng in _voters(spec)]


def _id(spec: CultureSpec) -> List[Sequence[int]]:
    return [range(spec.m)] * spec.n


def _an(spec: CultureSpec) -> List[Sequence[int]]:
    half = spec.n // 2
    return [range(spec.m)] * half + [range(spec.m - 1, -1, -1)] * half


def _un_exact(spec: CultureSpec) -> List[Sequence[int]]:
    orders = list(permutations(range(spec.m)))
    return [orders[i % len(orders)] for i in range(spec.n)]


def _st(spec: CultureSpec) -> List[Sequence[int]]:
    top = ceil(spec.m / 2)
    return [list(rng.permutation(top)) + list(top + rng.permutation(
             spec.m - top)) for rng in _voters(spec)]


_SAMPLERS = {'ic': _ic, 'mallows': _mallows, 'urn': _urn,
             'euclidean': _euclidean, 'sp_conitzer': _sp_conitzer,
             'sp_walsh': _sp_walsh, 'spoc': _spoc, 'gs': _gs, 'id': _id,
             'an': _an, 'un_exact': _un_exact, 'un_approx': _ic, 'st': _st}


def sample_election(spec: CultureSpec,
                    label: Optional[str] = None) -> Election:
    """Return election sampled from culture +spec+.

    +label+  Election label. Default the spec string.

    Raises ArgumentError if +spec+ is invalid.
    """
    spec.validate()
    orders = _SAMPLERS[spec.kind](spec)
    votes = tuple(Vote(tuple(order), spec.m) for order in orders)
    return Election(spec.m, votes,
                    spec.describe() if label is None else label)


# ---------------------------------------------------------------------------
# Truncation

def truncate(e: Election, spec: TruncationSpec) -> Election:
    """Return top-truncated copy of complete election +e+.

    Voter order and label preserved.

    Raises CapabilityError if +e+ has a truncated vote.
    """
    if not e.is_complete:
        raise CapabilityError(f"election {e.label!r} is already truncated")
    spec.validate(e.m)
    streams = seeding.substreams(spec.seed, e.n, seeding.TRUNCATION_KEY)
    votes = []
    for vote, rng in zip(e.votes, streams):
        order = vote.top
        if spec.method == 'top_k':
            top = order[:spec.k]
        elif spec.method == 'random_cut':
            length = 1
            while length < e.m and rng.random() < spec.p:
                length += 1
            top = order[:length]
        else:
            dropped = rng.random(e.m) < spec.p
            top = tuple(c for c, drop in zip(order, dropped) if not drop)
        votes.append(Vote(top, e.m))
    return replace(e, votes=tuple(votes))


def half_ranked_cut_probability(m: int,
                                length: Optional[float] = None) -> float:
    """Return random cut p giving an expected top length +length+.

    The expected top length under random cut is
    (1 - p**m) / (1 - p).

    +length+  Target length in [1, m]. Default m / 2.
    """
    length = m / 2 if length is None else length
    if length <= 1:
        return 0.0
    if length >= m:
        return 1.0
    return float(bisect(lambda p: np.sum(p ** np.arange(m)) - length,
                        0.0, 1.0, xtol=1e-12))


# ---------------------------------------------------------------------------
# Datasets

@dataclass(frozen=True)
class DatasetEntry:
    """Election of a dataset.

    ++election++  Election.
    ++group++  Culture group, for example 'Mallows' or 'ID'.
    ++culture++  Spec the election was sampled from.
    ++truncation++  Truncation applied, if any.
    """

    election: Election
    group: str
    culture: CultureSpec
    truncation: Optional[TruncationSpec] = None


def _slug(group: str) -> str:
    return group.lower().replace(' ', '_')


def _group_spec(kind: str, params: dict, m: int, n: int, seed: int,
                group_index: int, j: int) -> CultureSpec:
    rng = seeding.stream(seed, seeding.DATASET_KEY, group_index, j)
    params = dict(params)
    if kind == 'mallows':
        params['norm_phi'] = float(rng.uniform())
    elif kind == 'urn':
        params['alpha'] = float(rng.gamma(URN_ALPHA_SHAPE, URN_ALPHA_SCALE))
    culture_seed = seeding.derive_seed(seed, seeding.DATASET_KEY,
                                       group_index, j, 0)
    return CultureSpec(kind, m, n, culture_seed, **params)


def _sized(count: int, sizes: Sequence[Tuple[int, int]],
           scale: float = 1.0) -> List[Tuple[int, int]]:
    # (m, n) of each election of a group split into equal parts by size
    count = int(count * scale)
    part = count // len(sizes)
    return [sizes[min(j // part, len(sizes) - 1)] if part else sizes[0]
            for j in range(count)]


def _cultures(seed: int, sizes: Sequence[Tuple[int, int]],
              scale: float = 1.0) -> List[List[DatasetEntry]]:
    """Return culture groups, each a list of entries split by size."""
    groups = []
    for group_index, (name, kind, count, params) in enumerate(BASIC_GROUPS):
        entries = []
        for j, (m, n) in enumerate(_sized(count, sizes, scale)):
            spec = _group_spec(kind, params, m, n, seed, group_index, j)
            label = f'{_slug(name)}_{j:03d}'
            if len(sizes) > 1:
                label += f'_m{m}n{n}'
            entries.append(DatasetEntry(sample_election(spec, label), name,
                                        spec))
        groups.append(entries)
    return groups


def _compass(seed: int,
             sizes: Sequence[Tuple[int, int]]) -> List[DatasetEntry]:
    entries = []
    for index, (name, kind) in enumerate(COMPASS_GROUPS):
        for m, n in sizes:
            culture_seed = seeding.derive_seed(seed, seeding.DATASET_KEY,
                                               len(BASIC_GROUPS) + index, m, n)
            spec = CultureSpec(kind, m, n, culture_seed)
            label = _slug(name) if len(sizes) == 1 else \
                f'{_slug(name)}_m{m}n{n}'
            entries.append(DatasetEntry(sample_election(spec, label), name,
                                        spec))
    return entries


def _truncated(entry: DatasetEntry, spec: TruncationSpec) -> DatasetEntry:
    suffix = {'top_k': 'topk', 'random_cut': 'cut', 'random_drop': 'drop'}
    election = truncate(entry.election, spec)
    election = election.with_label(f'{election.label}_{suffix[spec.method]}')
    return replace(entry, election=election, truncation=spec)


def _half_truncation(entry: DatasetEntry, method: str, seed: int,
                     key: Tuple[int, ...]) -> TruncationSpec:
    m = entry.election.m
    truncation_seed = seeding.derive_seed(seed, seeding.TRUNCATION_KEY, *key)
    if method == 'top_k':
        return TruncationSpec('top_k', k=max(1, m // 2), seed=truncation_seed)
    return TruncationSpec('random_cut', p=half_ranked_cut_probability(m),
                          seed=truncation_seed)


def _mixed_truncation(groups: List[List[DatasetEntry]],
                      seed: int) -> List[DatasetEntry]:
    """Truncate each (culture, size) group half intact, a quarter top-k
    and a quarter random cut. Groups of 2 leave one intact and truncate
    the other, alternating top-k and random cut."""
    result = []
    for group_index, group in enumerate(groups):
        by_size: Dict[Tuple[int, int], List[int]] = {}
        for j, entry in enumerate(group):
            size = (entry.election.m, entry.election.n)
            by_size.setdefault(size, []).append(j)
        methods: List[Optional[str]] = [None] * len(group)
        for size_index, indices in enumerate(by_size.values()):
            count = len(indices)
            if count == 2:
                method = 'top_k' if size_index % 2 == 0 else 'random_cut'
                methods[indices[1]] = method
                continue
            half, quarter = count // 2, count // 4
            for position, j in enumerate(indices):
                if position < half:
                    continue
                methods[j] = ('top_k' if position < half + quarter
                              else 'random_cut')
        for j, (entry, method) in enumerate(zip(group, methods)):
            if method is None:
                result.append(entry)
            else:
                spec = _half_truncation(entry, method, seed,
                                        (group_index, j))
                result.append(_truncated(entry, spec))
    return result


def build_dataset(recipe: str, seed: int) -> List[DatasetEntry]:
    """Return elections of dataset +recipe+.

    +recipe+  One of RECIPES.
        'basic'  Complete elections with BASIC_M candidates and BASIC_N
            voters from each of BASIC_GROUPS, plus ID, AN, UN
            (approximated by IC) and ST.
        'size_oriented'  As basic, each culture's elections split into
            equal parts over SIZES. Special elections at every size.
        'truncation_oriented'  Basic with each culture group half
            intact, a quarter top-k and a quarter random cut truncated,
            parameters ranking half the candidates in expectation.
        'comprehensive'  Size oriented, truncated as
            'truncation_oriented' within each culture and size.
        'random_drop'  Basic with the second half of each culture group
            random drop truncated with DROP_PROBABILITY.
        'size_mini'  Half of each culture group, split over MINI_SIZES.
    +seed+  Seed. Identical seeds give identical datasets.
    """
    if recipe not in RECIPES:
        raise ArgumentError(f"unknown recipe {recipe!r}, expected one of "
                            f"{', '.join(RECIPES)}")
    basic_size = [(BASIC_M, BASIC_N)]
    if recipe in ('basic', 'truncation_oriented', 'random_drop'):
        groups = _cultures(seed, basic_size)
        compass = _compass(seed, basic_size)
    elif recipe == 'size_mini':
        groups = _cultures(seed, MINI_SIZES, scale=0.5)
        compass = _compass(seed, MINI_SIZES)
    else:
        groups = _cultures(seed, SIZES)
        compass = _compass(seed, SIZES)

    if recipe in ('truncation_oriented', 'comprehensive'):
        entries = _mixed_truncation(groups, seed)
    elif recipe == 'random_drop':
        entries = []
        for group_index, group in enumerate(groups):
            half = len(group) // 2
            for j, entry in enumerate(group):
                if j < half:
                    entries.append(entry)
                    continue
                drop_seed = seeding.derive_seed(seed, seeding.TRUNCATION_KEY,
                                                group_index, j)
                spec = TruncationSpec('random_drop', p=DROP_PROBABILITY,
                                      seed=drop_seed)
                entries.append(_truncated(entry, spec))
    else:
        entries = [entry for group in groups for entry in group]
    entries += compass
    log.info("%s dataset: %d elections (seed %d)", recipe, len(entries),
             seed)
    return entries


# ---------------------------------------------------------------------------
# Recognition

def is_single_peaked(order: Sequence[int],
                     axis: Optional[Sequence[int]] = None) -> bool:
    """Return True if +order+ is single-peaked with respect to +axis+.

    +order+  Complete or top-truncated order. A top-truncated order is
        checked on its ranked prefix.
    +axis+  Candidates from left to right. Default identity.
    """
    if not order:
        return True
    position = {c: i for i, c in enumerate(axis)} if axis is not None \
        else {c: c for c in order}
    low = high = position[order[0]]
    for c in order[1:]:
        p = position[c]
        if p == low - 1:
            low = p
        elif p == high + 1:
            high = p
        else:
            return False
    return True


def is_spoc(order: Sequence[int], m: int) -> bool:
    """Return True if every prefix of +order+ is an arc of the circle.

    Candidates 0, ..., +m+ - 1 sit on the circle in order.
    """
    if not order:
        return True
    low = high = order[0]
    size = 1
    for c in order[1:]:
        if c == (low - 1) % m:
            low = c
        elif c == (high + 1) % m:
            high = c
        else:
            return False
        size += 1
    return size <= m


def _leaves(tree: Tree) -> List[int]:
    if isinstance(tree, int):
        return [tree]
    return [leaf for child in tree for leaf in _leaves(child)]


def is_gs_compatible(order: Sequence[int], tree: Tree) -> bool:
    """Return True if +order+ is obtainable by reversing children of
    +tree+'s nodes.

    Holds for a binary tree if and only if the leaves of every node are
    contiguous in +order+.
    """
    position = {c: i for i, c in enumerate(order)}
    stack = [tree]
    while stack:
        node = stack.pop()
        if isinstance(node, int):
            continue
        places = sorted(position[leaf] for leaf in _leaves(node))
        if places[-1] - places[0] != len(places) - 1:
            return False
        stack.extend(node)
    return True
