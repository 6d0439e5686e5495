"""Degree-corrected block-model hypergraphs with planted communities.

Vertices are split into q near-equal communities and get a propensity theta, normalized
within each community. Hyperedges are drawn one at a time until their sizes add up to
the target total cardinality. A hyperedge is intra-community with probability p_intra
(all members from one community, drawn by theta without replacement); otherwise it
takes one member from each of two distinct communities and fills up from all vertices.
Two repair passes then make the result a valid input: every vertex left uncovered is
paired with a member of its own community, and any remaining components are joined
with size-2 bridging hyperedges. All weights are 1.

The coverage pass is not bounded by the q-1 bridge budget. Its hyperedges are all
intra-community, so at low average degree the realized intra fraction sits above
p_intra.
"""

import dataclasses
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np
from absl import logging

from hyperrcd.constants import DEFAULT_SEED, DEFAULT_SIZE_RANGE, SERIES_TO_GRID
from hyperrcd.detection import Partition
from hyperrcd.exceptions import HyperRCDError, InfeasibleParams
from hyperrcd.hypergraph import Hypergraph, connected_components, validate


@dataclass(frozen=True)
class GenParams:
    n: int
    q: int
    avg_degree: Optional[float] = None
    total_cardinality: Optional[int] = None
    p_intra: float = 0.85
    degree_exponent: float = 0.0
    size_range: Tuple[int, int] = DEFAULT_SIZE_RANGE
    seed: int = DEFAULT_SEED

    @property
    def target_cardinality(self) -> int:
        """Target sum of hyperedge sizes; `total_cardinality` wins over `avg_degree`."""
        if self.total_cardinality is not None:
            return int(self.total_cardinality)
        return int(round(self.avg_degree * self.n))

    def replace(self, **changes) -> 'GenParams':
        return dataclasses.replace(self, **changes)

    def to_dict(self) -> Dict:
        params = dataclasses.asdict(self)
        params['size_range'] = list(self.size_range)
        params['target_cardinality'] = self.target_cardinality
        return params

    def check(self):
        lo, hi = self.size_range
        if not self.n >= self.q >= 1:
            raise InfeasibleParams(f'Need n >= q >= 1, got n={self.n}, q={self.q}.')
        if not 0.0 < self.p_intra <= 1.0:
            raise InfeasibleParams(f'p_intra must lie in (0, 1], got {self.p_intra}.')
        if self.q == 1 and self.p_intra < 1.0:
            raise InfeasibleParams('Inter-community hyperedges need at least two communities.')
        if not 2 <= lo <= hi:
            raise InfeasibleParams(f'Invalid hyperedge size range {self.size_range}.')
        if hi > self.n:
            raise InfeasibleParams(
                f'Largest hyperedge size {hi} exceeds the {self.n} vertices.')
        if self.n // self.q < lo:
            raise InfeasibleParams(
                f'Smallest community has {self.n // self.q} vertices, below the minimum '
                f'hyperedge size {lo}.')
        if self.avg_degree is None and self.total_cardinality is None:
            raise InfeasibleParams('Either avg_degree or total_cardinality is required.')
        if self.target_cardinality < lo:
            raise InfeasibleParams(
                f'Target cardinality {self.target_cardinality} is below one hyperedge.')
        if self.degree_exponent < 0:
            raise InfeasibleParams(
                f'Degree exponent must be nonnegative, got {self.degree_exponent}.')


@dataclass(frozen=True)
class Draw:
    """Raw sample before assembly into a Hypergraph."""
    n: int
    labels: np.ndarray
    theta: np.ndarray
    hyperedges: List[Tuple[int, ...]]
    intra: np.ndarray
    covered: int
    bridged: int

    @property
    def sampled(self) -> List[Tuple[int, ...]]:
        """Hyperedges from the main draw, repairs excluded."""
        return self.hyperedges[:len(self.intra)]


def community_sizes(n: int, q: int) -> List[int]:
    sizes = [n // q] * q
    for i in range(n % q):
        sizes[i] += 1
    return sizes


def propensities(labels: np.ndarray, exponent: float, rng: np.random.Generator) -> np.ndarray:
    """theta_v, summing to one inside every community."""
    if exponent > 0:
        theta = rng.pareto(exponent, size=len(labels)) + 1.0
    else:
        theta = np.ones(len(labels))
    totals = np.bincount(labels, weights=theta)
    return theta / totals[labels]


def _choose(candidates: np.ndarray, theta: np.ndarray, size: int,
            rng: np.random.Generator) -> np.ndarray:
    p = theta[candidates]
    return rng.choice(candidates, size=size, replace=False, p=p / p.sum())


def _intra(members: List[np.ndarray], theta, s, rng) -> Tuple[int, ...]:
    community = members[rng.integers(len(members))]
    return tuple(_choose(community, theta, min(s, len(community)), rng).tolist())


def _inter(members: List[np.ndarray], theta, s, n, rng) -> Tuple[int, ...]:
    a, b = rng.choice(len(members), size=2, replace=False)
    chosen = [int(_choose(members[a], theta, 1, rng)[0]),
              int(_choose(members[b], theta, 1, rng)[0])]
    if s > 2:
        rest = np.setdiff1d(np.arange(n), chosen)
        chosen.extend(_choose(rest, theta, s - 2, rng).tolist())
    return tuple(chosen)


def _cover(n, labels, members, theta, hyperedges, rng) -> List[Tuple[int, ...]]:
    covered = np.zeros(n, dtype=bool)
    for h in hyperedges:
        covered[list(h)] = True
    added = []
    for v in np.flatnonzero(~covered):
        others = members[labels[v]][members[labels[v]] != v]
        added.append((int(v), int(_choose(others, theta, 1, rng)[0])))
    return added


def _bridge(n, labels, members, theta, hyperedges, rng) -> List[Tuple[int, ...]]:
    _, comp = connected_components(Hypergraph.from_hyperedges(n, hyperedges))
    parent = {int(c): int(c) for c in np.unique(comp)}

    def find(c):
        while parent[c] != c:
            parent[c] = parent[parent[c]]
            c = parent[c]
        return c

    def join(pool_a, pool_b):
        u = int(_choose(pool_a, theta, 1, rng)[0])
        v = int(_choose(pool_b, theta, 1, rng)[0])
        parent[find(int(comp[v]))] = find(int(comp[u]))
        return (u, v)

    added = []
    # Same-community bridges first; afterwards each community lies in one component.
    for community in members:
        for c in np.unique(comp[community])[1:]:
            first = community[comp[community] == comp[community[0]]]
            if find(int(c)) != find(int(comp[community[0]])):
                added.append(join(first, community[comp[community] == c]))
    roots = sorted({find(int(c)) for c in parent})
    for a, b in zip(roots[:-1], roots[1:]):
        added.append(join(np.flatnonzero(comp == a), np.flatnonzero(comp == b)))
    return added


def draw(params: GenParams) -> Draw:
    params.check()
    rng = np.random.default_rng(params.seed)
    labels = np.repeat(np.arange(params.q), community_sizes(params.n, params.q))
    members = [np.flatnonzero(labels == c) for c in range(params.q)]
    theta = propensities(labels, params.degree_exponent, rng)
    lo, hi = params.size_range

    target = params.target_cardinality
    hyperedges, intra, total = [], [], 0
    while total < target:
        s = int(rng.integers(lo, hi + 1))
        is_intra = bool(rng.random() < params.p_intra)
        if is_intra:
            h = _intra(members, theta, s, rng)
        else:
            h = _inter(members, theta, s, params.n, rng)
        hyperedges.append(h)
        intra.append(is_intra)
        total += len(h)

    coverage = _cover(params.n, labels, members, theta, hyperedges, rng)
    bridges = _bridge(params.n, labels, members, theta, hyperedges + coverage, rng)
    if coverage or bridges:
        logging.debug('Generator repairs: %d coverage, %d bridging hyperedges.',
                      len(coverage), len(bridges))
    return Draw(n=params.n, labels=labels, theta=theta,
                hyperedges=hyperedges + coverage + bridges,
                intra=np.array(intra, dtype=bool),
                covered=len(coverage), bridged=len(bridges))


def generate(params: GenParams) -> Tuple[Hypergraph, Partition]:
    """Samples a connected hypergraph and its planted partition.

    Raises:
        InfeasibleParams: parameters cannot be realized.
    """
    sample = draw(params)
    g = Hypergraph.from_hyperedges(sample.n, sample.hyperedges)
    validate(g).raise_if_invalid()
    return g, Partition(sample.labels)


def series(series_id: str, seed: int = DEFAULT_SEED,
           size_range: Tuple[int, int] = DEFAULT_SIZE_RANGE) -> List[GenParams]:
    """Parameter grid of one synthetic series, in sweep order."""
    if series_id not in SERIES_TO_GRID:
        raise HyperRCDError(
            f'Unknown series {series_id!r}; expected one of {sorted(SERIES_TO_GRID)}.')
    grid = SERIES_TO_GRID[series_id]
    swept = next(k for k, v in grid.items() if isinstance(v, list))
    fixed = {k: v for k, v in grid.items() if k != swept}
    return [GenParams(**fixed, **{swept: value}, seed=seed, size_range=size_range)
            for value in grid[swept]]
