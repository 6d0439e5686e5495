"""Weighted hypergraph, its hyperpath metric and hyperedge lengths.

A hyperpath pays the full weight of every hyperedge it steps through, whichever two
members it uses. Distances are computed on the star expansion: one node per vertex,
one node per hyperedge, and an edge of weight w_h / 2 between a hyperedge node and each
of its members, so that entering and leaving hyperedge h costs exactly w_h.
"""

import itertools
import threading
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterable, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
import scipy.sparse as sp
from absl import logging
from scipy.sparse import csgraph

from hyperrcd.exceptions import (
    DegenerateHyperedge, Disconnected, HyperRCDError, NonPositiveWeight)


@dataclass(frozen=True, eq=False)
class Hypergraph:
    """Immutable weighted hypergraph on vertices 0..n-1.

    Construction does not check connectivity, so surgery can produce disconnected
    instances; inputs read from disk go through `validate`.
    Weight updates never mutate: `with_weights` returns a new instance with its own
    distance cache.
    """
    n: int
    hyperedges: Tuple[Tuple[int, ...], ...]
    weights: np.ndarray

    def __post_init__(self):
        hyperedges = tuple(tuple(int(v) for v in h) for h in self.hyperedges)
        weights = np.array(self.weights, dtype=np.float64).reshape(-1)
        if len(weights) != len(hyperedges):
            raise HyperRCDError(
                f'Got {len(weights)} weights for {len(hyperedges)} hyperedges.')
        weights.flags.writeable = False
        object.__setattr__(self, 'n', int(self.n))
        object.__setattr__(self, 'hyperedges', hyperedges)
        object.__setattr__(self, 'weights', weights)

    @classmethod
    def from_hyperedges(cls, n: int, hyperedges: Iterable[Sequence[int]],
                        weights: Optional[Sequence[float]] = None) -> 'Hypergraph':
        hyperedges = [tuple(h) for h in hyperedges]
        if weights is None:
            weights = np.ones(len(hyperedges))
        return cls(n=n, hyperedges=tuple(hyperedges), weights=weights)

    @property
    def m(self) -> int:
        return len(self.hyperedges)

    @cached_property
    def sizes(self) -> np.ndarray:
        return np.array([len(h) for h in self.hyperedges], dtype=np.int64)

    @cached_property
    def incidence(self) -> sp.csr_matrix:
        """Vertex-by-hyperedge 0/1 matrix of shape (n, m)."""
        rows = np.fromiter(
            itertools.chain.from_iterable(self.hyperedges), dtype=np.int64,
            count=int(self.sizes.sum()))
        cols = np.repeat(np.arange(self.m, dtype=np.int64), self.sizes)
        if len(rows) and (rows.min() < 0 or rows.max() >= self.n):
            raise DegenerateHyperedge(
                f'Hyperedge member out of range [0, {self.n}).')
        data = np.ones(len(rows), dtype=np.float64)
        inc = sp.csr_matrix((data, (rows, cols)), shape=(self.n, self.m))
        inc.sort_indices()
        return inc

    @cached_property
    def incidence_csc(self) -> sp.csc_matrix:
        return self.incidence.tocsc()

    def incident_hyperedges(self, v: int) -> np.ndarray:
        """Sorted indices of the hyperedges containing `v`."""
        inc = self.incidence
        return inc.indices[inc.indptr[v]:inc.indptr[v + 1]]

    def neighbors(self, v: int) -> np.ndarray:
        members = self.incidence_csc[:, self.incident_hyperedges(v)].indices
        members = np.unique(members)
        return members[members != v]

    @cached_property
    def degrees(self) -> np.ndarray:
        return np.diff(self.incidence.indptr)

    @property
    def total_pairs(self) -> int:
        """E = sum over hyperedges of s(s-1)/2."""
        return int((self.sizes * (self.sizes - 1) // 2).sum())

    def with_weights(self, weights: Sequence[float]) -> 'Hypergraph':
        g = Hypergraph(n=self.n, hyperedges=self.hyperedges, weights=weights)
        # Structure is shared; only the metric is rebuilt.
        for name in ('sizes', 'incidence', 'incidence_csc', 'degrees'):
            if name in self.__dict__:
                g.__dict__[name] = self.__dict__[name]
        return g

    def select(self, keep: np.ndarray) -> 'Hypergraph':
        """Sub-hypergraph on the same vertices with the hyperedges where `keep`."""
        keep = np.asarray(keep, dtype=bool)
        idx = np.flatnonzero(keep)
        return Hypergraph(
            n=self.n,
            hyperedges=tuple(self.hyperedges[i] for i in idx),
            weights=self.weights[idx])

    @cached_property
    def distances(self) -> 'DistanceOracle':
        return DistanceOracle(self)

    def __repr__(self):
        return f'Hypergraph(n={self.n}, m={self.m}, sum_size={int(self.sizes.sum())})'


def star_expansion(g: Hypergraph, weighted: bool = True) -> sp.csr_matrix:
    """Symmetric (n+m)x(n+m) vertex/hyperedge graph.

    With `weighted`, every incidence edge carries w_h / 2; otherwise 1.
    """
    inc = g.incidence.tocoo()
    rows = inc.row
    cols = inc.col + g.n
    if weighted:
        data = g.weights[inc.col] / 2.0
    else:
        data = np.ones(len(rows))
    size = g.n + g.m
    adj = sp.coo_matrix(
        (np.concatenate([data, data]),
         (np.concatenate([rows, cols]), np.concatenate([cols, rows]))),
        shape=(size, size))
    return adj.tocsr()


def relabel(labels: Sequence[int]) -> np.ndarray:
    """Maps labels to 0..k-1 in order of first appearance."""
    labels = np.asarray(labels)
    _, first, inverse = np.unique(labels, return_index=True, return_inverse=True)
    order = np.argsort(np.argsort(first))
    return order[inverse].astype(np.int64)


def connected_components(g: Hypergraph) -> Tuple[int, np.ndarray]:
    """Vertex components, numbered by their smallest vertex id."""
    if g.m == 0:
        return g.n, np.arange(g.n, dtype=np.int64)
    _, labels = csgraph.connected_components(
        star_expansion(g, weighted=False), directed=False)
    labels = relabel(labels[:g.n])
    return int(labels.max()) + 1 if g.n else 0, labels


@dataclass(frozen=True)
class Diagnostics:
    ok: bool
    error: Optional[str] = None
    message: str = ''

    def raise_if_invalid(self):
        if self.ok:
            return
        exc = {
            'DegenerateHyperedge': DegenerateHyperedge,
            'NonPositiveWeight': NonPositiveWeight,
            'Disconnected': Disconnected,
        }[self.error]
        raise exc(self.message)


def validate(g: Hypergraph) -> Diagnostics:
    """Checks the standing assumptions and reports the first violation.

    Order: hyperedge structure, weights, isolated vertices, connectivity.
    """
    for l, h in enumerate(g.hyperedges):
        if len(h) == 0:
            return Diagnostics(False, 'DegenerateHyperedge', f'Hyperedge {l} is empty.')
        if len(h) == 1:
            return Diagnostics(
                False, 'DegenerateHyperedge', f'Hyperedge {l} is a singleton {h}.')
        if len(set(h)) != len(h):
            return Diagnostics(
                False, 'DegenerateHyperedge', f'Hyperedge {l} repeats a member: {h}.')
        if min(h) < 0 or max(h) >= g.n:
            return Diagnostics(
                False, 'DegenerateHyperedge',
                f'Hyperedge {l} has a member outside [0, {g.n}): {h}.')
    bad = np.flatnonzero(~(np.isfinite(g.weights) & (g.weights > 0)))
    if len(bad):
        l = int(bad[0])
        return Diagnostics(
            False, 'NonPositiveWeight',
            f'Hyperedge {l} has weight {g.weights[l]!r}; weights must be positive.')
    if g.n < 2:
        return Diagnostics(False, 'Disconnected', f'Need at least two vertices, got {g.n}.')
    isolated = np.flatnonzero(g.degrees == 0)
    if len(isolated):
        return Diagnostics(
            False, 'Disconnected', f'Vertex {int(isolated[0])} is isolated.')
    count, _ = connected_components(g)
    if count > 1:
        return Diagnostics(False, 'Disconnected', f'Hypergraph has {count} components.')
    return Diagnostics(True)


class DistanceOracle:
    """Lazy cache of single-source distance rows for one weight vector.

    Safe for concurrent readers: missing rows are filled under a lock.
    """

    def __init__(self, g: Hypergraph):
        self._g = g
        self._rows: Dict[int, np.ndarray] = {}
        self._lock = threading.Lock()
        self._graph = None

    def _ensure(self, sources: Sequence[int]):
        missing = [int(s) for s in sources if int(s) not in self._rows]
        if not missing:
            return
        with self._lock:
            missing = sorted({s for s in missing if s not in self._rows})
            if not missing:
                return
            if self._graph is None:
                self._graph = star_expansion(self._g)
            dist = csgraph.dijkstra(
                self._graph, directed=True, indices=missing)[:, :self._g.n]
            for s, row in zip(missing, dist):
                row.flags.writeable = False
                self._rows[s] = row
            logging.debug('Distance cache: %d of %d rows.', len(self._rows), self._g.n)

    def row(self, source: int) -> np.ndarray:
        self._ensure([source])
        return self._rows[int(source)]

    def rows(self, sources: Sequence[int]) -> np.ndarray:
        self._ensure(sources)
        if len(sources) == 0:
            return np.zeros((0, self._g.n))
        return np.stack([self._rows[int(s)] for s in sources])

    def pairwise(self, vertices: Sequence[int]) -> np.ndarray:
        """Distance matrix restricted to `vertices` (in the given order)."""
        vertices = np.asarray(vertices, dtype=np.int64)
        return self.rows(vertices)[:, vertices]

    def all_pairs(self) -> np.ndarray:
        return self.rows(np.arange(self._g.n))

    def distance(self, u: int, v: int) -> float:
        return float(self.row(u)[v])


def sssp(g: Hypergraph, source: int) -> np.ndarray:
    """Hyperpath distances from `source` to every vertex.

    Args:
        g: a validated hypergraph.
        source: vertex id.

    Returns:
        np.ndarray of shape (n,), entry v is d(source, v).
    """
    return np.array(g.distances.row(source))


def hyperedge_length(g: Hypergraph, l: int) -> float:
    """d(h_l): sum of the pairwise member distances."""
    members = g.hyperedges[l]
    dist = g.distances.pairwise(members)
    return pair_sum(dist, len(members))


def pair_sum(matrix: np.ndarray, s: int) -> float:
    """Sum of the strict upper triangle, accumulated pair by pair (i < j)."""
    total = 0.0
    for i, j in itertools.combinations(range(s), 2):
        total += float(matrix[i, j])
    return total


def clique_expansion(g: Hypergraph) -> nx.Graph:
    """Pairwise graph with one edge per co-member pair; parallel weights summed."""
    edge_weights: Dict[Tuple[int, int], float] = {}
    for h, w in zip(g.hyperedges, g.weights):
        for u, v in itertools.combinations(sorted(h), 2):
            edge_weights[(u, v)] = edge_weights.get((u, v), 0.0) + float(w)
    graph = nx.Graph()
    graph.add_nodes_from(range(g.n))
    graph.add_weighted_edges_from((u, v, w) for (u, v), w in edge_weights.items())
    return graph
