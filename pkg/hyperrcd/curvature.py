"""Ollivier-Ricci curvature of hyperedges.

kappa(h) = 1 - W_h / d(h), where W_h sums the Wasserstein distances between the
measures of every member pair of h and d(h) sums their hyperpath distances.
"""

import itertools
from dataclasses import dataclass
from typing import Dict, Iterable, List, Sequence, Tuple

import numpy as np
import pandas as pd
from joblib import Parallel, delayed
from tqdm import tqdm

from hyperrcd.hypergraph import Hypergraph, hyperedge_length
from hyperrcd.measure import ProbabilityMeasure, build_measures, check_alpha
from hyperrcd.transport import transport

Pair = Tuple[int, int]

CURVATURE_COLUMNS = ['edge_index', 'size', 'weight', 'W_h', 'd_h', 'kappa']


@dataclass(frozen=True)
class CurvatureReport:
    alpha: float
    sizes: np.ndarray
    weights: np.ndarray
    W: np.ndarray
    d: np.ndarray
    kappa: np.ndarray

    def __len__(self):
        return len(self.kappa)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({
            'edge_index': np.arange(len(self.kappa)),
            'size': self.sizes,
            'weight': self.weights,
            'W_h': self.W,
            'd_h': self.d,
            'kappa': self.kappa,
        }, columns=CURVATURE_COLUMNS)

    def vertex_curvature(self, g: Hypergraph) -> np.ndarray:
        """Mean curvature of the hyperedges incident to each vertex."""
        inc = g.incidence
        degrees = np.maximum(g.degrees, 1)
        return np.asarray(inc @ self.kappa).reshape(-1) / degrees

    def summary(self) -> Dict[str, float]:
        return {
            'min_kappa': float(self.kappa.min()),
            'mean_kappa': float(self.kappa.mean()),
            'max_kappa': float(self.kappa.max()),
            'negative': int((self.kappa < 0).sum()),
        }


def _key(x: int, y: int) -> Pair:
    return (x, y) if x < y else (y, x)


def member_pairs(members: Sequence[int]) -> Iterable[Pair]:
    return itertools.combinations(members, 2)


def pair_wasserstein(g: Hypergraph, measures: Dict[int, ProbabilityMeasure],
                     pair: Pair) -> float:
    x, y = pair
    cost, _ = transport(measures[x], measures[y], g.distances)
    return cost


def _prefetch(g: Hypergraph, measures: Dict[int, ProbabilityMeasure]):
    sources = np.unique(np.concatenate([mu.support for mu in measures.values()]))
    g.distances.rows(sources)


def _edge_sum(members: Sequence[int], pair_w: Dict[Pair, float]) -> float:
    total = 0.0
    for x, y in member_pairs(members):
        total += pair_w[_key(x, y)]
    return total


def hyperedge_curvature(g: Hypergraph, l: int, alpha: float) -> Tuple[float, float, float]:
    """(kappa, W_h, d_h) of hyperedge `l`."""
    check_alpha(alpha)
    members = g.hyperedges[l]
    measures = build_measures(g, members, alpha)
    _prefetch(g, measures)
    pair_w = {_key(x, y): pair_wasserstein(g, measures, _key(x, y))
              for x, y in member_pairs(members)}
    W_h = _edge_sum(members, pair_w)
    d_h = hyperedge_length(g, l)
    return 1.0 - W_h / d_h, W_h, d_h


def _chunks(items: List[Pair], n_chunks: int) -> List[List[Pair]]:
    size = max(1, -(-len(items) // max(1, n_chunks)))
    return [items[i:i + size] for i in range(0, len(items), size)]


def all_curvatures(g: Hypergraph, alpha: float, n_jobs: int = 1,
                   verbose: bool = False) -> CurvatureReport:
    """Curvature of every hyperedge against one frozen weight snapshot.

    Each distinct member pair is transported once and shared by every hyperedge that
    contains it. Pairs are spread over `n_jobs` threads; the result does not depend on
    the evaluation order.
    """
    check_alpha(alpha)
    vertices = np.flatnonzero(g.degrees > 0)
    measures = build_measures(g, vertices, alpha)
    _prefetch(g, measures)

    pairs = sorted({_key(x, y) for h in g.hyperedges for x, y in member_pairs(h)})
    if n_jobs == 1:
        values = [pair_wasserstein(g, measures, p)
                  for p in tqdm(pairs, desc='transport', disable=not verbose)]
    else:
        chunked = Parallel(n_jobs=n_jobs, prefer='threads')(
            delayed(lambda chunk: [pair_wasserstein(g, measures, p) for p in chunk])(c)
            for c in _chunks(pairs, 4 * abs(n_jobs)))
        values = list(itertools.chain.from_iterable(chunked))
    pair_w = dict(zip(pairs, values))

    W = np.array([_edge_sum(h, pair_w) for h in g.hyperedges])
    d = np.array([hyperedge_length(g, l) for l in range(g.m)])
    return CurvatureReport(
        alpha=float(alpha), sizes=g.sizes.copy(), weights=np.array(g.weights),
        W=W, d=d, kappa=1.0 - W / d)
