"""Community detection by hyperedge surgery on the evolved weights.

After the flow, inter-community hyperedges carry large weights. Sweeping a cutoff from
the largest weight down, every hyperedge heavier than the cutoff is removed and the
connected components of what survives are read off as communities.
"""

from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from absl import logging
from joblib import Parallel, delayed
from tqdm import tqdm

from hyperrcd.constants import SUPERVISED, UNSUPERVISED
from hyperrcd.exceptions import HyperRCDError, LabelLengthMismatch
from hyperrcd.hypergraph import Hypergraph, connected_components, relabel
from hyperrcd.metrics import nmi

SWEEP_COLUMNS = ['cutoff', 'num_communities', 'nmi']


@dataclass(frozen=True, eq=False)
class Partition:
    """Vertex labels, renumbered 0..k-1 in order of the smallest member."""
    labels: np.ndarray

    def __post_init__(self):
        labels = relabel(np.asarray(self.labels).reshape(-1))
        labels.flags.writeable = False
        object.__setattr__(self, 'labels', labels)

    def __len__(self):
        return len(self.labels)

    def __eq__(self, other):
        if not isinstance(other, Partition):
            return NotImplemented
        return np.array_equal(self.labels, other.labels)

    @property
    def num_communities(self) -> int:
        return int(self.labels.max()) + 1 if len(self.labels) else 0

    def communities(self) -> List[np.ndarray]:
        return [np.flatnonzero(self.labels == c) for c in range(self.num_communities)]

    @classmethod
    def from_communities(cls, n: int, communities: Sequence[Sequence[int]]) -> 'Partition':
        labels = np.full(n, -1, dtype=np.int64)
        for c, members in enumerate(communities):
            labels[list(members)] = c
        if (labels < 0).any():
            raise LabelLengthMismatch(
                f'Vertex {int(np.flatnonzero(labels < 0)[0])} has no community.')
        return cls(labels)


@dataclass(frozen=True)
class SweepEntry:
    cutoff: float
    partition: Partition
    score: float
    removed: int
    nmi: Optional[float] = None


@dataclass(frozen=True)
class SweepResult:
    """Sweep curve; cutoffs strictly decreasing, `best` maximizes the score."""
    entries: Tuple[SweepEntry, ...]
    best: int
    mode: str = SUPERVISED
    iteration: Optional[int] = field(default=None, compare=False)

    def __len__(self):
        return len(self.entries)

    @property
    def best_entry(self) -> SweepEntry:
        return self.entries[self.best]

    @property
    def partition(self) -> Partition:
        return self.best_entry.partition

    @property
    def cutoffs(self) -> np.ndarray:
        return np.array([e.cutoff for e in self.entries])

    @property
    def scores(self) -> np.ndarray:
        return np.array([e.score for e in self.entries])

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({
            'cutoff': self.cutoffs,
            'num_communities': [e.partition.num_communities for e in self.entries],
            'nmi': [np.nan if e.nmi is None else e.nmi for e in self.entries],
        }, columns=SWEEP_COLUMNS)


def cut_above(g: Hypergraph, weights: Sequence[float], cutoff: float) -> Hypergraph:
    """Keeps exactly the hyperedges with weight <= cutoff."""
    weights = np.asarray(weights, dtype=np.float64)
    if len(weights) != g.m:
        raise HyperRCDError(f'Expected {g.m} weights, got {len(weights)}.')
    return g.with_weights(weights).select(weights <= cutoff)


def components(g_cut: Hypergraph) -> Partition:
    _, labels = connected_components(g_cut)
    return Partition(labels)


def candidate_cutoffs(weights: Sequence[float]) -> np.ndarray:
    """Distinct weights, largest first."""
    return np.unique(np.asarray(weights, dtype=np.float64))[::-1]


def _check_truth(g: Hypergraph, truth) -> Partition:
    truth = truth if isinstance(truth, Partition) else Partition(truth)
    if len(truth) != g.n:
        raise LabelLengthMismatch(
            f'Ground truth labels {len(truth)} vertices, hypergraph has {g.n}.')
    return truth


def _partitions(g: Hypergraph, weights: np.ndarray, cutoffs: np.ndarray,
                n_jobs: int, verbose: bool) -> List[Tuple[Partition, int]]:
    def evaluate(cutoff):
        cut = cut_above(g, weights, cutoff)
        return components(cut), g.m - cut.m

    if n_jobs == 1:
        return [evaluate(c) for c in tqdm(cutoffs, desc='sweep', disable=not verbose)]
    return Parallel(n_jobs=n_jobs, prefer='threads')(delayed(evaluate)(c) for c in cutoffs)


def _entry_nmi(mode, partition, score, truth):
    if truth is None:
        return None
    return float(score) if mode == SUPERVISED else nmi(partition, truth)


def _sweep(g: Hypergraph, weights: Sequence[float], score_fn: Callable, mode: str,
           truth: Optional[Partition], n_jobs: int, verbose: bool) -> SweepResult:
    weights = np.asarray(weights, dtype=np.float64)
    cutoffs = candidate_cutoffs(weights)
    results = _partitions(g, weights, cutoffs, n_jobs, verbose)
    scores = score_fn(cutoffs, [p for p, _ in results])
    entries = tuple(
        SweepEntry(cutoff=float(c), partition=p, score=float(s), removed=int(r),
                   nmi=_entry_nmi(mode, p, s, truth))
        for c, (p, r), s in zip(cutoffs, results, scores))
    # argmax keeps the first maximum, i.e. the largest cutoff.
    best = int(np.argmax([e.score for e in entries]))
    logging.debug('%s sweep: %d cutoffs, best %g at cutoff %g (%d communities).',
                  mode, len(entries), entries[best].score, entries[best].cutoff,
                  entries[best].partition.num_communities)
    return SweepResult(entries=entries, best=best, mode=mode)


def sweep_supervised(g: Hypergraph, weights: Sequence[float], truth,
                     n_jobs: int = 1, verbose: bool = False) -> SweepResult:
    """Scores every cutoff by NMI against the ground truth.

    Raises:
        LabelLengthMismatch: truth does not label every vertex.
    """
    truth = _check_truth(g, truth)
    return _sweep(g, weights, lambda _, parts: [nmi(p, truth) for p in parts],
                  SUPERVISED, truth, n_jobs, verbose)


def relative_gaps(cutoffs: np.ndarray) -> np.ndarray:
    """Gap from each cutoff up to the next larger one, relative to the largest weight.

    `cutoffs` is sorted descending; scores lie in [0, 1).
    """
    gaps = np.zeros(len(cutoffs))
    if len(cutoffs) > 1 and cutoffs[0] > 0:
        gaps[1:] = (cutoffs[:-1] - cutoffs[1:]) / cutoffs[0]
    return gaps


def sweep_unsupervised(g: Hypergraph, weights: Sequence[float], truth=None,
                       n_jobs: int = 1, verbose: bool = False) -> SweepResult:
    """Cuts at the largest relative gap between consecutive distinct weights.

    `truth` is optional and only fills the reported NMI column.
    """
    truth = None if truth is None else _check_truth(g, truth)
    return _sweep(g, weights, lambda cutoffs, _: relative_gaps(cutoffs),
                  UNSUPERVISED, truth, n_jobs, verbose)


def sweep(g: Hypergraph, weights: Sequence[float], mode: str = SUPERVISED, truth=None,
          n_jobs: int = 1, verbose: bool = False) -> SweepResult:
    if mode == SUPERVISED:
        if truth is None:
            raise HyperRCDError('Supervised sweep needs ground-truth labels.')
        return sweep_supervised(g, weights, truth, n_jobs, verbose)
    if mode == UNSUPERVISED:
        return sweep_unsupervised(g, weights, truth, n_jobs, verbose)
    raise HyperRCDError(f'Unknown sweep mode {mode!r}.')


def sweep_trajectory(g: Hypergraph, trajectory, mode: str = SUPERVISED, truth=None,
                     n_jobs: int = 1, verbose: bool = False) -> SweepResult:
    """Sweeps every flow iterate and keeps the best; ties go to the earliest one."""
    best = None
    for state in tqdm(trajectory, desc='sweep/k', disable=not verbose):
        result = sweep(g, state.weights, mode, truth, n_jobs)
        if best is None or result.best_entry.score > best.best_entry.score:
            best = SweepResult(entries=result.entries, best=result.best, mode=mode,
                               iteration=state.iteration)
    return best
