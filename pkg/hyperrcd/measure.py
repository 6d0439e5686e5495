"""Lazy random-walk measures on a weighted hypergraph.

The walker at x stays with probability alpha. Otherwise it picks a hyperedge h'
containing x with probability proportional to w_{h'} and moves to one of the other
|h'| - 1 members uniformly. A neighbor sharing several hyperedges with x collects mass
through each of them.
"""

from dataclasses import dataclass
from typing import Dict, List, Sequence

import numpy as np

from hyperrcd.constants import MASS_RTOL_ERROR
from hyperrcd.exceptions import AlphaOutOfRange, MeasureError
from hyperrcd.hypergraph import Hypergraph


@dataclass(frozen=True)
class ProbabilityMeasure:
    """Finite-support distribution; `support` is sorted and masses are positive."""
    owner: int
    alpha: float
    support: np.ndarray
    masses: np.ndarray

    def __len__(self):
        return len(self.support)

    def as_dict(self) -> Dict[int, float]:
        return {int(v): float(p) for v, p in zip(self.support, self.masses)}

    def mass(self, v: int) -> float:
        pos = np.searchsorted(self.support, v)
        if pos < len(self.support) and self.support[pos] == v:
            return float(self.masses[pos])
        return 0.0

    def to_records(self) -> List[Dict[str, float]]:
        return [{'vertex': int(v), 'mass': float(p)}
                for v, p in zip(self.support, self.masses)]


def check_alpha(alpha: float):
    if not 0.0 <= alpha <= 1.0:
        raise AlphaOutOfRange(f'alpha must lie in [0, 1], got {alpha}.')


def measure_vector(g: Hypergraph, x: int, alpha: float) -> np.ndarray:
    """Dense length-n mass vector of the measure owned by `x`."""
    check_alpha(alpha)
    hyperedges = g.incident_hyperedges(x)
    w = g.weights[hyperedges]
    coef = w / ((g.sizes[hyperedges] - 1) * w.sum())
    masses = g.incidence_csc[:, hyperedges] @ coef
    # x sits in every one of its hyperedges.
    masses[x] = 0.0
    masses *= 1.0 - alpha
    masses[x] = alpha

    total = masses.sum()
    if abs(total - 1.0) > MASS_RTOL_ERROR:
        raise MeasureError(
            f'Measure of vertex {x} sums to {total!r}; incidence is inconsistent.')
    return masses / total


def build_measure(g: Hypergraph, x: int, alpha: float) -> ProbabilityMeasure:
    """Builds mu_x^alpha.

    Args:
        g: validated hypergraph.
        x: owner vertex.
        alpha: laziness in [0, 1].

    Returns:
        ProbabilityMeasure supported on x (when alpha > 0) and its neighbors.

    Raises:
        AlphaOutOfRange: alpha outside [0, 1].
    """
    masses = measure_vector(g, x, alpha)
    support = np.flatnonzero(masses > 0.0)
    return ProbabilityMeasure(
        owner=int(x), alpha=float(alpha), support=support, masses=masses[support])


def build_measures(g: Hypergraph, vertices: Sequence[int],
                   alpha: float) -> Dict[int, ProbabilityMeasure]:
    return {int(x): build_measure(g, x, alpha) for x in vertices}
