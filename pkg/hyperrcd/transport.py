"""Exact 1-Wasserstein distance between finite measures under the hyperpath metric.

The transportation problem is solved with the network simplex of POT (`ot.emd`), which
returns an optimal vertex of the coupling polytope together with the simplex prices.
Those prices are turned into a single 1-Lipschitz potential on the support union, which
certifies optimality through Kantorovich-Rubinstein duality.
"""

from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np
import ot
from absl import logging

from hyperrcd.constants import BALANCE_TOL
from hyperrcd.exceptions import UnbalancedMeasures
from hyperrcd.measure import ProbabilityMeasure

_PLAN_CUTOFF = 0.0


@dataclass(frozen=True)
class TransportPlan:
    """Optimal coupling as sparse (source, target, mass) triples."""
    sources: np.ndarray
    targets: np.ndarray
    masses: np.ndarray
    cost: float
    # Simplex prices on mu.support and nu.support, when the solver ran.
    source_prices: Optional[np.ndarray] = field(default=None, repr=False)
    target_prices: Optional[np.ndarray] = field(default=None, repr=False)

    @property
    def entries(self):
        return list(zip(self.sources.tolist(), self.targets.tolist(),
                        self.masses.tolist()))


@dataclass(frozen=True)
class DualPotential:
    vertices: np.ndarray
    values: np.ndarray

    def as_dict(self):
        return {int(v): float(p) for v, p in zip(self.vertices, self.values)}


def support_union(mu: ProbabilityMeasure, nu: ProbabilityMeasure) -> np.ndarray:
    return np.union1d(mu.support, nu.support)


def _positions(union: np.ndarray, vertices: np.ndarray) -> np.ndarray:
    return np.searchsorted(union, vertices)


def _balanced(mu: ProbabilityMeasure,
              nu: ProbabilityMeasure) -> Tuple[np.ndarray, np.ndarray]:
    a_total = mu.masses.sum()
    b_total = nu.masses.sum()
    if abs(a_total - b_total) > BALANCE_TOL:
        raise UnbalancedMeasures(
            f'Measures carry {a_total!r} and {b_total!r} total mass.')
    a = mu.masses / a_total
    b = nu.masses / b_total
    if abs(a.sum() - b.sum()) > BALANCE_TOL:
        raise UnbalancedMeasures('Residual imbalance after renormalization.')
    return a, b


def _same_measure(mu: ProbabilityMeasure, nu: ProbabilityMeasure) -> bool:
    return (len(mu.support) == len(nu.support)
            and np.array_equal(mu.support, nu.support)
            and np.array_equal(mu.masses, nu.masses))


def wasserstein1(mu: ProbabilityMeasure, nu: ProbabilityMeasure,
                 dist: np.ndarray) -> Tuple[float, TransportPlan]:
    """W1(mu, nu) and an optimal plan.

    Args:
        mu: source measure.
        nu: target measure.
        dist: distances on `support_union(mu, nu)`, rows and columns in that order.

    Returns:
        (cost, TransportPlan)

    Raises:
        UnbalancedMeasures: total masses differ by more than 1e-9.
    """
    union = support_union(mu, nu)
    rows = _positions(union, mu.support)
    cols = _positions(union, nu.support)
    a, b = _balanced(mu, nu)

    if _same_measure(mu, nu):
        plan = TransportPlan(
            sources=mu.support.copy(), targets=mu.support.copy(), masses=a, cost=0.0)
        return 0.0, plan

    if len(a) == 1 and len(b) == 1:
        cost = float(dist[rows[0], cols[0]])
        plan = TransportPlan(
            sources=mu.support.copy(), targets=nu.support.copy(),
            masses=np.ones(1), cost=cost)
        return cost, plan

    cost_matrix = np.ascontiguousarray(dist[np.ix_(rows, cols)], dtype=np.float64)
    coupling, log = ot.emd(a, b, cost_matrix, log=True)
    if log.get('warning'):
        logging.warning('Network simplex ended with: %s', log['warning'])

    i, j = np.nonzero(coupling > _PLAN_CUTOFF)
    masses = coupling[i, j]
    cost = float(np.sum(masses * cost_matrix[i, j]))
    plan = TransportPlan(
        sources=mu.support[i], targets=nu.support[j], masses=masses, cost=cost,
        source_prices=np.asarray(log['u']), target_prices=np.asarray(log['v']))
    return cost, plan


def dual_certificate(mu: ProbabilityMeasure, nu: ProbabilityMeasure, dist: np.ndarray,
                     plan: TransportPlan) -> Tuple[DualPotential, float]:
    """1-Lipschitz potential on the support union and the duality gap.

    The potential is the c-transform phi(z) = min_j d(z, y_j) - v_j of the target
    prices. For a metric cost it is 1-Lipschitz and dominates the source prices, so
    its dual value is at least the simplex optimum.
    """
    union = support_union(mu, nu)
    rows = _positions(union, mu.support)
    cols = _positions(union, nu.support)
    a, b = _balanced(mu, nu)

    if _same_measure(mu, nu):
        phi = np.zeros(len(union))
    elif plan.target_prices is None:
        # One point on each side: phi(x) = d(x, y), phi(y) = 0 on the union.
        y = cols[0]
        phi = np.asarray(dist[:, y], dtype=np.float64).copy()
    else:
        phi = np.min(dist[:, cols] - plan.target_prices[np.newaxis, :], axis=1)
        phi = phi - phi.min()

    diff = np.zeros(len(union))
    np.add.at(diff, rows, a)
    np.subtract.at(diff, cols, b)
    gap = float(plan.cost - np.dot(phi, diff))
    return DualPotential(vertices=union, values=phi), gap


def transport(mu: ProbabilityMeasure, nu: ProbabilityMeasure,
              distances) -> Tuple[float, TransportPlan]:
    """Convenience wrapper pulling the union distances from a `DistanceOracle`."""
    union = support_union(mu, nu)
    return wasserstein1(mu, nu, distances.pairwise(union))
