"""Discrete Ricci flow on hyperedge weights.

    w_h(k+1) = w_h(k) + eta * (W_h - d(h))(k)

All hyperedges are updated from the same snapshot. Negatively curved hyperedges
stretch, positively curved ones contract. Weights that would drop below the floor are
clamped to it.
"""

from dataclasses import dataclass
from typing import List, Optional

import numpy as np
import pandas as pd
from absl import logging
from tqdm import tqdm

from hyperrcd.constants import DEFAULT_FLOOR_RATIO
from hyperrcd.curvature import CurvatureReport, all_curvatures
from hyperrcd.exceptions import HyperRCDError, NonFiniteWeight
from hyperrcd.hypergraph import Hypergraph
from hyperrcd.measure import check_alpha
from hyperrcd.utils.loggers import Logger, NoOpLogger

FLOW_COLUMNS = ['k', 'edge_index', 'weight', 'kappa']


@dataclass(frozen=True)
class FlowState:
    iteration: int
    weights: np.ndarray
    report: CurvatureReport
    eta: float
    alpha: float
    floor: float
    clamped: int = 0

    def summary(self) -> dict:
        row = {
            'k': self.iteration,
            'total_weight': float(self.weights.sum()),
            'min_weight': float(self.weights.min()),
            'max_weight': float(self.weights.max()),
            'clamped': self.clamped,
        }
        row.update(self.report.summary())
        return row


def default_floor(weights: np.ndarray) -> float:
    return DEFAULT_FLOOR_RATIO * float(np.min(weights))


def initial_state(g: Hypergraph, alpha: float, eta: float,
                  floor: Optional[float] = None, n_jobs: int = 1) -> FlowState:
    check_alpha(alpha)
    if not eta > 0:
        raise HyperRCDError(f'Step size must be positive, got {eta}.')
    if floor is None:
        floor = default_floor(g.weights)
    if not floor > 0:
        raise HyperRCDError(f'Weight floor must be positive, got {floor}.')
    return FlowState(
        iteration=0, weights=np.array(g.weights), report=all_curvatures(g, alpha, n_jobs),
        eta=float(eta), alpha=float(alpha), floor=float(floor))


def flow_step(state: FlowState, g: Hypergraph, n_jobs: int = 1) -> FlowState:
    """One synchronous update; returns the state at k+1 with its curvature.

    Raises:
        NonFiniteWeight: the update overflowed.
    """
    w = state.weights
    report = state.report
    update = w + state.eta * (report.W - report.d)
    if not np.all(np.isfinite(update)):
        bad = int(np.flatnonzero(~np.isfinite(update))[0])
        raise NonFiniteWeight(
            f'Weight of hyperedge {bad} diverged at iteration {state.iteration + 1}.')

    below = update < state.floor
    clamped = int(below.sum())
    if clamped:
        logging.debug('Iteration %d: clamped %d weights to %g.',
                      state.iteration + 1, clamped, state.floor)
    update = np.where(below, state.floor, update)

    bound = (1.0 + state.eta * g.n * g.m) * w.sum()
    if update.sum() > bound:
        logging.warning('Iteration %d: total weight %g exceeds the growth bound %g.',
                        state.iteration + 1, update.sum(), bound)

    snapshot = g.with_weights(update)
    return FlowState(
        iteration=state.iteration + 1, weights=np.array(snapshot.weights),
        report=all_curvatures(snapshot, state.alpha, n_jobs),
        eta=state.eta, alpha=state.alpha, floor=state.floor, clamped=clamped)


def run_flow(g: Hypergraph, alpha: float, eta: float, K: int,
             floor: Optional[float] = None, n_jobs: int = 1,
             logger: Optional[Logger] = None, verbose: bool = False) -> List[FlowState]:
    """Evolves the weights for K steps.

    Returns:
        The K + 1 states, the initial one first.
    """
    if K < 0:
        raise HyperRCDError(f'Iteration count must be nonnegative, got {K}.')
    logger = logger or NoOpLogger()
    state = initial_state(g, alpha, eta, floor, n_jobs)
    logger.write(state.summary())
    trajectory = [state]
    for _ in tqdm(range(K), desc='flow', disable=not verbose):
        state = flow_step(state, g, n_jobs)
        logger.write(state.summary())
        trajectory.append(state)
    return trajectory


def trajectory_frame(trajectory: List[FlowState]) -> pd.DataFrame:
    """Long table k, edge_index, weight, kappa."""
    frames = [pd.DataFrame({
        'k': state.iteration,
        'edge_index': np.arange(len(state.weights)),
        'weight': state.weights,
        'kappa': state.report.kappa,
    }, columns=FLOW_COLUMNS) for state in trajectory]
    return pd.concat(frames, ignore_index=True)
