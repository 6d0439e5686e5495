import numpy as np
import pytest

from ..exceptions import HyperRCDError, NonFiniteWeight
from ..flow import FLOW_COLUMNS, default_floor, run_flow, trajectory_frame
from ..utils.loggers import Logger


class ListLogger(Logger):

    def __init__(self):
        self.rows = []

    def write(self, data):
        self.rows.append(dict(data))


def test_triangle_contracts_geometrically(triangle):
    trajectory = run_flow(triangle, 0.5, 0.1, 20)
    assert len(trajectory) == 21
    for state in trajectory:
        assert state.weights[0] == pytest.approx(0.775 ** state.iteration, rel=0, abs=1e-9)
        assert state.report.kappa[0] == pytest.approx(0.75, abs=1e-12)


def test_fully_lazy_walk_keeps_weights(rng, make_hypergraph):
    g = make_hypergraph(rng, 10, 6)
    trajectory = run_flow(g, 1.0, 0.3, 5)
    for state in trajectory:
        np.testing.assert_allclose(state.weights, g.weights, rtol=0, atol=1e-9)


def test_homogeneous_in_weights(rng, make_hypergraph):
    g = make_hypergraph(rng, 12, 8)
    c = 3.5
    base = run_flow(g, 0.5, 0.05, 6)
    scaled = run_flow(g.with_weights(c * g.weights), 0.5, 0.05, 6)
    for a, b in zip(base, scaled):
        np.testing.assert_allclose(b.weights, c * a.weights, rtol=1e-9, atol=0)


def test_total_weight_growth_bound(rng, make_hypergraph):
    eta = 0.1
    for _ in range(10):
        g = make_hypergraph(rng, int(rng.integers(6, 15)), int(rng.integers(0, 10)))
        trajectory = run_flow(g, 0.5, eta, 5)
        for before, after in zip(trajectory, trajectory[1:]):
            assert after.weights.sum() <= (1 + eta * g.n * g.m) * before.weights.sum()


def test_weights_clamped_at_floor(triangle):
    trajectory = run_flow(triangle, 0.5, 1.0, 1)
    assert trajectory[1].clamped == 1
    assert trajectory[1].weights[0] == default_floor(triangle.weights)
    assert trajectory[1].floor == pytest.approx(1e-6)


def test_explicit_floor(triangle):
    trajectory = run_flow(triangle, 0.5, 1.0, 1, floor=0.01)
    assert trajectory[1].weights[0] == 0.01


def test_diverging_step_raises(triangle):
    with pytest.raises(NonFiniteWeight):
        run_flow(triangle, 0.5, 1e308, 1)


@pytest.mark.parametrize('alpha, eta, K, floor', [
    (0.5, 0.1, -1, None),
    (0.5, 0.0, 3, None),
    (0.5, -0.1, 3, None),
    (0.5, 0.1, 3, 0.0),
    (1.2, 0.1, 3, None),
])
def test_invalid_parameters(triangle, alpha, eta, K, floor):
    with pytest.raises(HyperRCDError):
        run_flow(triangle, alpha, eta, K, floor)


def test_zero_iterations(chain):
    trajectory = run_flow(chain, 0.5, 0.1, 0)
    assert len(trajectory) == 1
    assert trajectory[0].iteration == 0
    np.testing.assert_array_equal(trajectory[0].weights, chain.weights)


def test_logger_gets_one_row_per_state(chain):
    logger = ListLogger()
    run_flow(chain, 0.5, 0.1, 3, logger=logger)
    assert [row['k'] for row in logger.rows] == [0, 1, 2, 3]
    assert {'total_weight', 'min_kappa', 'clamped'} <= set(logger.rows[0])


def test_threads_agree_with_serial(rng, make_hypergraph):
    g = make_hypergraph(rng, 20, 15)
    serial = run_flow(g, 0.5, 0.1, 3, n_jobs=1)
    threaded = run_flow(g, 0.5, 0.1, 3, n_jobs=2)
    for a, b in zip(serial, threaded):
        np.testing.assert_array_equal(a.weights, b.weights)


def test_trajectory_frame(shortcut):
    frame = trajectory_frame(run_flow(shortcut, 0.5, 0.1, 4))
    assert list(frame.columns) == FLOW_COLUMNS
    assert len(frame) == 5 * shortcut.m
    assert frame['k'].tolist()[:3] == [0, 0, 0]
    assert frame['weight'].tolist()[:3] == [5.0, 1.0, 1.0]


def test_step_follows_curvature_sign(rng, make_hypergraph):
    for _ in range(10):
        g = make_hypergraph(rng, int(rng.integers(5, 15)), int(rng.integers(0, 10)))
        trajectory = run_flow(g, 0.5, 0.1, 3)
        for before, after in zip(trajectory, trajectory[1:]):
            kappa = before.report.kappa
            free = after.weights > after.floor
            grows = free & (kappa < -1e-9)
            shrinks = free & (kappa > 1e-9)
            assert np.all(after.weights[grows] > before.weights[grows])
            assert np.all(after.weights[shrinks] < before.weights[shrinks])


def test_curvature_invariant_under_weight_scaling(rng, make_hypergraph):
    for c in (0.01, 2.0, 1e3):
        g = make_hypergraph(rng, 12, 8)
        base = run_flow(g, 0.5, 0.1, 5)
        scaled = run_flow(g.with_weights(c * g.weights), 0.5, 0.1, 5)
        for a, b in zip(base, scaled):
            np.testing.assert_allclose(b.report.kappa, a.report.kappa, rtol=0, atol=1e-9)
