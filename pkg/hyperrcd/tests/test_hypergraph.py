import threading

import numpy as np
import pytest

from ..exceptions import DegenerateHyperedge, Disconnected, NonPositiveWeight
from ..hypergraph import (
    Hypergraph, clique_expansion, connected_components, hyperedge_length, relabel, sssp,
    star_expansion, validate)


def brute_force_distances(g):
    """Floyd-Warshall on the vertex graph where co-members are w_h apart."""
    dist = np.full((g.n, g.n), np.inf)
    np.fill_diagonal(dist, 0.0)
    for h, w in zip(g.hyperedges, g.weights):
        for u in h:
            for v in h:
                if u != v:
                    dist[u, v] = min(dist[u, v], w)
    for k in range(g.n):
        dist = np.minimum(dist, dist[:, [k]] + dist[[k], :])
    return dist


def test_validate_accepts_minimal():
    g = Hypergraph.from_hyperedges(2, [(0, 1)])
    assert validate(g).ok


@pytest.mark.parametrize('n, hyperedges, weights, error', [
    (4, [(0, 1), (2, 3)], None, 'Disconnected'),
    (2, [(0, 1)], [0.0], 'NonPositiveWeight'),
    (2, [(0, 1)], [-1.0], 'NonPositiveWeight'),
    (2, [(0, 1)], [np.inf], 'NonPositiveWeight'),
    (3, [(0, 1)], None, 'Disconnected'),
    (3, [(0, 1, 2), (1,)], None, 'DegenerateHyperedge'),
    (3, [(0, 1, 2), ()], None, 'DegenerateHyperedge'),
    (3, [(0, 1, 1)], None, 'DegenerateHyperedge'),
    (3, [(0, 1, 3)], None, 'DegenerateHyperedge'),
])
def test_validate_reports_first_violation(n, hyperedges, weights, error):
    diagnostics = validate(Hypergraph.from_hyperedges(n, hyperedges, weights))
    assert not diagnostics.ok
    assert diagnostics.error == error


def test_raise_if_invalid():
    with pytest.raises(Disconnected):
        validate(Hypergraph.from_hyperedges(4, [(0, 1), (2, 3)])).raise_if_invalid()
    with pytest.raises(NonPositiveWeight):
        validate(Hypergraph.from_hyperedges(2, [(0, 1)], [0.0])).raise_if_invalid()
    with pytest.raises(DegenerateHyperedge):
        validate(Hypergraph.from_hyperedges(2, [(0,)])).raise_if_invalid()


def test_incidence(shortcut):
    assert shortcut.incident_hyperedges(0).tolist() == [0, 1]
    assert shortcut.incident_hyperedges(3).tolist() == [1, 2]
    assert shortcut.degrees.tolist() == [2, 1, 2, 2]
    assert shortcut.neighbors(0).tolist() == [1, 2, 3]
    assert shortcut.total_pairs == 3 + 1 + 1
    assert star_expansion(shortcut).shape == (7, 7)


def test_sssp_single_hyperedge():
    g = Hypergraph.from_hyperedges(3, [(0, 1, 2)], [2.0])
    assert sssp(g, 0).tolist() == [0.0, 2.0, 2.0]


def test_sssp_chain(chain):
    assert sssp(chain, 0).tolist() == [0.0, 1.0, 2.0]


def test_sssp_shortcut(shortcut):
    assert sssp(shortcut, 0)[2] == 2.0
    assert sssp(shortcut, 0)[1] == 5.0


def test_hyperedge_length(triangle, shortcut, chain):
    assert hyperedge_length(triangle, 0) == 3.0
    assert hyperedge_length(shortcut, 0) == 12.0
    assert hyperedge_length(chain, 1) == chain.distances.distance(1, 2)


def test_clique_expansion(triangle):
    graph = clique_expansion(triangle)
    assert sorted(graph.edges(data='weight')) == [(0, 1, 1.0), (0, 2, 1.0), (1, 2, 1.0)]

    parallel = Hypergraph.from_hyperedges(2, [(0, 1), (1, 0)], [1.0, 2.0])
    graph = clique_expansion(parallel)
    assert graph.number_of_edges() == 1
    assert graph[0][1]['weight'] == 3.0


def test_duplicate_hyperedges_are_kept():
    g = Hypergraph.from_hyperedges(3, [(0, 1), (0, 1), (0, 1, 2)], [1.0, 3.0, 2.0])
    assert validate(g).ok
    assert g.m == 3
    assert g.distances.distance(0, 1) == 1.0


def test_metric_axioms(rng, make_hypergraph):
    for _ in range(20):
        g = make_hypergraph(rng, int(rng.integers(3, 15)), int(rng.integers(0, 15)))
        dist = g.distances.all_pairs()
        assert np.all(np.diag(dist) == 0.0)
        np.testing.assert_allclose(dist, dist.T, rtol=0, atol=1e-12)
        # excess[u, v, w] = d(u, w) - d(u, v) - d(v, w)
        excess = dist[:, np.newaxis, :] - dist[:, :, np.newaxis] - dist[np.newaxis, :, :]
        assert excess.max() <= 1e-12


def test_sssp_matches_brute_force(rng, make_hypergraph):
    for _ in range(30):
        g = make_hypergraph(rng, int(rng.integers(2, 13)), int(rng.integers(0, 10)))
        np.testing.assert_allclose(
            g.distances.all_pairs(), brute_force_distances(g), rtol=0, atol=1e-12)


def test_lipschitz_in_weights(rng, make_hypergraph):
    g = make_hypergraph(rng, 10, 8)
    dist = g.distances.all_pairs()
    bound = np.sqrt(g.m)
    for _ in range(1000):
        perturbed = g.with_weights(g.weights * rng.uniform(0.2, 5.0, size=g.m))
        gap = np.abs(perturbed.distances.all_pairs() - dist).max()
        assert gap <= bound * np.linalg.norm(perturbed.weights - g.weights) + 1e-12


def test_uniform_scaling(rng, make_hypergraph):
    for _ in range(10):
        g = make_hypergraph(rng, 12, 10)
        c = float(rng.uniform(0.1, 10.0))
        scaled = g.with_weights(c * g.weights)
        np.testing.assert_allclose(
            scaled.distances.all_pairs(), c * g.distances.all_pairs(), rtol=1e-12, atol=0)
        for l in range(g.m):
            assert hyperedge_length(scaled, l) == pytest.approx(
                c * hyperedge_length(g, l), rel=1e-12)


def test_with_weights_gets_fresh_distances(chain):
    heavier = chain.with_weights([1.0, 4.0])
    assert chain.distances.distance(0, 2) == 2.0
    assert heavier.distances.distance(0, 2) == 5.0
    assert heavier.hyperedges == chain.hyperedges
    assert chain.weights.tolist() == [1.0, 1.0]


def test_weights_are_read_only(chain):
    with pytest.raises(ValueError):
        chain.weights[0] = 2.0


def test_concurrent_distance_rows(rng, make_hypergraph):
    g = make_hypergraph(rng, 40, 30)
    expected = make_hypergraph(np.random.default_rng(2021), 40, 30).distances.all_pairs()
    rows = {}

    def worker(sources):
        for s in sources:
            rows[s] = g.distances.row(s)

    threads = [threading.Thread(target=worker, args=(range(i, 40, 4),)) for i in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    np.testing.assert_array_equal(np.stack([rows[s] for s in range(40)]), expected)


def test_connected_components_order():
    g = Hypergraph.from_hyperedges(6, [(4, 5), (1, 3), (0, 3)])
    count, labels = connected_components(g)
    assert count == 3
    assert labels.tolist() == [0, 0, 1, 0, 2, 2]


def test_relabel():
    assert relabel([7, 7, 3, 9, 3]).tolist() == [0, 0, 1, 2, 1]
