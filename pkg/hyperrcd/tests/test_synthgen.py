import numpy as np
import pytest

from ..exceptions import HyperRCDError, InfeasibleParams
from ..hypergraph import validate
from ..synthgen import GenParams, community_sizes, draw, generate, propensities, series


def test_community_sizes():
    assert community_sizes(100, 3) == [34, 33, 33]
    assert community_sizes(12, 4) == [3, 3, 3, 3]


def test_propensities_normalized_per_community(rng):
    labels = np.repeat(np.arange(4), 25)
    for exponent in (0.0, 1.5, 3.0):
        theta = propensities(labels, exponent, rng)
        np.testing.assert_allclose(np.bincount(labels, weights=theta), np.ones(4), atol=1e-12)
        assert np.all(theta > 0)
    np.testing.assert_array_equal(propensities(labels, 0.0, rng), np.full(100, 1 / 25))


def test_target_cardinality_reached():
    params = GenParams(n=100, q=3, avg_degree=15, p_intra=0.85)
    sample = draw(params)
    total = sum(len(h) for h in sample.sampled)
    assert 1500 <= total < 1500 + params.size_range[1]
    assert all(2 <= len(h) <= 6 for h in sample.sampled)


def test_total_cardinality_wins():
    params = GenParams(n=50, q=2, avg_degree=10, total_cardinality=120)
    assert params.target_cardinality == 120


def test_single_community():
    g, truth = generate(GenParams(n=20, q=1, avg_degree=4, p_intra=1.0))
    assert truth.num_communities == 1
    assert validate(g).ok


def test_deterministic_per_seed():
    params = GenParams(n=60, q=3, avg_degree=6, seed=7)
    g1, truth1 = generate(params)
    g2, truth2 = generate(params)
    assert g1.hyperedges == g2.hyperedges
    assert truth1 == truth2
    g3, _ = generate(params.replace(seed=8))
    assert g3.hyperedges != g1.hyperedges


def test_average_degree():
    g, _ = generate(GenParams(n=300, q=5, avg_degree=20, p_intra=0.7))
    assert g.degrees.mean() == pytest.approx(20, rel=0.15)


def test_intra_fraction():
    params = GenParams(n=300, q=5, avg_degree=20, p_intra=0.7)
    sample = draw(params)
    assert sample.intra.mean() == pytest.approx(0.7, abs=0.05)
    for h, is_intra in zip(sample.sampled, sample.intra):
        if is_intra:
            assert len(set(sample.labels[list(h)])) == 1
        else:
            assert len(set(sample.labels[list(h)])) >= 2


def test_valid_with_planted_labels():
    for q in (2, 3, 5):
        g, truth = generate(GenParams(n=60, q=q, avg_degree=5, p_intra=0.9))
        assert validate(g).ok
        assert truth.num_communities == q
        assert len(truth) == g.n
        assert np.all(g.weights == 1.0)


def test_sparse_draw_repairs():
    params = GenParams(n=60, q=6, avg_degree=1.0, size_range=(2, 3), p_intra=0.9)
    sample = draw(params)
    repairs = sample.hyperedges[len(sample.sampled):]
    assert len(repairs) == sample.covered + sample.bridged
    cross = [h for h in repairs[sample.covered:]
             if sample.labels[h[0]] != sample.labels[h[1]]]
    assert len(cross) <= params.q - 1
    assert all(len(h) == 2 for h in repairs)
    _, truth = generate(params)
    assert truth.num_communities == 6


def test_coverage_repairs_raise_intra_fraction():
    sample = draw(series('D2')[0])
    coverage = sample.hyperedges[len(sample.sampled):len(sample.sampled) + sample.covered]
    assert all(sample.labels[u] == sample.labels[v] for u, v in coverage)
    realized = (sample.intra.sum() + len(coverage)) / (len(sample.intra) + len(coverage))
    assert realized >= sample.intra.mean()


def test_series_grids():
    d1 = series('D1')
    assert [p.avg_degree for p in (d1[0], d1[-1])] == [3, 30]
    assert all(p.n == 100 and p.q == 3 for p in d1)
    d2 = series('D2', seed=5)
    assert [p.p_intra for p in (d2[0], d2[-1])] == [0.15, 0.85]
    assert all(p.seed == 5 for p in d2)
    d3 = series('D3')
    assert [p.n for p in (d3[0], d3[-1])] == [100, 1000]
    assert len(d3) == 10
    with pytest.raises(HyperRCDError):
        series('D4')


@pytest.mark.parametrize('changes', [
    dict(n=2, q=3),
    dict(q=0),
    dict(p_intra=0.0),
    dict(p_intra=1.5),
    dict(q=1, p_intra=0.5),
    dict(size_range=(1, 3)),
    dict(size_range=(4, 3)),
    dict(n=10, q=5, size_range=(3, 4)),
    dict(n=4, q=2, avg_degree=6, p_intra=0.2, size_range=(2, 6)),
    dict(avg_degree=None),
    dict(avg_degree=None, total_cardinality=1),
    dict(degree_exponent=-1.0),
])
def test_infeasible(changes):
    params = GenParams(n=30, q=3, avg_degree=4).replace(**changes)
    with pytest.raises(InfeasibleParams):
        generate(params)
