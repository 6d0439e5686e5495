import pathlib

import numpy as np
import pytest

from ..hypergraph import Hypergraph


@pytest.fixture
def triangle():
    """One hyperedge {0, 1, 2} of weight 1."""
    return Hypergraph.from_hyperedges(3, [(0, 1, 2)])


@pytest.fixture
def chain():
    return Hypergraph.from_hyperedges(3, [(0, 1), (1, 2)])


@pytest.fixture
def shortcut():
    """Heavy triple {0, 1, 2} next to the light detour 0 - 3 - 2."""
    return Hypergraph.from_hyperedges(4, [(0, 1, 2), (0, 3), (3, 2)], [5.0, 1.0, 1.0])


@pytest.fixture
def two_blocks():
    """Two blocks of five vertices, every triple a hyperedge, joined by {4, 5}."""
    hyperedges = []
    for block in (range(0, 5), range(5, 10)):
        block = list(block)
        for i in range(5):
            for j in range(i + 1, 5):
                for k in range(j + 1, 5):
                    hyperedges.append((block[i], block[j], block[k]))
    hyperedges.append((4, 5))
    labels = np.array([0] * 5 + [1] * 5)
    return Hypergraph.from_hyperedges(10, hyperedges), labels


def random_hypergraph(rng, n, extra, max_size=4, low=0.5, high=2.0):
    """Connected hypergraph: a random hypertree on all n vertices plus `extra` hyperedges."""
    order = rng.permutation(n)
    hyperedges = []
    covered = 1
    while covered < n:
        s = int(rng.integers(2, max_size + 1))
        new = order[covered:covered + s - 1].tolist()
        anchor = int(order[rng.integers(covered)])
        hyperedges.append(tuple([anchor] + new))
        covered += len(new)
    for _ in range(extra):
        s = int(rng.integers(2, min(max_size, n) + 1))
        hyperedges.append(tuple(rng.choice(n, size=s, replace=False).tolist()))
    weights = rng.uniform(low, high, size=len(hyperedges))
    return Hypergraph.from_hyperedges(n, hyperedges, weights)


@pytest.fixture
def make_hypergraph():
    return random_hypergraph


@pytest.fixture
def rng():
    return np.random.default_rng(2021)


@pytest.fixture
def dataset_path():
    return pathlib.Path(__file__).parents[2].absolute() / 'dataset'


@pytest.fixture
def zoo_paths(dataset_path):
    return dataset_path / 'zoo' / 'zoo.hyperedges', dataset_path / 'zoo' / 'zoo.labels'
