"""Partition agreement.

NMI(X, Y) = -2 sum_ab n_ab log(n_ab N / (a_a b_b))
            / (sum_a a_a log(a_a / N) + sum_b b_b log(b_b / N))

with natural logarithms and empty cells contributing nothing. When both partitions
are a single community the ratio is 0/0; identical partitions score exactly 1.
"""

from dataclasses import dataclass

import numpy as np
from sklearn.metrics.cluster import contingency_matrix

from hyperrcd.exceptions import VertexSetMismatch
from hyperrcd.hypergraph import relabel


@dataclass(frozen=True)
class ContingencyTable:
    counts: np.ndarray
    row_sums: np.ndarray
    col_sums: np.ndarray
    total: int


def _labels(partition) -> np.ndarray:
    return np.asarray(getattr(partition, 'labels', partition)).reshape(-1)


def contingency_table(x, y) -> ContingencyTable:
    x, y = _labels(x), _labels(y)
    if len(x) != len(y):
        raise VertexSetMismatch(
            f'Partitions cover {len(x)} and {len(y)} vertices.')
    if len(x) == 0:
        raise VertexSetMismatch('Partitions are empty.')
    counts = contingency_matrix(relabel(x), relabel(y))
    return ContingencyTable(
        counts=counts, row_sums=counts.sum(axis=1), col_sums=counts.sum(axis=0),
        total=int(counts.sum()))


def _entropy_term(sizes: np.ndarray, total: int) -> float:
    sizes = sizes[sizes > 0].astype(np.float64)
    return float(np.sum(sizes * np.log(sizes / total)))


def nmi(x, y) -> float:
    """Normalized mutual information of two partitions of the same vertices.

    Args:
        x: Partition or label sequence.
        y: Partition or label sequence.

    Returns:
        float in [0, 1].
    """
    table = contingency_table(x, y)
    nonzero = table.counts > 0
    if (nonzero.sum(axis=0) == 1).all() and (nonzero.sum(axis=1) == 1).all():
        # Same partition up to relabeling, single-community pairs included.
        return 1.0

    denominator = (_entropy_term(table.row_sums, table.total)
                   + _entropy_term(table.col_sums, table.total))
    a, b = np.nonzero(table.counts)
    n_ab = table.counts[a, b].astype(np.float64)
    ratio = n_ab * table.total / (
        table.row_sums[a].astype(np.float64) * table.col_sums[b].astype(np.float64))
    numerator = -2.0 * float(np.sum(n_ab * np.log(ratio)))
    return max(0.0, numerator / denominator)
