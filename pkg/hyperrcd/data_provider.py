"""Reading and writing hypergraphs and label files.

Formats:
  hg-text         line 1 `n m`, then one line `w v1 v2 ... vs` per hyperedge.
  hg-json         {"n": n, "hyperedges": [{"w": w, "members": [...]}, ...]}.
  hyperedge-list  one hyperedge per line as space-separated vertex ids, weights 1.

Blank lines and lines starting with `#` or `%` are ignored in the text formats.
"""

import json
import os
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from absl import logging

from hyperrcd.constants import DATASET_TO_SHAPE, VALID_FORMATS
from hyperrcd.exceptions import HyperRCDError, LabelLengthMismatch, ParseError
from hyperrcd.hypergraph import Hypergraph, validate

_COMMENT = ('#', '%')


def _lines(path: str) -> List[Tuple[int, str]]:
    try:
        with open(path) as f:
            raw = f.read().splitlines()
    except OSError as e:
        raise ParseError(f'Cannot read file: {e.strerror}.', path=path) from e
    return [(i, line.strip()) for i, line in enumerate(raw, start=1)
            if line.strip() and not line.lstrip().startswith(_COMMENT)]


def _ints(tokens: Sequence[str], path: str, line: int) -> List[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f'Expected integers, got {" ".join(tokens)!r}.',
                         path=path, line=line) from None


def _check_range(members: Sequence[int], n: int, path: str, line: int):
    for v in members:
        if not 0 <= v < n:
            raise ParseError(f'Vertex id {v} outside [0, {n}).', path=path, line=line)


def load_hg_text(path: str) -> Hypergraph:
    lines = _lines(path)
    if not lines:
        raise ParseError('Empty file.', path=path)
    header_no, header = lines[0]
    tokens = header.split()
    if len(tokens) != 2:
        raise ParseError(f'Header must be `n m`, got {header!r}.', path=path, line=header_no)
    n, m = _ints(tokens, path, header_no)
    if n < 0 or m < 0:
        raise ParseError(f'Negative size in header {header!r}.', path=path, line=header_no)

    body = lines[1:]
    if len(body) != m:
        where = body[m][0] if len(body) > m else None
        raise ParseError(f'Header announces {m} hyperedges, found {len(body)}.',
                         path=path, line=where)
    hyperedges, weights = [], []
    for line_no, line in body:
        tokens = line.split()
        try:
            w = float(tokens[0])
        except ValueError:
            raise ParseError(f'Bad weight {tokens[0]!r}.', path=path, line=line_no) from None
        members = _ints(tokens[1:], path, line_no)
        _check_range(members, n, path, line_no)
        hyperedges.append(members)
        weights.append(w)
    return Hypergraph.from_hyperedges(n, hyperedges, weights)


def save_hg_text(g: Hypergraph, path: str):
    with open(path, 'w') as f:
        f.write(f'{g.n} {g.m}\n')
        for h, w in zip(g.hyperedges, g.weights):
            f.write(' '.join([repr(float(w))] + [str(v) for v in h]) + '\n')


def load_hg_json(path: str) -> Hypergraph:
    try:
        with open(path) as f:
            data = json.load(f)
    except OSError as e:
        raise ParseError(f'Cannot read file: {e.strerror}.', path=path) from e
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, path=path, line=e.lineno) from None
    try:
        n = int(data['n'])
        hyperedges = [[int(v) for v in h['members']] for h in data['hyperedges']]
        weights = [float(h.get('w', 1.0)) for h in data['hyperedges']]
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f'Malformed hypergraph document: {e!r}.', path=path) from None
    for l, h in enumerate(hyperedges):
        if any(not 0 <= v < n for v in h):
            raise ParseError(f'Hyperedge {l} has a vertex id outside [0, {n}).', path=path)
    return Hypergraph.from_hyperedges(n, hyperedges, weights)


def save_hg_json(g: Hypergraph, path: str):
    data = {
        'n': g.n,
        'hyperedges': [{'w': float(w), 'members': list(h)}
                       for h, w in zip(g.hyperedges, g.weights)],
    }
    with open(path, 'w') as f:
        json.dump(data, f, indent=1)


def read_hyperedge_lines(path: str) -> List[Tuple[int, List[int]]]:
    """(line number, members) for every hyperedge line, singletons included."""
    rows = []
    for line_no, line in _lines(path):
        members = _ints(line.split(), path, line_no)
        if min(members) < 0:
            raise ParseError(f'Negative vertex id in {line!r}.', path=path, line=line_no)
        rows.append((line_no, members))
    return rows


def load_hyperedge_list(path: str, n: Optional[int] = None) -> Hypergraph:
    rows = read_hyperedge_lines(path)
    if not rows:
        raise ParseError('No hyperedges.', path=path)
    if n is None:
        n = max(max(members) for _, members in rows) + 1
    hyperedges = []
    for line_no, members in rows:
        _check_range(members, n, path, line_no)
        if len(members) == 1:
            logging.warning('%s:%d: skipping single-vertex hyperedge %s.',
                            path, line_no, members)
            continue
        hyperedges.append(members)
    return Hypergraph.from_hyperedges(n, hyperedges)


def save_hyperedge_list(g: Hypergraph, path: str):
    with open(path, 'w') as f:
        for h in g.hyperedges:
            f.write(' '.join(str(v) for v in h) + '\n')


format_dict = {
    'hg-text': (load_hg_text, save_hg_text),
    'hg-json': (load_hg_json, save_hg_json),
    'hyperedge-list': (load_hyperedge_list, save_hyperedge_list),
}

_EXTENSIONS = {'.hg': 'hg-text', '.json': 'hg-json', '.hyperedges': 'hyperedge-list'}


def infer_format(path: str, fmt: Optional[str] = None) -> str:
    if fmt is not None:
        if fmt not in VALID_FORMATS:
            raise HyperRCDError(f'Unknown format {fmt!r}; expected one of {VALID_FORMATS}.')
        return fmt
    return _EXTENSIONS.get(os.path.splitext(path)[1], 'hg-text')


def load(path: str, fmt: Optional[str] = None) -> Hypergraph:
    """Parses without validating."""
    return format_dict[infer_format(path, fmt)][0](path)


def save(g: Hypergraph, path: str, fmt: Optional[str] = None):
    format_dict[infer_format(path, fmt)][1](g, path)


def ingest(path: str, fmt: Optional[str] = None) -> Hypergraph:
    """Parses and validates a hypergraph file.

    Raises:
        ParseError: malformed file, with its line number where one applies.
        DegenerateHyperedge, NonPositiveWeight, Disconnected: from `validate`.
    """
    g = load(path, fmt)
    validate(g).raise_if_invalid()
    logging.info('Loaded %s from %s.', g, path)
    return g


def load_labels(path: str, n: Optional[int] = None) -> np.ndarray:
    labels = []
    for line_no, line in _lines(path):
        tokens = line.split()
        if len(tokens) != 1:
            raise ParseError(f'Expected one label, got {line!r}.', path=path, line=line_no)
        labels.extend(_ints(tokens, path, line_no))
    if n is not None and len(labels) != n:
        raise LabelLengthMismatch(f'{path} has {len(labels)} labels for {n} vertices.')
    return np.array(labels, dtype=np.int64)


def save_labels(labels, path: str):
    labels = np.asarray(getattr(labels, 'labels', labels))
    with open(path, 'w') as f:
        f.write(''.join(f'{int(c)}\n' for c in labels))


def shape(g: Hypergraph) -> Dict[str, float]:
    return {
        'n': g.n,
        'm': g.m,
        'avg_size': float(g.sizes.mean()) if g.m else 0.0,
        'avg_degree': float(g.degrees.mean()) if g.n else 0.0,
    }


def hyperedge_list_shape(path: str) -> Dict[str, float]:
    """Shape of a hyperedge-list file as stored, singleton lines included."""
    rows = read_hyperedge_lines(path)
    sizes = np.array([len(members) for _, members in rows])
    n = max(max(members) for _, members in rows) + 1
    return {'n': n, 'm': len(rows), 'avg_size': float(sizes.mean()),
            'avg_degree': float(sizes.sum() / n)}


def check_shape(name: str, stats: Dict[str, float], atol: float = 0.05) -> List[str]:
    """Differences between `stats` and the published shape of dataset `name`."""
    if name not in DATASET_TO_SHAPE:
        raise HyperRCDError(f'No reference shape for dataset {name!r}.')
    expected = DATASET_TO_SHAPE[name]
    problems = []
    for key in ('n', 'm'):
        if stats[key] != expected[key]:
            problems.append(f'{key}: expected {expected[key]}, got {stats[key]}')
    for key in ('avg_size', 'avg_degree'):
        if abs(stats[key] - expected[key]) > atol * expected[key]:
            problems.append(f'{key}: expected {expected[key]}, got {stats[key]:.2f}')
    return problems
