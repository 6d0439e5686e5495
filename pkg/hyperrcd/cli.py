"""Command-line entry point; one function per sub-command."""

import json
import sys
from typing import List, Optional

import networkx as nx
import pandas as pd
from absl import logging

from hyperrcd import data_provider
from hyperrcd.config import RunConfig, build_parser
from hyperrcd.curvature import all_curvatures
from hyperrcd.detection import Partition
from hyperrcd.exceptions import HyperRCDError
from hyperrcd.flow import run_flow, trajectory_frame
from hyperrcd.hypergraph import clique_expansion, validate
from hyperrcd.measure import build_measure
from hyperrcd.metrics import nmi
from hyperrcd.pipeline import detect, generator_params, run_pipeline
from hyperrcd.synthgen import generate, series


def _emit_csv(frame: pd.DataFrame, out: Optional[str]):
    if out is None:
        frame.to_csv(sys.stdout, index=False)
    else:
        frame.to_csv(out, index=False)
        logging.info('Wrote %d rows to %s.', len(frame), out)


def cmd_validate(args) -> int:
    g = data_provider.load(args.input, args.format)
    validate(g).raise_if_invalid()
    print(f'ok n={g.n} m={g.m} pairs={g.total_pairs}')
    return 0


def cmd_measure(args) -> int:
    g = data_provider.ingest(args.input, args.format)
    if not 0 <= args.vertex < g.n:
        raise HyperRCDError(f'Vertex {args.vertex} outside [0, {g.n}).')
    mu = build_measure(g, args.vertex, args.alpha)
    print(json.dumps({'owner': mu.owner, 'alpha': mu.alpha, 'support': mu.to_records()}))
    return 0


def cmd_curvature(args) -> int:
    g = data_provider.ingest(args.input, args.format)
    report = all_curvatures(g, args.alpha, args.threads, verbose=not args.quiet)
    logging.info('Curvature: %s', report.summary())
    per_vertex = report.vertex_curvature(g)
    logging.info('Vertex curvature: min %.4g, mean %.4g, max %.4g.',
                 per_vertex.min(), per_vertex.mean(), per_vertex.max())
    _emit_csv(report.to_frame(), args.out)
    return 0


def cmd_flow(args) -> int:
    g = data_provider.ingest(args.input, args.format)
    trajectory = run_flow(g, args.alpha, args.eta, args.iterations, args.floor,
                          args.threads, verbose=not args.quiet)
    _emit_csv(trajectory_frame(trajectory), args.out)
    return 0


def cmd_detect(args) -> int:
    config = RunConfig.from_args(args)
    g = data_provider.ingest(args.input, args.format)
    truth = None
    if args.labels is not None:
        truth = Partition(data_provider.load_labels(args.labels, g.n))
    trajectory = run_flow(g, config.alpha, config.eta, config.iterations, config.floor,
                          config.threads, verbose=not config.quiet)
    result = detect(g, trajectory, config, truth)
    data_provider.save_labels(result.partition, f'{args.out}.labels')
    result.to_frame().to_csv(f'{args.out}.sweep.csv', index=False)
    best = result.best_entry
    line = (f'cutoff={best.cutoff!r} iteration={result.iteration} '
            f'communities={best.partition.num_communities}')
    if best.nmi is not None:
        line += f' nmi={best.nmi:.6f}'
    print(line)
    return 0


def cmd_eval(args) -> int:
    truth = data_provider.load_labels(args.truth)
    pred = data_provider.load_labels(args.pred)
    print(f'{nmi(truth, pred):.6f}')
    return 0


def cmd_generate(args) -> int:
    config = RunConfig.from_args(args)
    if args.list_series:
        if config.series is None:
            raise HyperRCDError('--list needs --series.')
        frame = pd.DataFrame([p.to_dict() for p in series(config.series, seed=args.seed)])
        frame.insert(0, 'index', range(len(frame)))
        _emit_csv(frame, None)
        return 0
    params = generator_params(config, args.seed)
    g, truth = generate(params)
    data_provider.save_hg_text(g, f'{args.out}.hg')
    data_provider.save_labels(truth, f'{args.out}.labels')
    print(f'wrote {args.out}.hg ({g.n} vertices, {g.m} hyperedges) and {args.out}.labels')
    return 0


def cmd_expand(args) -> int:
    g = data_provider.ingest(args.input, args.format)
    graph = clique_expansion(g)
    nx.drawing.nx_pydot.write_dot(graph, f'{args.out}.dot')
    edges = nx.to_pandas_edgelist(graph, source='source', target='target')
    edges = edges.reindex(columns=['source', 'target', 'weight'])
    edges.to_csv(f'{args.out}.csv', index=False)
    print(f'wrote {args.out}.dot and {args.out}.csv ({graph.number_of_edges()} edges)')
    return 0


def cmd_run(args) -> int:
    config = RunConfig.from_args(args)
    report = run_pipeline(config)
    summary = {'run_dir': config.run_dir, 'seeds': report.seeds, 'scores': report.scores,
               'mean_nmi': report.mean_nmi, 'std_nmi': report.std_nmi}
    print(json.dumps(summary))
    return 0


def cmd_shape(args) -> int:
    fmt = data_provider.infer_format(args.input, args.format)
    if fmt == 'hyperedge-list':
        stats = data_provider.hyperedge_list_shape(args.input)
    else:
        stats = data_provider.shape(data_provider.load(args.input, fmt))
    print(json.dumps(stats))
    problems = data_provider.check_shape(args.dataset, stats)
    if problems:
        raise HyperRCDError(f'{args.dataset} shape mismatch: ' + '; '.join(problems))
    return 0


COMMAND_TO_FN = {
    'validate': cmd_validate,
    'measure': cmd_measure,
    'curvature': cmd_curvature,
    'flow': cmd_flow,
    'detect': cmd_detect,
    'eval': cmd_eval,
    'generate': cmd_generate,
    'expand': cmd_expand,
    'run': cmd_run,
    'shape': cmd_shape,
}


def _error(exc: Exception) -> str:
    message = ' '.join(str(exc).split())
    return f'error: {type(exc).__name__}: {message}'


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.set_verbosity(args.verbosity)
    try:
        return COMMAND_TO_FN[args.command](args)
    except HyperRCDError as e:
        print(_error(e), file=sys.stderr)
        return 2
    except Exception as e:  # pylint: disable=broad-except
        logging.debug('Unhandled error', exc_info=True)
        print(_error(e), file=sys.stderr)
        return 1


def entry_point():
    sys.exit(main())
