import argparse
import dataclasses
import os
from dataclasses import dataclass
from typing import Dict, Optional

from hyperrcd.constants import (
    DEFAULT_ALPHA, DEFAULT_BUDGET, DEFAULT_ETA, DEFAULT_ITERATIONS, DEFAULT_REPEATS,
    DEFAULT_SEED, DEFAULT_SIZE_RANGE, SUPERVISED, VALID_FORMATS, VALID_MODES,
    VALID_SERIES)

GENERATOR_KEYS = ('n', 'q', 'avg_degree', 'total_cardinality', 'p_intra',
                  'degree_exponent', 'size_range')


class ArgumentParser(argparse.ArgumentParser):
    """Reports usage errors as a single `error: ArgumentError: ...` line."""

    def error(self, message):
        self.exit(2, f'error: ArgumentError: {" ".join(message.split())}\n')


def _parent():
    return ArgumentParser(add_help=False)


def _common_parser():
    parser = _parent()
    parser.add_argument(
        '--format', type=str, default=None, choices=VALID_FORMATS,
        help='Input format. Inferred from the extension when omitted '
             '(.hg text, .json, .hyperedges list).')
    parser.add_argument(
        '--threads', type=int, default=1,
        help='Worker threads for the curvature batch and the cutoff sweep '
             '(-1 uses every core).')
    parser.add_argument(
        '--quiet', action='store_true', default=False,
        help='Hide progress bars.')
    parser.add_argument(
        '--verbosity', type=int, default=0,
        help='absl logging verbosity (-1 warnings only, 1 debug).')
    return parser


def _flow_parser():
    parser = _parent()
    parser.add_argument(
        '--alpha', type=float, default=DEFAULT_ALPHA,
        help='Laziness of the random-walk measures, in [0, 1].')
    parser.add_argument(
        '--eta', type=float, default=DEFAULT_ETA,
        help='Step size of the discrete flow.')
    parser.add_argument(
        '--iterations', type=int, default=DEFAULT_ITERATIONS,
        help='Number of flow iterations K.')
    parser.add_argument(
        '--floor', type=float, default=None,
        help='Lower clamp for evolved weights. Default 1e-6 times the smallest '
             'initial weight.')
    return parser


def _detect_parser():
    parser = _parent()
    parser.add_argument(
        '--labels', type=str, default=None,
        help='Ground-truth labels file, one label per vertex. Required for the '
             'supervised sweep.')
    parser.add_argument(
        '--mode', type=str, default=SUPERVISED, choices=VALID_MODES,
        help='Cutoff selection: best NMI against --labels, or the largest relative '
             'weight gap.')
    parser.add_argument(
        '--sweep-every-iteration', dest='sweep_every_iteration', action='store_true',
        default=False,
        help='Sweep the weights of every flow iterate and keep the best.')
    return parser


def _generator_parser():
    parser = _parent()
    parser.add_argument(
        '--series', type=str, default=None, choices=VALID_SERIES,
        help='Synthetic series whose grid point --index to use.')
    parser.add_argument(
        '--index', type=int, default=0,
        help='Grid point of --series.')
    parser.add_argument(
        '--n', type=int, default=100, help='Number of vertices.')
    parser.add_argument(
        '--q', type=int, default=2, help='Number of planted communities.')
    parser.add_argument(
        '--avg-degree', dest='avg_degree', type=float, default=10.0,
        help='Target average vertex degree.')
    parser.add_argument(
        '--total-cardinality', dest='total_cardinality', type=int, default=None,
        help='Target sum of hyperedge sizes; overrides --avg-degree.')
    parser.add_argument(
        '--p-intra', dest='p_intra', type=float, default=0.9,
        help='Probability that a hyperedge stays inside one community.')
    parser.add_argument(
        '--degree-exponent', dest='degree_exponent', type=float, default=0.0,
        help='Pareto exponent of the vertex propensities; 0 is uniform.')
    parser.add_argument(
        '--size-range', dest='size_range', type=int, nargs=2,
        default=list(DEFAULT_SIZE_RANGE), metavar=('MIN', 'MAX'),
        help='Hyperedge size bounds.')
    parser.add_argument(
        '--seed', type=int, default=DEFAULT_SEED,
        help='Generator seed.')
    return parser


def build_parser():
    """Build parser."""
    formatter = argparse.ArgumentDefaultsHelpFormatter
    parser = ArgumentParser(
        prog='hyperrcd', formatter_class=formatter,
        description='Ricci-flow community detection on hypergraphs.')
    commands = parser.add_subparsers(dest='command', required=True, metavar='command')

    common = _common_parser()
    flow = _flow_parser()
    detect = _detect_parser()
    generator = _generator_parser()

    def add(name, help, parents):
        return commands.add_parser(
            name, help=help, parents=parents, formatter_class=formatter)

    ###########################################################################
    # #### Inspection #########################################################
    ###########################################################################
    sub = add('validate', 'Check that a hypergraph file is a valid input.', [common])
    sub.add_argument('input', help='Hypergraph file.')

    sub = add('measure', 'Print the lazy random-walk measure of one vertex as JSON.',
              [common])
    sub.add_argument('input', help='Hypergraph file.')
    sub.add_argument('--vertex', type=int, required=True, help='Owner vertex.')
    sub.add_argument('--alpha', type=float, default=DEFAULT_ALPHA, help='Laziness.')

    sub = add('curvature', 'Curvature of every hyperedge as CSV.', [common])
    sub.add_argument('input', help='Hypergraph file.')
    sub.add_argument('--alpha', type=float, default=DEFAULT_ALPHA, help='Laziness.')
    sub.add_argument('--out', type=str, default=None, help='CSV file; stdout if omitted.')

    sub = add('shape', 'Compare a dataset file with its published shape.', [common])
    sub.add_argument('input', help='Hypergraph file.')
    sub.add_argument('--dataset', type=str, default='zoo', help='Reference dataset name.')

    ###########################################################################
    # #### Flow and detection #################################################
    ###########################################################################
    sub = add('flow', 'Run the discrete Ricci flow; per-iteration CSV.', [common, flow])
    sub.add_argument('input', help='Hypergraph file.')
    sub.add_argument('--out', type=str, default=None, help='CSV file; stdout if omitted.')

    sub = add('detect', 'Flow, then sweep cutoffs for communities.',
              [common, flow, detect])
    sub.add_argument('input', help='Hypergraph file.')
    sub.add_argument(
        '--out', type=str, default='detect',
        help='Output prefix: PREFIX.labels and PREFIX.sweep.csv.')

    sub = add('eval', 'NMI between two label files.', [common])
    sub.add_argument('--truth', type=str, required=True, help='Reference labels.')
    sub.add_argument('--pred', type=str, required=True, help='Predicted labels.')

    ###########################################################################
    # #### Data ###############################################################
    ###########################################################################
    sub = add('generate', 'Sample a planted-partition hypergraph.', [common, generator])
    sub.add_argument(
        '--out', type=str, default='synthetic',
        help='Output prefix: PREFIX.hg and PREFIX.labels.')
    sub.add_argument(
        '--list', dest='list_series', action='store_true', default=False,
        help='Print the parameter grid of --series as CSV and exit.')

    sub = add('expand', 'Export the clique expansion as DOT and CSV.', [common])
    sub.add_argument('input', help='Hypergraph file.')
    sub.add_argument(
        '--out', type=str, default='expansion',
        help='Output prefix: PREFIX.dot and PREFIX.csv.')

    ###########################################################################
    # #### Pipeline ###########################################################
    ###########################################################################
    sub = add('run', 'Full pipeline: ingest or generate, flow, sweep, report.',
              [common, flow, detect, generator])
    sub.add_argument(
        'input', nargs='?', default=None,
        help='Hypergraph file. Without it, a hypergraph is generated per seed.')
    sub.add_argument(
        '--repeats', type=int, default=DEFAULT_REPEATS,
        help='Number of seeds, starting at --seed.')
    sub.add_argument(
        '--budget', type=int, default=DEFAULT_BUDGET,
        help='Refuse inputs whose number of member pairs exceeds this.')
    sub.add_argument(
        '--out', type=str, default='out', help='Results directory.')
    sub.add_argument(
        '--run-id', dest='run_id', type=str, default=None,
        help='Subdirectory of --out. Derived from the input and seed if omitted.')

    return parser


@dataclass(frozen=True)
class RunConfig:
    command: str = 'run'
    input: Optional[str] = None
    format: Optional[str] = None
    labels: Optional[str] = None
    series: Optional[str] = None
    index: int = 0
    generator: Dict = dataclasses.field(default_factory=dict)
    alpha: float = DEFAULT_ALPHA
    eta: float = DEFAULT_ETA
    iterations: int = DEFAULT_ITERATIONS
    floor: Optional[float] = None
    seed: int = DEFAULT_SEED
    repeats: int = DEFAULT_REPEATS
    mode: str = SUPERVISED
    sweep_every_iteration: bool = False
    threads: int = 1
    budget: int = DEFAULT_BUDGET
    out: str = 'out'
    run_id: Optional[str] = None
    quiet: bool = False

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> 'RunConfig':
        values = vars(args)
        generator = {k: values[k] for k in GENERATOR_KEYS if k in values}
        if 'size_range' in generator:
            generator['size_range'] = tuple(generator['size_range'])
        fields = {f.name for f in dataclasses.fields(cls)} - {'generator'}
        kwargs = {k: v for k, v in values.items() if k in fields and v is not None}
        return cls(generator=generator, **kwargs)

    @property
    def resolved_run_id(self) -> str:
        if self.run_id:
            return self.run_id
        if self.input:
            stem = os.path.splitext(os.path.basename(self.input))[0]
        elif self.series:
            stem = f'{self.series}-{self.index}'
        else:
            stem = 'planted'
        return f'{stem}-{self.mode}-s{self.seed}'

    @property
    def run_dir(self) -> str:
        return os.path.join(self.out, self.resolved_run_id)

    def to_dict(self) -> Dict:
        config = dataclasses.asdict(self)
        if 'size_range' in config['generator']:
            config['generator']['size_range'] = list(config['generator']['size_range'])
        config['run_id'] = self.resolved_run_id
        return config
