"""End-to-end runs: load or generate, flow, sweep, report.

A run writes `out/<run-id>/` with config.json, flow.csv, flow_summary.csv, sweep.csv,
partition.labels and report.json describing the first seed, plus per-seed scores in
the report. Wall-clock times go to timing.json so that report.json only depends on the
configuration.
"""

import dataclasses
import json
import os
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np
from absl import logging

from hyperrcd import data_provider
from hyperrcd.config import RunConfig
from hyperrcd.constants import RUN_FILES, SUPERVISED
from hyperrcd.detection import Partition, SweepResult, sweep, sweep_trajectory
from hyperrcd.exceptions import BudgetExceeded, HyperRCDError
from hyperrcd.flow import FlowState, run_flow, trajectory_frame
from hyperrcd.hypergraph import Hypergraph
from hyperrcd.synthgen import GenParams, generate, series
from hyperrcd.utils.loggers import CSVLogger, Logger, MultiLogger, NoOpLogger, TerminalLogger


@dataclass
class SeedResult:
    seed: int
    hypergraph: Hypergraph
    truth: Optional[Partition]
    trajectory: List[FlowState]
    sweep: SweepResult
    timing: Dict[str, float] = field(default_factory=dict)

    @property
    def score(self) -> float:
        return self.sweep.best_entry.score

    @property
    def nmi(self) -> Optional[float]:
        return self.sweep.best_entry.nmi


@dataclass
class RunReport:
    config: Dict
    seeds: List[int]
    scores: List[float]
    nmis: List[Optional[float]]
    best_cutoff: float
    best_iteration: int
    num_communities: int
    shape: Dict[str, float]
    iterations: List[Dict[str, float]]
    sweep: List[Dict[str, float]]
    vertex_curvature: List[float] = field(default_factory=list)
    timing: Dict[str, float] = field(default_factory=dict)

    @property
    def mean_nmi(self) -> Optional[float]:
        values = [v for v in self.nmis if v is not None]
        return float(np.mean(values)) if values else None

    @property
    def std_nmi(self) -> Optional[float]:
        values = [v for v in self.nmis if v is not None]
        return float(np.std(values)) if values else None

    def to_dict(self, include_timing: bool = False) -> Dict:
        report = {
            'config': self.config,
            'seeds': self.seeds,
            'scores': self.scores,
            'nmi': self.nmis,
            'mean_nmi': self.mean_nmi,
            'std_nmi': self.std_nmi,
            'best_cutoff': self.best_cutoff,
            'best_iteration': self.best_iteration,
            'num_communities': self.num_communities,
            'shape': self.shape,
            'iterations': self.iterations,
            'sweep': self.sweep,
            'vertex_curvature': self.vertex_curvature,
        }
        if include_timing:
            report['timing'] = self.timing
        return report


@contextmanager
def _timed(timing: Dict[str, float], phase: str):
    start = time.perf_counter()
    yield
    timing[phase] = timing.get(phase, 0.0) + time.perf_counter() - start


def check_budget(g: Hypergraph, budget: int):
    """Refuses inputs whose member-pair count E exceeds `budget`."""
    pairs = g.total_pairs
    if pairs > budget:
        raise BudgetExceeded(
            f'E = {pairs} member pairs exceeds the budget of {budget}; curvature costs '
            f'O(E * D^3) per flow iteration (D the largest vertex degree, here '
            f'{int(g.degrees.max())}). Raise --budget to run anyway.')


def generator_params(config: RunConfig, seed: int) -> GenParams:
    if config.series is not None:
        grid = series(config.series, seed=seed)
        if not 0 <= config.index < len(grid):
            raise HyperRCDError(
                f'Series {config.series} has {len(grid)} points, got index {config.index}.')
        params = grid[config.index]
        if 'size_range' in config.generator:
            params = params.replace(size_range=tuple(config.generator['size_range']))
        return params
    return GenParams(**config.generator, seed=seed)


def load_input(config: RunConfig, seed: int) -> Tuple[Hypergraph, Optional[Partition]]:
    if config.input is None:
        return generate(generator_params(config, seed))
    g = data_provider.ingest(config.input, config.format)
    truth = None
    if config.labels is not None:
        truth = Partition(data_provider.load_labels(config.labels, g.n))
    return g, truth


def detect(g: Hypergraph, trajectory: List[FlowState], config: RunConfig,
           truth: Optional[Partition]) -> SweepResult:
    if config.mode == SUPERVISED and truth is None:
        raise HyperRCDError('Supervised detection needs ground-truth labels (--labels).')
    verbose = not config.quiet
    if config.sweep_every_iteration:
        return sweep_trajectory(g, trajectory, config.mode, truth, config.threads, verbose)
    result = sweep(g, trajectory[-1].weights, config.mode, truth, config.threads, verbose)
    return SweepResult(entries=result.entries, best=result.best, mode=result.mode,
                       iteration=trajectory[-1].iteration)


def run_seed(config: RunConfig, seed: int, logger: Optional[Logger] = None) -> SeedResult:
    timing = {}
    with _timed(timing, 'load'):
        g, truth = load_input(config, seed)
        check_budget(g, config.budget)
    with _timed(timing, 'flow'):
        trajectory = run_flow(g, config.alpha, config.eta, config.iterations,
                              config.floor, config.threads, logger or NoOpLogger(),
                              verbose=not config.quiet)
    with _timed(timing, 'sweep'):
        result = detect(g, trajectory, config, truth)
    return SeedResult(seed=seed, hypergraph=g, truth=truth, trajectory=trajectory,
                      sweep=result, timing=timing)


def _records(result: SweepResult) -> List[Dict]:
    return [{key: None if isinstance(value, float) and np.isnan(value) else value
             for key, value in row.items()}
            for row in result.to_frame().to_dict(orient='records')]


def _write_json(data, path: str):
    with open(path, 'w') as f:
        json.dump(data, f, indent=2, sort_keys=True)
        f.write('\n')


def run_pipeline(config: RunConfig) -> RunReport:
    """Runs every seed of `config` and writes the results directory.

    Returns:
        RunReport of the run.
    """
    if config.repeats < 1:
        raise HyperRCDError(f'Repeat count must be positive, got {config.repeats}.')
    run_dir = config.run_dir
    os.makedirs(run_dir, exist_ok=True)
    _write_json(config.to_dict(), os.path.join(run_dir, RUN_FILES['config']))

    results = []
    for seed in range(config.seed, config.seed + config.repeats):
        if seed == config.seed:
            loggers = [CSVLogger(os.path.join(run_dir, RUN_FILES['summary']))]
            if not config.quiet:
                loggers.append(TerminalLogger(label=f'seed {seed}'))
            logger = MultiLogger(*loggers)
        else:
            logger = NoOpLogger()
        if config.input is not None and results:
            # Ingested inputs do not depend on the seed.
            result = dataclasses.replace(results[0], seed=seed, timing={})
        else:
            result = run_seed(config, seed, logger)
        logger.close()
        logging.info('Seed %d: best score %.6f at cutoff %g, %d communities.',
                     seed, result.score, result.sweep.best_entry.cutoff,
                     result.sweep.partition.num_communities)
        results.append(result)

    first = results[0]
    timing = {}
    with _timed(timing, 'write'):
        trajectory_frame(first.trajectory).to_csv(
            os.path.join(run_dir, RUN_FILES['flow']), index=False)
        first.sweep.to_frame().to_csv(os.path.join(run_dir, RUN_FILES['sweep']), index=False)
        data_provider.save_labels(first.sweep.partition,
                                  os.path.join(run_dir, RUN_FILES['partition']))
    for result in results:
        for phase, seconds in result.timing.items():
            timing[phase] = timing.get(phase, 0.0) + seconds

    report = RunReport(
        config=config.to_dict(),
        seeds=[r.seed for r in results],
        scores=[r.score for r in results],
        nmis=[r.nmi for r in results],
        best_cutoff=first.sweep.best_entry.cutoff,
        best_iteration=first.sweep.iteration,
        num_communities=first.sweep.partition.num_communities,
        shape=data_provider.shape(first.hypergraph),
        iterations=[state.summary() for state in first.trajectory],
        sweep=_records(first.sweep),
        vertex_curvature=first.trajectory[-1].report.vertex_curvature(
            first.hypergraph).tolist(),
        timing=timing)
    _write_json(report.to_dict(), os.path.join(run_dir, RUN_FILES['report']))
    _write_json(timing, os.path.join(run_dir, RUN_FILES['timing']))
    if report.mean_nmi is not None:
        logging.info('NMI over %d seeds: mean %.6f, std %.6f.',
                     len(results), report.mean_nmi, report.std_nmi)
    return report
