"""Ricci-flow community detection on weighted hypergraphs."""

from hyperrcd.curvature import CurvatureReport, all_curvatures, hyperedge_curvature
from hyperrcd.detection import (
    Partition, SweepResult, components, cut_above, sweep_supervised, sweep_unsupervised)
from hyperrcd.flow import FlowState, run_flow
from hyperrcd.hypergraph import (
    Hypergraph, clique_expansion, hyperedge_length, sssp, validate)
from hyperrcd.measure import ProbabilityMeasure, build_measure
from hyperrcd.metrics import nmi
from hyperrcd.synthgen import GenParams, generate, series
from hyperrcd.transport import dual_certificate, wasserstein1
