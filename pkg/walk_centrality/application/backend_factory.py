"""
Backend factory module for the walk_centrality application.

This module provides a factory for creating the walk-matrix backend that matches
the configured method: the streaming passes, the three line-graph solvers or
the brute-force enumeration.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional
from walk_centrality.application import constants as const
from walk_centrality.application import line_graph, oracle, stream_walks, walk_algebra
from walk_centrality.application.config import RunConfig
from walk_centrality.application.errors import ConfigurationError
from walk_centrality.application.stream_walks import WalkWeightMatrix
from walk_centrality.application.walk_algebra import ConvergenceReport
from walk_centrality.application.weight_functions import WeightConfig

logger = logging.getLogger(__name__)

BOTH_DIRECTIONS = (const.INCOMING, const.OUTGOING)


@dataclass
class WalkMatrices:
    incoming: Optional[WalkWeightMatrix] = None
    outgoing: Optional[WalkWeightMatrix] = None
    convergence: List[ConvergenceReport] = field(default_factory=list)
    dlg_nodes: Optional[int] = None
    dlg_arcs: Optional[int] = None

    def inner_iterations(self):
        return {matrix.direction: matrix.inner_iterations
                for matrix in (self.incoming, self.outgoing) if matrix is not None}


class StreamBackend:
    name = const.STREAM

    def __init__(self, cfg: RunConfig):
        self.threads = cfg.threads

    def compute(self, graph, weights: WeightConfig, directions=BOTH_DIRECTIONS) -> WalkMatrices:
        if set(directions) == set(BOTH_DIRECTIONS):
            incoming, outgoing = stream_walks.compute_walk_matrices(graph, weights, self.threads)
            return WalkMatrices(incoming, outgoing)
        matrices = WalkMatrices()
        if const.INCOMING in directions:
            matrices.incoming = stream_walks.compute_incoming(graph, weights.phi_in)
        if const.OUTGOING in directions:
            matrices.outgoing = stream_walks.compute_outgoing(graph, weights.phi_out)
        return matrices


class LineGraphBackend:
    """
    Expands the line graph once and counts walks with the exact, approx or dag solver.
    """

    def __init__(self, method, cfg: RunConfig):
        self.name = method
        self.cfg = cfg

    def _counts(self, dlg, direction):
        if self.name == const.EXACT:
            return walk_algebra.exact_counts(dlg, direction, dense_cap=self.cfg.dense_cap), None
        if self.name == const.APPROX:
            return walk_algebra.approx_counts(dlg, direction, self.cfg.epsilon,
                                              window=self.cfg.divergence_window,
                                              max_iterations=self.cfg.max_iterations,
                                              max_length=self.cfg.max_length)
        return walk_algebra.dag_counts(dlg, direction), None

    def _project(self, dlg, direction):
        counts, report = self._counts(dlg, direction)
        return walk_algebra.project(counts, dlg, direction), report

    def compute(self, graph, weights: WeightConfig, directions=BOTH_DIRECTIONS) -> WalkMatrices:
        dlg_out = line_graph.expand(graph, weights.phi_out)
        dlg_in = dlg_out if weights.phi_in == weights.phi_out else dlg_out.reweighted(weights.phi_in)
        graphs = {const.INCOMING: dlg_in, const.OUTGOING: dlg_out}

        if self.cfg.threads > 1 and len(directions) > 1:
            with ThreadPoolExecutor(max_workers=len(directions)) as executor:
                futures = {direction: executor.submit(self._project, graphs[direction], direction)
                           for direction in directions}
                projected = {direction: future.result() for direction, future in futures.items()}
        else:
            projected = {direction: self._project(graphs[direction], direction) for direction in directions}

        matrices = WalkMatrices(dlg_nodes=dlg_out.node_count, dlg_arcs=dlg_out.arc_count)
        for direction in BOTH_DIRECTIONS:
            if direction not in projected:
                continue
            matrix, report = projected[direction]
            setattr(matrices, direction, matrix)
            if report is not None:
                matrices.convergence.append(report)
        return matrices


class OracleBackend:
    name = const.ORACLE

    def __init__(self, cfg: RunConfig):
        self.cfg = cfg

    def compute(self, graph, weights: WeightConfig, directions=BOTH_DIRECTIONS) -> WalkMatrices:
        enumeration = oracle.enumerate_walks(graph, self.cfg.max_length, self.cfg.walk_cap)
        matrices = WalkMatrices()
        if const.INCOMING in directions:
            matrices.incoming = enumeration.to_matrix(weights.phi_in, const.INCOMING)
        if const.OUTGOING in directions:
            matrices.outgoing = enumeration.to_matrix(weights.phi_out, const.OUTGOING)
        return matrices


def get_walk_backend(method, cfg: RunConfig):
    """
    Get the walk-matrix backend for a resolved method name.
    """
    if method == const.STREAM:
        logger.info("Using the streaming backend")
        return StreamBackend(cfg)
    if method in (const.EXACT, const.APPROX, const.DAG):
        logger.info(f"Using the {method} line-graph backend")
        return LineGraphBackend(method, cfg)
    if method == const.ORACLE:
        logger.info("Using the brute-force walk enumeration")
        return OracleBackend(cfg)
    raise ConfigurationError(f"Unknown method: {method}")
