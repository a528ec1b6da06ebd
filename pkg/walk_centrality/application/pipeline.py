"""
Pipeline module for the walk_centrality application.

This module runs the CLI commands end to end: it loads the temporal graph,
selects the walk-matrix backend, combines the matrices into centrality scores
and writes rankings, correlation matrices, DOT files and JSON reports.
"""

import contextlib
import logging
import sys
import time
from typing import Dict, List, Optional
from pydantic import BaseModel
from walk_centrality.application import constants as const
from walk_centrality.application import analysis, centrality, line_graph, oracle, temporal_graph
from walk_centrality.application.backend_factory import get_walk_backend
from walk_centrality.application.config import RunConfig
from walk_centrality.application.errors import ConfigurationError, InputError
from walk_centrality.application.temporal_graph import GraphStats
from walk_centrality.application.walk_algebra import ConvergenceReport

logger = logging.getLogger(__name__)


class PhaseTimer:
    def __init__(self):
        self.timings: Dict[str, float] = {}

    @contextlib.contextmanager
    def phase(self, name):
        start = time.perf_counter()
        try:
            yield
        finally:
            elapsed = time.perf_counter() - start
            self.timings[name] = self.timings.get(name, 0.0) + elapsed
            logger.debug(f"Phase {name} took {elapsed:.3f}s")


class GraphReport(GraphStats):
    line_graph_arc_bound: int
    self_loops_dropped: int


class RunSummary(BaseModel):
    command: str
    method: Optional[str] = None
    mode: str
    delta: int
    phi_in: str
    phi_out: str
    phi_m: str
    graph: GraphReport
    timings: Dict[str, float]
    convergence: List[ConvergenceReport] = []
    inner_iterations: Dict[str, int] = {}
    line_graph_nodes: Optional[int] = None
    line_graph_arcs: Optional[int] = None
    combine_work: int = 0


def resolve_method(method, delta):
    """'auto' picks the streaming passes for strict walks and the fixed-point iteration otherwise."""
    if method != const.AUTO:
        return method
    resolved = const.STREAM if delta > 0 else const.APPROX
    logger.info(f"Method auto resolved to {resolved} for delta = {delta}")
    return resolved


def graph_report(graph) -> GraphReport:
    return GraphReport(**temporal_graph.stats(graph).model_dump(),
                       line_graph_arc_bound=temporal_graph.line_graph_arc_bound(graph),
                       self_loops_dropped=graph.self_loops_dropped)


def compute_centrality(graph, cfg: RunConfig, timer: Optional[PhaseTimer] = None):
    """
    Centrality of every node of the graph under cfg.

    Returns the result, the resolved method (None for degree modes) and the walk
    matrices (None when they were not built).
    """
    timer = timer or PhaseTimer()
    if cfg.mode in (const.DEGREE_IN, const.DEGREE_OUT):
        direction = const.INCOMING if cfg.mode == const.DEGREE_IN else const.OUTGOING
        with timer.phase("combine"):
            return centrality.degree_mode(graph, direction), None, None

    method = resolve_method(cfg.method, graph.delta)
    if method == const.STREAM and graph.delta == 0:
        raise ConfigurationError("The streaming backend requires delta > 0; use exact or approx")
    weights = cfg.weight_config()

    if cfg.mode == const.TWC and method == const.ORACLE:
        with timer.phase("enumerate"):
            return oracle.oracle_centrality(graph, weights, cfg.max_length, cfg.walk_cap), method, None

    backend = get_walk_backend(method, cfg)
    directions = (const.OUTGOING,) if cfg.mode == const.KATZ else (const.INCOMING, const.OUTGOING)
    with timer.phase("walks"):
        matrices = backend.compute(graph, weights, directions)

    with timer.phase("combine"):
        if cfg.mode == const.KATZ:
            result = centrality.katz_mode(matrices.outgoing, graph.labels)
        elif weights.phi_m.kind == const.ONE:
            result = centrality.combine_fast(matrices.incoming, matrices.outgoing, graph.labels, cfg.threads)
        else:
            result = centrality.combine_general(matrices.incoming, matrices.outgoing, weights.phi_m,
                                                graph.labels, cfg.threads)
    return result, method, matrices


@contextlib.contextmanager
def open_output(path):
    if path is None:
        yield sys.stdout
        return
    try:
        with open(path, "w", encoding="utf-8", newline="") as file:
            yield file
    except OSError as e:
        raise InputError(f"Cannot write {path}: {e}")


def _single_input(cfg: RunConfig):
    if len(cfg.inputs) != 1:
        raise ConfigurationError(f"{cfg.command} needs exactly one input edge list, got {len(cfg.inputs)}")
    return cfg.inputs[0]


def load_input_graph(cfg: RunConfig):
    return temporal_graph.load_graph(_single_input(cfg), undirected=cfg.undirected, delta=cfg.delta,
                                     interval=cfg.interval)


def run_compute(cfg: RunConfig) -> int:
    timer = PhaseTimer()
    with timer.phase("ingest"):
        graph = load_input_graph(cfg)
    result, method, matrices = compute_centrality(graph, cfg, timer)
    with timer.phase("write"):
        with open_output(cfg.output) as stream:
            centrality.write_tsv(result, stream)

    weights = cfg.weight_config()
    summary = RunSummary(command=cfg.command, method=method, mode=cfg.mode, delta=graph.delta,
                         phi_in=str(weights.phi_in), phi_out=str(weights.phi_out), phi_m=str(weights.phi_m),
                         graph=graph_report(graph), timings=timer.timings, combine_work=result.work)
    if matrices is not None:
        summary.convergence = matrices.convergence
        summary.inner_iterations = matrices.inner_iterations()
        summary.line_graph_nodes = matrices.dlg_nodes
        summary.line_graph_arcs = matrices.dlg_arcs
    write_summary(summary, cfg.output)
    logger.info(f"Ranked {result.n} nodes with {method or cfg.mode} in {sum(timer.timings.values()):.3f}s")
    return 0


def write_summary(summary: RunSummary, output):
    text = summary.model_dump_json(indent=2)
    if output is None:
        logger.info(f"Run summary: {text}")
        return
    with open_output(output + const.SUMMARY_SUFFIX) as stream:
        stream.write(text + "\n")


def run_compare(cfg: RunConfig) -> int:
    if not cfg.inputs:
        raise ConfigurationError("compare needs at least one result file")
    results = [centrality.read_tsv(path) for path in cfg.inputs]
    matrix = analysis.correlation_matrix(results, cfg.top)
    with open_output(cfg.output) as stream:
        analysis.write_correlation_csv(cfg.inputs, matrix, stream)
    return 0


def run_error(cfg: RunConfig) -> int:
    if len(cfg.inputs) != 2:
        raise ConfigurationError("error needs an exact and an approximate result file")
    exact, approx = (centrality.read_tsv(path) for path in cfg.inputs)
    report = analysis.mean_relative_error(exact, approx)
    with open_output(cfg.output) as stream:
        stream.write(report.model_dump_json(indent=2) + "\n")
    return 0


def run_dlg_export(cfg: RunConfig) -> int:
    graph = load_input_graph(cfg)
    dlg = line_graph.expand(graph, cfg.weight_config().phi_out)
    with open_output(cfg.output) as stream:
        stream.write(line_graph.to_dot(dlg))
    return 0


def run_stats(cfg: RunConfig) -> int:
    graph = load_input_graph(cfg)
    with open_output(cfg.output) as stream:
        stream.write(graph_report(graph).model_dump_json(indent=2) + "\n")
    return 0


COMMANDS = {
    const.COMPUTE: run_compute,
    const.COMPARE: run_compare,
    const.ERROR: run_error,
    const.DLG_EXPORT: run_dlg_export,
    const.STATS: run_stats,
}


def run(cfg: RunConfig) -> int:
    try:
        command = COMMANDS[cfg.command]
    except KeyError:
        raise ConfigurationError(f"Unknown command: {cfg.command}")
    return command(cfg)
