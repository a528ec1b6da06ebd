"""
Temporal graph module for the walk_centrality application.

This module provides the temporal graph data model and the edge-list ingestion:
label interning, undirected expansion, interval restriction and the chronological
edge stream every backend consumes.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Optional, Sequence, Tuple
from pydantic import BaseModel
from walk_centrality.application import constants as const
from walk_centrality.application.errors import ConfigurationError, GraphParseError, InputError

logger = logging.getLogger(__name__)


class TemporalEdge(NamedTuple):
    src: int
    dst: int
    t: int


class GraphStats(BaseModel):
    n: int
    m: int
    time_support: int
    tau_in_max: int
    tau_out_max: int


@dataclass(frozen=True)
class TemporalGraph:
    """
    Directed temporal graph with dense node indices and a global transition time.

    Edges are sorted by time, stable with respect to input order.
    Instances are immutable and can be shared between threads.
    """
    labels: Tuple[str, ...]
    edges: Tuple[TemporalEdge, ...]
    delta: int
    self_loops_dropped: int = 0

    @property
    def n(self):
        return len(self.labels)

    @property
    def m(self):
        return len(self.edges)

    @cached_property
    def label_index(self):
        return {label: i for i, label in enumerate(self.labels)}

    def index(self, label):
        return self.label_index[label]

    def arrival(self, edge):
        return edge.t + self.delta

    @cached_property
    def out_edges(self):
        """Edge indices leaving each node, in chronological order."""
        buckets = [[] for _ in range(self.n)]
        for i, edge in enumerate(self.edges):
            buckets[edge.src].append(i)
        return tuple(buckets)

    @cached_property
    def in_edges(self):
        """Edge indices entering each node, in chronological order."""
        buckets = [[] for _ in range(self.n)]
        for i, edge in enumerate(self.edges):
            buckets[edge.dst].append(i)
        return tuple(buckets)


def _check_options(delta, interval):
    if isinstance(delta, bool) or not isinstance(delta, int) or delta < 0:
        raise ConfigurationError(f"delta must be a non-negative integer, got {delta!r}")
    if interval is not None:
        start, end = interval
        if start < 0 or end < 0:
            raise ConfigurationError(f"interval bounds must be non-negative, got [{start}, {end}]")
        if start > end:
            raise ConfigurationError(f"interval start {start} is after interval end {end}")


def from_edge_list(triples: Iterable[Tuple[str, str, int]], delta: int = 1, undirected: bool = False,
                   interval: Optional[Sequence[int]] = None) -> TemporalGraph:
    """
    Build a temporal graph from (source label, target label, time) triples.

    Self-loops are dropped and counted. Labels are interned in order of first
    appearance among the retained edges.
    """
    _check_options(delta, interval)
    directed = []
    self_loops = 0
    for src, dst, t in triples:
        if src == dst:
            self_loops += 1
            continue
        directed.append((src, dst, t))
        if undirected:
            directed.append((dst, src, t))

    if interval is not None:
        start, end = interval
        directed = [(src, dst, t) for src, dst, t in directed if start <= t and t + delta <= end]

    label_index = {}
    edges = []
    for src, dst, t in directed:
        u = label_index.setdefault(src, len(label_index))
        v = label_index.setdefault(dst, len(label_index))
        edges.append(TemporalEdge(u, v, t))
    edges.sort(key=lambda edge: edge.t)

    if self_loops:
        logger.warning(f"Dropped {self_loops} self-loop edges")
    return TemporalGraph(labels=tuple(label_index), edges=tuple(edges), delta=delta,
                         self_loops_dropped=self_loops)


def _parse_timestamp(token, line_number, delta):
    try:
        t = int(token)
    except ValueError:
        raise GraphParseError(line_number, f"timestamp {token!r} is not an integer")
    if t < 0:
        raise GraphParseError(line_number, f"timestamp {t} is negative")
    if t > const.MAX_TIMESTAMP - delta:
        raise GraphParseError(line_number, f"arrival time of timestamp {t} overflows 64 bits")
    return t


def parse_lines(source: Iterable[str], delta: int = 1):
    """
    Yield (source label, target label, time) triples from edge-list lines.

    Blank lines and lines starting with '#' are skipped.
    """
    for line_number, line in enumerate(source, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith(const.COMMENT_PREFIX):
            continue
        tokens = stripped.split()
        if len(tokens) != 3:
            raise GraphParseError(line_number, f"expected 'src dst t', got {stripped!r}")
        yield tokens[0], tokens[1], _parse_timestamp(tokens[2], line_number, delta)


def ingest(source: Iterable[str], undirected: bool = False, delta: int = 1,
           interval: Optional[Sequence[int]] = None) -> TemporalGraph:
    _check_options(delta, interval)
    graph = from_edge_list(parse_lines(source, delta), delta=delta, undirected=undirected,
                           interval=interval)
    logger.info(f"Ingested temporal graph with {graph.n} nodes and {graph.m} edges")
    return graph


def load_graph(path, undirected: bool = False, delta: int = 1,
               interval: Optional[Sequence[int]] = None) -> TemporalGraph:
    try:
        with open(path, "r", encoding="utf-8") as file:
            return ingest(file, undirected=undirected, delta=delta, interval=interval)
    except OSError as e:
        raise InputError(f"Cannot read edge list {path}: {e}")
    except UnicodeDecodeError as e:
        raise InputError(f"Edge list {path} is not valid UTF-8: {e}")


def stats(graph: TemporalGraph) -> GraphStats:
    arrivals = [set() for _ in range(graph.n)]
    starts = [set() for _ in range(graph.n)]
    support = set()
    for edge in graph.edges:
        arrival = edge.t + graph.delta
        arrivals[edge.dst].add(arrival)
        starts[edge.src].add(edge.t)
        support.add(edge.t)
        support.add(arrival)
    return GraphStats(
        n=graph.n,
        m=graph.m,
        time_support=len(support),
        tau_in_max=max((len(times) for times in arrivals), default=0),
        tau_out_max=max((len(times) for times in starts), default=0),
    )


def line_graph_arc_bound(graph: TemporalGraph) -> int:
    """Upper bound sum over nodes of in-degree times out-degree."""
    return sum(len(incoming) * len(outgoing) for incoming, outgoing in zip(graph.in_edges, graph.out_edges))
