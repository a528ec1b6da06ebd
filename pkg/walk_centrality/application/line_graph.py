"""
Directed line graph module for the walk_centrality application.

Every temporal edge becomes a node of a static weighted digraph, and an arc joins
two of them whenever the second edge can follow the first in a temporal walk.
The arc (n^t_uv -> n^s_vw) carries the weight phi(t + delta, s), so static walk
weights equal temporal walk weights.
"""

import collections
import logging
from dataclasses import dataclass
from typing import Dict, List, Tuple
import numpy as np
from scipy import sparse
from walk_centrality.application.temporal_graph import TemporalGraph

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class DirectedLineGraph:
    """
    Compressed successor lists: the successors of DLG node x are
    indices[indptr[x]:indptr[x + 1]] with matching weights.
    """
    graph: TemporalGraph
    indptr: np.ndarray
    indices: np.ndarray
    weights: np.ndarray
    x_out: Dict[Tuple[int, int], List[int]]
    x_in: Dict[Tuple[int, int], List[int]]

    @property
    def node_count(self):
        return self.graph.m

    @property
    def arc_count(self):
        return len(self.indices)

    def successors(self, x):
        start, end = self.indptr[x], self.indptr[x + 1]
        return zip(self.indices[start:end].tolist(), self.weights[start:end].tolist())

    def arcs(self):
        for x in range(self.node_count):
            for y, weight in self.successors(x):
                yield x, y, weight

    def adjacency(self):
        return sparse.csr_matrix((self.weights, self.indices, self.indptr),
                                 shape=(self.node_count, self.node_count))

    def label(self, x):
        edge = self.graph.edges[x]
        u, v = self.graph.labels[edge.src], self.graph.labels[edge.dst]
        separator = "" if len(u) == 1 and len(v) == 1 else ","
        return f"n^{edge.t}_{{{u}{separator}{v}}}"

    def reweighted(self, phi):
        """Same arc structure with weights taken from another weight function."""
        return DirectedLineGraph(self.graph, self.indptr, self.indices,
                                 _arc_weights(self.graph, self.indptr, self.indices, phi),
                                 self.x_out, self.x_in)


def _arc_weights(graph, indptr, indices, phi):
    edges, delta = graph.edges, graph.delta
    sources = np.repeat(np.arange(len(indptr) - 1), np.diff(indptr))
    return np.array([phi(edges[x].t + delta, edges[y].t) for x, y in zip(sources.tolist(), indices.tolist())],
                    dtype=np.float64)


def expand(graph: TemporalGraph, phi) -> DirectedLineGraph:
    """
    Build DL(G) with arcs weighted by phi.

    Per middle node, incoming edges sorted by arrival time are merged against
    outgoing edges sorted by start time; each incoming edge is followed by the
    suffix of outgoing edges starting no earlier than its arrival.
    """
    edges, delta = graph.edges, graph.delta
    successors = [[] for _ in range(graph.m)]
    for node in range(graph.n):
        # Chronological edge order makes both lists already sorted.
        incoming = graph.in_edges[node]
        outgoing = graph.out_edges[node]
        starts = [edges[y].t for y in outgoing]
        pointer = 0
        for x in incoming:
            arrival = edges[x].t + delta
            while pointer < len(outgoing) and starts[pointer] < arrival:
                pointer += 1
            successors[x] = outgoing[pointer:]

    counts = np.fromiter((len(targets) for targets in successors), dtype=np.int64, count=graph.m)
    indptr = np.zeros(graph.m + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    indices = np.fromiter((y for targets in successors for y in targets), dtype=np.int64,
                          count=int(indptr[-1]))

    x_out = collections.defaultdict(list)
    x_in = collections.defaultdict(list)
    for x, edge in enumerate(edges):
        x_out[(edge.src, edge.t)].append(x)
        x_in[(edge.dst, edge.t + delta)].append(x)

    dlg = DirectedLineGraph(graph, indptr, indices, _arc_weights(graph, indptr, indices, phi),
                            dict(x_out), dict(x_in))
    logger.info(f"Expanded directed line graph with {dlg.node_count} nodes and {dlg.arc_count} arcs")
    return dlg


def kahn_order(indptr, indices, count):
    """
    Topological order of the CSR digraph by Kahn peeling, or None if it has a cycle.
    """
    in_degree = np.bincount(indices, minlength=count).tolist()
    queue = collections.deque(x for x in range(count) if in_degree[x] == 0)
    order = []
    while queue:
        x = queue.popleft()
        order.append(x)
        for y in indices[indptr[x]:indptr[x + 1]].tolist():
            in_degree[y] -= 1
            if in_degree[y] == 0:
                queue.append(y)
    if len(order) != count:
        return None
    return order


def topological_order(dlg: DirectedLineGraph):
    return kahn_order(dlg.indptr, dlg.indices, dlg.node_count)


def is_acyclic(dlg: DirectedLineGraph) -> bool:
    return topological_order(dlg) is not None


def _quote(text):
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(dlg: DirectedLineGraph) -> str:
    lines = ["digraph DL {"]
    for x in range(dlg.node_count):
        lines.append(f"    {x} [label={_quote(dlg.label(x))}];")
    for x, y, weight in dlg.arcs():
        lines.append(f"    {x} -> {y} [label=\"{weight:.6g}\"];")
    lines.append("}")
    return "\n".join(lines) + "\n"
