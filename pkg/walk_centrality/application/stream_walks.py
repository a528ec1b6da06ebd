"""
Streaming module for the walk_centrality application.

This module computes the incoming and outgoing walk weight matrices with two
passes over the chronological edge stream: a forward pass for walks ending at
each (node, arrival time) and a backward pass for walks starting at each
(node, start time). Both passes require a strictly positive transition time.
Weight functions that ignore the waiting time take a prefix-sum path that costs
one bisect per edge.
"""

import logging
from array import array
from bisect import bisect_right
from concurrent.futures import ThreadPoolExecutor
from walk_centrality.application import constants as const
from walk_centrality.application.errors import ConfigurationError

logger = logging.getLogger(__name__)


class WalkWeightMatrix:
    """
    Per-node sparse map time -> accumulated walk weight.

    Keys iterate in ascending order and every stored weight is positive.
    `inner_iterations` counts the relaxations performed while building the matrix.
    """

    def __init__(self, direction, rows, inner_iterations=0):
        self.direction = direction
        self._rows = rows
        self.inner_iterations = inner_iterations

    @property
    def n(self):
        return len(self._rows)

    def items(self, node):
        return self._rows[node].items()

    def times(self, node):
        return list(self._rows[node])

    def get(self, node, t):
        return self._rows[node].get(t, 0.0)

    def total(self, node):
        return sum(self._rows[node].values())

    @property
    def entry_count(self):
        return sum(len(row) for row in self._rows)

    def as_dict(self):
        return {(node, t): weight for node, row in enumerate(self._rows) for t, weight in row.items()}


def _require_strict(graph):
    if graph.delta <= 0:
        raise ConfigurationError("The streaming backend requires delta > 0; use the exact or approx backend")


def _constant_factor(phi):
    """The value of phi when it does not depend on the waiting time, else None."""
    kind = getattr(phi, "kind", None)
    if kind == const.ONE:
        return 1.0
    if kind == const.ALPHA:
        return phi.alpha
    return None


class _PrefixRow:
    """
    Append-only row of one node: keys, weights and running sums of the weights.

    Keys are appended in non-decreasing order, so a prefix sum is one bisect away.
    """
    __slots__ = ("keys", "weights", "sums")

    def __init__(self):
        self.keys = array("q")
        self.weights = array("d")
        self.sums = array("d")

    def prefix(self, key):
        """Number of entries with key <= the given key, and their weight sum."""
        count = bisect_right(self.keys, key)
        return count, (self.sums[count - 1] if count else 0.0)

    def add(self, key, weight):
        keys = self.keys
        if keys and keys[-1] == key:
            self.weights[-1] += weight
            self.sums[-1] += weight
            return
        keys.append(key)
        self.weights.append(weight)
        self.sums.append(self.sums[-1] + weight if self.sums else weight)


def _release_rows(prefix_rows, negate=False):
    rows = []
    for node, row in enumerate(prefix_rows):
        if negate:
            rows.append(dict(zip((-key for key in reversed(row.keys)), reversed(row.weights))))
        else:
            rows.append(dict(zip(row.keys, row.weights)))
        prefix_rows[node] = None
    return rows


def _incoming_constant(graph, factor):
    delta = graph.delta
    prefix_rows = [_PrefixRow() for _ in range(graph.n)]
    inner_iterations = 0
    for u, v, t in graph.edges:
        count, carried = prefix_rows[u].prefix(t)
        inner_iterations += count
        prefix_rows[v].add(t + delta, 1.0 + factor * carried)
    return _release_rows(prefix_rows), inner_iterations


def _outgoing_constant(graph, factor):
    delta = graph.delta
    # Start times are stored negated so the backward pass also appends in non-decreasing order.
    prefix_rows = [_PrefixRow() for _ in range(graph.n)]
    inner_iterations = 0
    for u, v, t in reversed(graph.edges):
        count, carried = prefix_rows[v].prefix(-(t + delta))
        inner_iterations += count
        prefix_rows[u].add(-t, 1.0 + factor * carried)
    return _release_rows(prefix_rows, negate=True), inner_iterations


def _incoming_general(graph, phi_in):
    delta = graph.delta
    rows = [{} for _ in range(graph.n)]
    inner_iterations = 0
    for u, v, t in graph.edges:
        arrival = t + delta
        row_v = rows[v]
        weight = row_v.get(arrival, 0.0) + 1.0
        # Keys at u already include +delta, so t >= t' is the walk condition t_i + delta <= t_{i+1}.
        for t_prev, w_prev in rows[u].items():
            if t_prev > t:
                break
            weight += w_prev * phi_in(t_prev, t)
            inner_iterations += 1
        # Arrival keys at v are created in non-decreasing order, so insertion order stays sorted.
        row_v[arrival] = weight
    return rows, inner_iterations


def _outgoing_general(graph, phi_out):
    delta = graph.delta
    rows = [{} for _ in range(graph.n)]
    inner_iterations = 0
    for u, v, t in reversed(graph.edges):
        arrival = t + delta
        row_u = rows[u]
        weight = row_u.get(t, 0.0) + 1.0
        # Start keys are inserted in non-increasing order during the backward pass.
        for t_next, w_next in rows[v].items():
            if t_next < arrival:
                break
            weight += w_next * phi_out(arrival, t_next)
            inner_iterations += 1
        row_u[t] = weight
    return [dict(reversed(row.items())) for row in rows], inner_iterations


def compute_incoming(graph, phi_in) -> WalkWeightMatrix:
    _require_strict(graph)
    factor = _constant_factor(phi_in)
    if factor is None:
        rows, inner_iterations = _incoming_general(graph, phi_in)
    else:
        rows, inner_iterations = _incoming_constant(graph, factor)
    logger.debug(f"Forward pass finished after {inner_iterations} inner iterations")
    return WalkWeightMatrix(const.INCOMING, rows, inner_iterations)


def compute_outgoing(graph, phi_out) -> WalkWeightMatrix:
    _require_strict(graph)
    factor = _constant_factor(phi_out)
    if factor is None:
        rows, inner_iterations = _outgoing_general(graph, phi_out)
    else:
        rows, inner_iterations = _outgoing_constant(graph, factor)
    logger.debug(f"Backward pass finished after {inner_iterations} inner iterations")
    return WalkWeightMatrix(const.OUTGOING, rows, inner_iterations)


def compute_walk_matrices(graph, config, threads=1):
    """
    Run the forward and the backward pass, concurrently when threads > 1.
    """
    if threads > 1:
        with ThreadPoolExecutor(max_workers=2) as executor:
            incoming = executor.submit(compute_incoming, graph, config.phi_in)
            outgoing = executor.submit(compute_outgoing, graph, config.phi_out)
            return incoming.result(), outgoing.result()
    return compute_incoming(graph, config.phi_in), compute_outgoing(graph, config.phi_out)
