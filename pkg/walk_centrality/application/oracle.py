"""
Brute-force walk enumeration for the walk_centrality application.

Every temporal walk up to a length cap is listed explicitly by depth-first
extension, without sharing any code with the streaming or line-graph backends.
Results serve as ground truth on small graphs.
"""

import bisect
import collections
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple
from walk_centrality.application import constants as const
from walk_centrality.application.centrality import CentralityResult
from walk_centrality.application.errors import CapacityError, ConfigurationError
from walk_centrality.application.stream_walks import WalkWeightMatrix
from walk_centrality.application.temporal_graph import TemporalGraph
from walk_centrality.application.weight_functions import WeightConfig, walk_weight

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WalkEnumeration:
    graph: TemporalGraph
    max_length: int
    walks: Tuple[Tuple[int, ...], ...]
    by_start: Dict[Tuple[int, int], List[int]]
    by_end: Dict[Tuple[int, int], List[int]]

    @classmethod
    def from_walks(cls, graph, max_length, walks):
        """Group edge-index walks by start (node, time) and end (node, arrival time)."""
        by_start = collections.defaultdict(list)
        by_end = collections.defaultdict(list)
        for w, walk in enumerate(walks):
            head, tail = graph.edges[walk[0]], graph.edges[walk[-1]]
            by_start[(head.src, head.t)].append(w)
            by_end[(tail.dst, tail.t + graph.delta)].append(w)
        return cls(graph, max_length, tuple(walks), dict(by_start), dict(by_end))

    @property
    def count(self):
        return len(self.walks)

    def edges_of(self, walk):
        return [self.graph.edges[i] for i in walk]

    def walk_weight(self, phi, walk):
        return walk_weight(phi, self.edges_of(walk), self.graph.delta)

    def length_histogram(self):
        return dict(sorted(collections.Counter(len(walk) for walk in self.walks).items()))

    def truncated(self, max_length):
        """The walks of length at most max_length."""
        if max_length > self.max_length:
            raise ConfigurationError(f"Enumeration only holds walks up to length {self.max_length}")
        return WalkEnumeration.from_walks(self.graph, max_length,
                                          [walk for walk in self.walks if len(walk) <= max_length])

    def weighted_sums(self, phi, direction):
        """(node, time) -> total phi-weight of the walks starting (outgoing) or ending (incoming) there."""
        groups = self.by_start if direction == const.OUTGOING else self.by_end
        return {key: sum(self.walk_weight(phi, self.walks[w]) for w in members)
                for key, members in groups.items()}

    def to_matrix(self, phi, direction) -> WalkWeightMatrix:
        rows = [{} for _ in range(self.graph.n)]
        for (node, t), weight in sorted(self.weighted_sums(phi, direction).items()):
            rows[node][t] = weight
        return WalkWeightMatrix(direction, rows)


def default_max_length(graph: TemporalGraph):
    """Strict walks use strictly increasing times, so they are no longer than the number of distinct timestamps."""
    if graph.delta == 0:
        raise ConfigurationError("Walks are unbounded for delta = 0; an explicit max_length is required")
    return max(1, len({edge.t for edge in graph.edges}))


def enumerate_walks(graph: TemporalGraph, max_length: Optional[int] = None,
                    cap=const.DEFAULT_WALK_CAP) -> WalkEnumeration:
    if max_length is None:
        max_length = default_max_length(graph)
    if max_length < 1:
        raise ConfigurationError(f"max_length must be at least 1, got {max_length}")

    edges, delta = graph.edges, graph.delta
    out_edges = graph.out_edges
    start_times = [[edges[i].t for i in bucket] for bucket in out_edges]

    walks = []
    stack = [(i,) for i in reversed(range(graph.m))]
    while stack:
        walk = stack.pop()
        walks.append(walk)
        if len(walks) > cap:
            raise CapacityError(f"More than {cap} temporal walks of length at most {max_length}; "
                                f"lower max_length or raise {const.WALK_CAP}")
        if len(walk) == max_length:
            continue
        last = edges[walk[-1]]
        node = last.dst
        first = bisect.bisect_left(start_times[node], last.t + delta)
        for i in reversed(out_edges[node][first:]):
            stack.append(walk + (i,))

    logger.debug(f"Enumerated {len(walks)} temporal walks of length at most {max_length}")
    return WalkEnumeration.from_walks(graph, max_length, walks)


def enumeration_centrality(enumeration: WalkEnumeration, config: WeightConfig) -> CentralityResult:
    """
    Sum phi_m(t1, t2) times the weights of every in-walk arriving at v at t1 and
    every out-walk leaving v at t2 >= t1.
    """
    graph = enumeration.graph
    incoming = collections.defaultdict(list)
    outgoing = collections.defaultdict(list)
    for (node, t), weight in enumeration.weighted_sums(config.phi_in, const.INCOMING).items():
        incoming[node].append((t, weight))
    for (node, t), weight in enumeration.weighted_sums(config.phi_out, const.OUTGOING).items():
        outgoing[node].append((t, weight))

    scores = []
    for node in range(graph.n):
        score = 0.0
        for t1, w_in in incoming[node]:
            for t2, w_out in outgoing[node]:
                if t1 <= t2:
                    score += w_in * w_out * config.phi_m(t1, t2)
        scores.append(score)
    return CentralityResult(graph.labels, tuple(scores), const.TWC, enumeration.count)


def oracle_centrality(graph: TemporalGraph, config: WeightConfig, max_length: Optional[int] = None,
                      cap=const.DEFAULT_WALK_CAP) -> CentralityResult:
    return enumeration_centrality(enumerate_walks(graph, max_length, cap), config)
