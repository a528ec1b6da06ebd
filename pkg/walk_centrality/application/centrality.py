"""
Centrality module for the walk_centrality application.

This module combines the incoming and outgoing walk weight matrices into the
temporal walk centrality of every node, provides the Katz and degree special
cases, and reads and writes ranking TSV files.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence, Tuple
from walk_centrality.application import constants as const
from walk_centrality.application.errors import ContractViolation, InputError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CentralityResult:
    labels: Tuple[str, ...]
    scores: Tuple[float, ...]
    mode: Optional[str] = const.TWC
    work: int = 0

    @property
    def n(self):
        return len(self.labels)

    @cached_property
    def ranking(self):
        """Nodes by descending score, ties by ascending node index."""
        return tuple(sorted(range(self.n), key=lambda node: (-self.scores[node], node)))

    def dense_ranks(self):
        """(rank, node) pairs in ranking order; equal scores share a rank number."""
        ranked = []
        rank = 0
        previous = None
        for node in self.ranking:
            if previous is None or self.scores[node] != previous:
                rank += 1
                previous = self.scores[node]
            ranked.append((rank, node))
        return ranked

    def score(self, label):
        return self.scores[self.labels.index(label)]

    def as_dict(self):
        return dict(zip(self.labels, self.scores))

    def ranked_labels(self):
        return [self.labels[node] for node in self.ranking]


def _labels_for(count, labels):
    if labels is None:
        return tuple(str(node) for node in range(count))
    if len(labels) != count:
        raise ContractViolation(f"{len(labels)} labels given for {count} nodes")
    return tuple(labels)


def _per_node(function, count, threads):
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            return list(executor.map(function, range(count)))
    return [function(node) for node in range(count)]


def _check_compatible(win, wout):
    if win.n != wout.n:
        raise ContractViolation(f"Walk matrices cover {win.n} and {wout.n} nodes")


def combine_fast(win, wout, labels: Optional[Sequence[str]] = None, threads=1) -> CentralityResult:
    """
    Centrality for phi_m = 1 in one merged ascending scan per node.

    An incoming entry at time t counts for outgoing entries at the same time t.
    """
    _check_compatible(win, wout)

    def node_score(node):
        incoming = list(win.items(node))
        outgoing = list(wout.items(node))
        i = j = 0
        in_sum = 0.0
        score = 0.0
        while i < len(incoming) or j < len(outgoing):
            if j == len(outgoing) or (i < len(incoming) and incoming[i][0] <= outgoing[j][0]):
                in_sum += incoming[i][1]
                i += 1
            else:
                score += outgoing[j][1] * in_sum
                j += 1
        return score, i + j

    per_node = _per_node(node_score, win.n, threads)
    return CentralityResult(_labels_for(win.n, labels), tuple(score for score, _ in per_node),
                            const.TWC, sum(touched for _, touched in per_node))


def combine_general(win, wout, phi_m, labels: Optional[Sequence[str]] = None, threads=1) -> CentralityResult:
    """
    Centrality for an arbitrary phi_m over all pairs t1 <= t2 at each node.

    Per outgoing time the inner sum runs in ascending t1, so phi_m = 1 reproduces
    combine_fast bit for bit.
    """
    _check_compatible(win, wout)

    def node_score(node):
        incoming = list(win.items(node))
        score = 0.0
        evaluations = 0
        for t_out, w_out in wout.items(node):
            inner = 0.0
            for t_in, w_in in incoming:
                if t_in > t_out:
                    break
                inner += w_in * phi_m(t_in, t_out)
                evaluations += 1
            score += w_out * inner
        return score, evaluations

    per_node = _per_node(node_score, win.n, threads)
    return CentralityResult(_labels_for(win.n, labels), tuple(score for score, _ in per_node),
                            const.TWC, sum(evaluations for _, evaluations in per_node))


def katz_mode(wout, labels: Optional[Sequence[str]] = None) -> CentralityResult:
    """Temporal Katz: every outgoing walk counted once with its weight."""
    scores = tuple(sum(weight for _, weight in wout.items(node)) for node in range(wout.n))
    return CentralityResult(_labels_for(wout.n, labels), scores, const.KATZ, wout.entry_count)


def degree_mode(graph, direction) -> CentralityResult:
    counts = [0] * graph.n
    for edge in graph.edges:
        counts[edge.src if direction == const.OUTGOING else edge.dst] += 1
    mode = const.DEGREE_OUT if direction == const.OUTGOING else const.DEGREE_IN
    return CentralityResult(graph.labels, tuple(float(count) for count in counts), mode, graph.m)


def format_score(score):
    return f"{score:.{const.SCORE_DIGITS}g}"


def write_tsv(result: CentralityResult, stream):
    for rank, node in result.dense_ranks():
        stream.write(f"{rank}\t{result.labels[node]}\t{format_score(result.scores[node])}\n")


def read_tsv(path) -> CentralityResult:
    labels = []
    scores = []
    try:
        with open(path, "r", encoding="utf-8") as file:
            for line_number, line in enumerate(file, start=1):
                if not line.strip():
                    continue
                fields = line.rstrip("\n").split("\t")
                if len(fields) != 3:
                    raise InputError(f"{path} line {line_number}: expected 'rank<TAB>label<TAB>score'")
                try:
                    scores.append(float(fields[2]))
                except ValueError:
                    raise InputError(f"{path} line {line_number}: score {fields[2]!r} is not a number")
                labels.append(fields[1])
    except OSError as e:
        raise InputError(f"Cannot read result file {path}: {e}")
    except UnicodeDecodeError as e:
        raise InputError(f"Result file {path} is not valid UTF-8: {e}")
    if len(set(labels)) != len(labels):
        raise InputError(f"{path} lists a node more than once")
    return CentralityResult(tuple(labels), tuple(scores), None)
