"""
Analysis module for the walk_centrality application.

This module compares centrality rankings with Kendall's tau-b, measures the
mean relative error of an approximation, and restricts results to their
top-ranked nodes.
"""

import csv
import logging
import math
from typing import Optional, Sequence
import numpy as np
from pydantic import BaseModel
from walk_centrality.application.centrality import CentralityResult, format_score
from walk_centrality.application.errors import ConfigurationError, UniverseMismatch

logger = logging.getLogger(__name__)

# Absorbs float noise in n * fraction before taking the ceiling.
TOP_K_SLACK = 1e-9


class RankCorrelation(BaseModel):
    tau: float
    n_pairs: int
    method: str = "tau-b"


class ErrorReport(BaseModel):
    mean_relative_error: float
    support: int
    empty: bool = False


def check_same_universe(a: CentralityResult, b: CentralityResult):
    if len(a.labels) != len(b.labels) or set(a.labels) != set(b.labels):
        only_a = sorted(set(a.labels) - set(b.labels))
        only_b = sorted(set(b.labels) - set(a.labels))
        raise UniverseMismatch(f"Results rank different nodes: {len(only_a)} only in the first "
                               f"({', '.join(only_a[:5])}), {len(only_b)} only in the second "
                               f"({', '.join(only_b[:5])})")


def aligned_scores(a: CentralityResult, b: CentralityResult):
    """Score vectors of a and b, both in the node order of a."""
    check_same_universe(a, b)
    by_label = b.as_dict()
    return np.array(a.scores, dtype=np.float64), np.array([by_label[label] for label in a.labels],
                                                          dtype=np.float64)


def _tied_pairs(values):
    _, counts = np.unique(values, axis=0, return_counts=True)
    return int((counts * (counts - 1) // 2).sum())


def count_inversions(values):
    """Number of pairs i < j with values[i] > values[j], by bottom-up merge sort."""
    values = list(values)
    swaps = 0
    width = 1
    size = len(values)
    while width < size:
        merged = []
        for start in range(0, size, 2 * width):
            left = values[start:start + width]
            right = values[start + width:start + 2 * width]
            i = j = 0
            while i < len(left) and j < len(right):
                if right[j] < left[i]:
                    merged.append(right[j])
                    swaps += len(left) - i
                    j += 1
                else:
                    merged.append(left[i])
                    i += 1
            merged.extend(left[i:])
            merged.extend(right[j:])
        values = merged
        width *= 2
    return swaps


def tau_b(x, y) -> RankCorrelation:
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    size = len(x)
    n0 = size * (size - 1) // 2
    if size < 2:
        return RankCorrelation(tau=math.nan, n_pairs=n0)

    order = np.lexsort((y, x))
    x, y = x[order], y[order]
    n1 = _tied_pairs(x)
    n2 = _tied_pairs(y)
    n3 = _tied_pairs(np.column_stack((x, y)))
    swaps = count_inversions(y.tolist())

    denominator = math.sqrt((n0 - n1) * (n0 - n2))
    if denominator == 0:
        return RankCorrelation(tau=math.nan, n_pairs=n0)
    tau = (n0 - n1 - n2 + n3 - 2 * swaps) / denominator
    return RankCorrelation(tau=min(1.0, max(-1.0, tau)), n_pairs=n0)


def kendall_tau(a: CentralityResult, b: CentralityResult) -> RankCorrelation:
    return tau_b(*aligned_scores(a, b))


def mean_relative_error(exact: CentralityResult, approx: CentralityResult) -> ErrorReport:
    exact_scores, approx_scores = aligned_scores(exact, approx)
    support = exact_scores != 0
    if not support.any():
        logger.warning("Every exact score is zero; the mean relative error is reported as 0")
        return ErrorReport(mean_relative_error=0.0, support=0, empty=True)
    errors = np.abs(exact_scores[support] - approx_scores[support]) / np.abs(exact_scores[support])
    return ErrorReport(mean_relative_error=float(errors.mean()), support=int(support.sum()))


def top_k_size(n, fraction):
    if not 0 < fraction <= 1:
        raise ConfigurationError(f"top fraction must be in (0, 1], got {fraction}")
    if n == 0:
        return 0
    return min(n, max(1, math.ceil(n * fraction - TOP_K_SLACK)))


def restrict(result: CentralityResult, labels: Sequence[str]) -> CentralityResult:
    by_label = result.as_dict()
    return CentralityResult(tuple(labels), tuple(by_label[label] for label in labels), result.mode, result.work)


def top_k(result: CentralityResult, fraction) -> CentralityResult:
    """The ceil(n * fraction) highest-ranked nodes, kept in their original order."""
    chosen = sorted(result.ranking[:top_k_size(result.n, fraction)])
    return restrict(result, [result.labels[node] for node in chosen])


def top_k_correlation(a: CentralityResult, b: CentralityResult, fraction) -> RankCorrelation:
    """tau-b on the union of both results' top-ranked node sets."""
    check_same_universe(a, b)
    union = set(top_k(a, fraction).labels) | set(top_k(b, fraction).labels)
    labels = [label for label in a.labels if label in union]
    return kendall_tau(restrict(a, labels), restrict(b, labels))


def correlation_matrix(results: Sequence[CentralityResult], top: Optional[float] = None) -> np.ndarray:
    size = len(results)
    matrix = np.ones((size, size))
    for i in range(size):
        for j in range(i, size):
            if top is None or top == 1:
                correlation = kendall_tau(results[i], results[j])
            else:
                correlation = top_k_correlation(results[i], results[j], top)
            matrix[i, j] = matrix[j, i] = correlation.tau
    return matrix


def write_correlation_csv(names: Sequence[str], matrix: np.ndarray, stream):
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(["", *names])
    for name, row in zip(names, matrix):
        writer.writerow([name, *(format_score(float(value)) for value in row)])
