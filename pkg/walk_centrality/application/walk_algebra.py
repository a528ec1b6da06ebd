"""
Walk algebra module for the walk_centrality application.

This module counts weighted walks of unbounded length on the directed line graph:
exactly by solving (I - A) x = 1, approximately by the fixed-point iteration
x = sum of A^l 1, and in linear time on acyclic line graphs by relaxing arcs in
topological order. Counts are projected back to (node, time) walk weight matrices.
"""

import itertools
import logging
from typing import Optional
import numpy as np
from pydantic import BaseModel
from scipy import linalg, sparse
from walk_centrality.application import constants as const
from walk_centrality.application.errors import (CapacityError, ConfigurationError, ContractViolation,
                                                DivergenceError)
from walk_centrality.application.line_graph import DirectedLineGraph, kahn_order, topological_order
from walk_centrality.application.stream_walks import WalkWeightMatrix

logger = logging.getLogger(__name__)


class ConvergenceReport(BaseModel):
    direction: str
    iterations: int
    final_residual: float
    spectral_radius_estimate: Optional[float] = None


def _check_direction(direction):
    if direction not in (const.INCOMING, const.OUTGOING):
        raise ContractViolation(f"Unknown walk direction: {direction}")


def oriented_adjacency(dlg: DirectedLineGraph, direction):
    """Weighted adjacency for outgoing counts, its transpose for incoming counts."""
    _check_direction(direction)
    matrix = dlg.adjacency()
    if direction == const.INCOMING:
        return matrix.T.tocsr()
    return matrix


def estimate_spectral_radius(matrix, iterations=const.SPECTRAL_ITERATIONS) -> float:
    """
    Power-iteration estimate of the dominant eigenvalue magnitude of a non-negative matrix.

    Returns 0 for nilpotent (acyclic) patterns. The estimate is the mean growth
    factor of the iterate over the last steps.
    """
    if iterations < 1:
        raise ConfigurationError(f"Power iteration needs at least one step, got {iterations}")
    matrix = sparse.csr_matrix(matrix)
    matrix.eliminate_zeros()
    size = matrix.shape[0]
    if size == 0 or matrix.nnz == 0:
        return 0.0
    if kahn_order(matrix.indptr, matrix.indices, size) is not None:
        return 0.0

    vector = np.full(size, 1.0 / np.sqrt(size))
    growth = []
    for _ in range(iterations):
        image = matrix @ vector
        norm = float(np.linalg.norm(image))
        if norm == 0.0:
            return 0.0
        growth.append(norm)
        vector = image / norm
    return float(np.mean(growth[-const.SPECTRAL_AVERAGE_WINDOW:]))


def exact_counts(dlg: DirectedLineGraph, direction, dense_cap=const.DEFAULT_DENSE_CAP,
                 margin=const.SPECTRAL_MARGIN) -> np.ndarray:
    """
    Weighted walk counts of all lengths from (outgoing) or to (incoming) every DLG node.
    """
    _check_direction(direction)
    size = dlg.node_count
    if size == 0:
        return np.ones(0)
    if size > dense_cap:
        raise CapacityError(f"Exact counting needs a dense {size}x{size} system, above the cap of {dense_cap}; "
                            f"use the approx or stream backend")
    matrix = oriented_adjacency(dlg, direction)
    if topological_order(dlg) is None:
        radius = estimate_spectral_radius(matrix)
        logger.info(f"Cyclic line graph, spectral radius estimate {radius:.6g}")
        if radius >= 1.0 - margin:
            raise DivergenceError(f"Walk counts diverge: spectral radius estimate {radius:.6g} "
                                  f"is not below {1.0 - margin:g}")
    # One dense buffer: I - A is formed in place and factorized in place.
    system = matrix.toarray(order="F")
    np.negative(system, out=system)
    system.flat[::size + 1] += 1.0
    factors = linalg.lu_factor(system, overwrite_a=True, check_finite=False)
    return linalg.lu_solve(factors, np.ones(size))


def _neumann_terms(matrix):
    vector = np.ones(matrix.shape[0])
    while True:
        vector = matrix @ vector
        yield vector


def truncated_counts(dlg: DirectedLineGraph, direction, k) -> np.ndarray:
    """Sum of A^l 1 for l = 0..k, i.e. walks of at most k arcs."""
    counts = np.ones(dlg.node_count)
    for term in itertools.islice(_neumann_terms(oriented_adjacency(dlg, direction)), k):
        counts += term
    return counts


def approx_counts(dlg: DirectedLineGraph, direction, epsilon, window=const.DEFAULT_DIVERGENCE_WINDOW,
                  max_iterations=const.DEFAULT_MAX_ITERATIONS, max_length=None, margin=const.SPECTRAL_MARGIN):
    """
    Fixed-point iteration: v <- A v, r <- r + v until ||v||_1 < epsilon.

    With max_length L the iteration stops after L - 1 products, counting only
    temporal walks of length at most L. A residual that stalls for a whole window
    triggers one spectral radius estimate, and a radius at or above 1 - margin
    stops the iteration.
    """
    if epsilon <= 0:
        raise ConfigurationError(f"epsilon must be positive, got {epsilon}")
    if max_length is not None and max_length < 1:
        raise ConfigurationError(f"max_length must be at least 1, got {max_length}")
    matrix = oriented_adjacency(dlg, direction)
    counts = np.ones(dlg.node_count)
    initial = float(dlg.node_count)
    residual = initial
    best = initial
    stale = 0
    iterations = 0
    radius = None
    if dlg.node_count == 0:
        return counts, ConvergenceReport(direction=direction, iterations=0, final_residual=0.0)

    for term in _neumann_terms(matrix):
        if max_length is not None and iterations >= max_length - 1:
            break
        if iterations >= max_iterations:
            raise DivergenceError(f"No convergence after {max_iterations} iterations, residual {residual:.6g}")
        counts += term
        iterations += 1
        # All entries are non-negative, so the L1 norm is the plain sum.
        residual = float(term.sum())
        if residual < epsilon:
            break
        if residual < best:
            best = residual
            stale = 0
        else:
            stale += 1
        if stale >= window:
            if residual > initial:
                raise DivergenceError(f"Walk counts diverge: residual {residual:.6g} has not decreased "
                                      f"in {window} iterations")
            if radius is None:
                radius = estimate_spectral_radius(matrix)
                logger.info(f"Residual stalled at {residual:.6g}, spectral radius estimate {radius:.6g}")
                if radius >= 1.0 - margin:
                    raise DivergenceError(f"Walk counts do not converge: spectral radius estimate {radius:.6g} "
                                          f"is not below {1.0 - margin:g}")
            stale = 0

    logger.info(f"Approximate {direction} counts after {iterations} iterations, residual {residual:.3g}")
    return counts, ConvergenceReport(direction=direction, iterations=iterations, final_residual=residual,
                                     spectral_radius_estimate=radius)


def dag_counts(dlg: DirectedLineGraph, direction) -> np.ndarray:
    """
    Linear-time counting on an acyclic line graph: every arc is relaxed once in
    (reverse) topological order, starting from 1 for the length-zero walk.
    """
    _check_direction(direction)
    order = topological_order(dlg)
    if order is None:
        raise ContractViolation("dag counting needs an acyclic line graph (delta > 0)")
    counts = [1.0] * dlg.node_count
    indptr = dlg.indptr.tolist()
    indices = dlg.indices.tolist()
    weights = dlg.weights.tolist()
    if direction == const.OUTGOING:
        for x in reversed(order):
            total = counts[x]
            for arc in range(indptr[x], indptr[x + 1]):
                total += weights[arc] * counts[indices[arc]]
            counts[x] = total
    else:
        for x in order:
            value = counts[x]
            for arc in range(indptr[x], indptr[x + 1]):
                counts[indices[arc]] += weights[arc] * value
    return np.array(counts, dtype=np.float64)


def project(counts, dlg: DirectedLineGraph, direction) -> WalkWeightMatrix:
    """
    Sum DLG counts over X_out(v, t) (outgoing) or X_in(v, t) (incoming).

    Each DLG node is itself a length-one temporal walk, so projected values count
    walks of length at least one.
    """
    _check_direction(direction)
    buckets = dlg.x_out if direction == const.OUTGOING else dlg.x_in
    rows = [{} for _ in range(dlg.graph.n)]
    for (node, t), members in sorted(buckets.items()):
        rows[node][t] = float(sum(counts[x] for x in members))
    return WalkWeightMatrix(direction, rows)
