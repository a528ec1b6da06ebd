import pytest
from walk_centrality.application import constants as const
from walk_centrality.application.backend_factory import LineGraphBackend
from walk_centrality.application.centrality import combine_fast
from walk_centrality.application.config import RunConfig
from walk_centrality.application.errors import CapacityError, ConfigurationError
from walk_centrality.application.oracle import enumerate_walks, enumeration_centrality, oracle_centrality
from walk_centrality.application.temporal_graph import from_edge_list, ingest
from walk_centrality.application.weight_functions import WeightConfig, constant_alpha, one

from conftest import random_triples


def test_fig1_walk_counts(fig1):
    enumeration = enumerate_walks(fig1, max_length=10)
    assert enumeration.count == 24
    assert enumeration.length_histogram() == {1: 9, 2: 8, 3: 5, 4: 2}
    assert sum(len(members) for (node, _), members in enumeration.by_end.items()
               if node == fig1.index("e")) == 5
    assert sum(len(members) for (node, _), members in enumeration.by_start.items()
               if node == fig1.index("c")) == 7


def test_default_length_covers_all_strict_walks(fig1):
    assert enumerate_walks(fig1).count == 24


def test_single_edge_has_one_walk():
    assert enumerate_walks(ingest(["u v 1"], delta=1), max_length=5).count == 1


def test_alternating_two_cycle_without_delay():
    graph = ingest(["u v 1", "v u 1"], delta=0)
    assert enumerate_walks(graph, max_length=3).length_histogram() == {1: 2, 2: 2, 3: 2}


def test_zero_delta_needs_max_length():
    with pytest.raises(ConfigurationError):
        enumerate_walks(ingest(["u v 1"], delta=0))


def test_max_length_must_be_positive(fig1):
    with pytest.raises(ConfigurationError):
        enumerate_walks(fig1, max_length=0)


def test_walk_cap(fig1):
    with pytest.raises(CapacityError):
        enumerate_walks(fig1, cap=10)


def test_walks_are_valid_and_distinct(make_random_graph):
    for delta in (0, 1, 2):
        graph = make_random_graph(delta=delta, n_max=6, m_max=12)
        enumeration = enumerate_walks(graph, max_length=4)
        assert len(set(enumeration.walks)) == enumeration.count
        for walk in enumeration.walks:
            edges = enumeration.edges_of(walk)
            for previous, current in zip(edges, edges[1:]):
                assert previous.dst == current.src
                assert previous.t + delta <= current.t


def test_oracle_centrality_on_fig1(fig1):
    result = oracle_centrality(fig1, WeightConfig.uniform(one()), max_length=10)
    assert result.as_dict() == {"a": 0.0, "b": 1.0, "c": 7.0, "d": 6.0, "e": 10.0, "f": 0.0, "g": 0.0}


def test_length_one_counts_valid_edge_pairs(make_random_graph):
    for _ in range(20):
        graph = make_random_graph(delta=1)
        result = oracle_centrality(graph, WeightConfig.uniform(one()), max_length=1)
        expected = [0.0] * graph.n
        for first in graph.edges:
            for second in graph.edges:
                if first.dst == second.src and first.t + graph.delta <= second.t:
                    expected[first.dst] += 1
        assert list(result.scores) == expected


def test_truncated_enumeration_matches_shorter_run(fig1):
    full = enumerate_walks(fig1, max_length=4)
    assert full.truncated(2).walks == enumerate_walks(fig1, max_length=2).walks
    with pytest.raises(ConfigurationError):
        full.truncated(5)


def test_truncated_sums_converge_towards_exact_counts(rng):
    for i in range(200):
        alpha = (0.05, 0.1, 0.2)[i % 3]
        graph = from_edge_list(random_triples(rng, n_max=5, m_max=5, t_max=4), delta=0)
        config = WeightConfig.uniform(constant_alpha(alpha))
        cfg = RunConfig(method=const.EXACT, delta=0)
        matrices = LineGraphBackend(const.EXACT, cfg).compute(graph, config)
        exact = combine_fast(matrices.incoming, matrices.outgoing).scores

        enumeration = enumerate_walks(graph, max_length=8)
        previous = [0.0] * graph.n
        gaps = []
        for length in range(1, 9):
            scores = enumeration_centrality(enumeration.truncated(length), config).scores
            assert all(s >= p - 1e-12 for s, p in zip(scores, previous))
            assert all(s <= e * (1 + 1e-9) + 1e-12 for s, e in zip(scores, exact))
            gaps.append(sum(e - s for s, e in zip(scores, exact)))
            previous = scores
        assert gaps[-1] <= gaps[0] + 1e-12
