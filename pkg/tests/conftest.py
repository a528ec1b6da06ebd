import numpy as np
import pytest
from walk_centrality.application.temporal_graph import from_edge_list, ingest

# Edge list of the seven-node example graph, delta = 1.
FIG1_LINES = [
    "a b 1",
    "b c 3",
    "a c 2",
    "c d 3",
    "c e 3",
    "d e 4",
    "e f 5",
    "f g 2",
    "e g 5",
]


@pytest.fixture
def fig1_lines():
    return list(FIG1_LINES)


@pytest.fixture
def fig1():
    return ingest(FIG1_LINES, delta=1)


@pytest.fixture
def rng():
    return np.random.default_rng(20240501)


def random_triples(rng, n_max=10, m_max=30, t_max=20):
    n = int(rng.integers(2, n_max + 1))
    m = int(rng.integers(1, m_max + 1))
    triples = []
    for _ in range(m):
        u, v = rng.choice(n, size=2, replace=False)
        triples.append((f"v{u}", f"v{v}", int(rng.integers(0, t_max + 1))))
    return triples


@pytest.fixture
def make_random_graph(rng):
    def make(delta=1, n_max=10, m_max=30, t_max=20):
        return from_edge_list(random_triples(rng, n_max, m_max, t_max), delta=delta)
    return make
