import os
import time
import numpy as np
import pytest
from walk_centrality.application.main import main

SMOKE_EDGES = "TWC_SMOKE_EDGES"
TIME_BUDGET_SECONDS = 120
MEMORY_BUDGET_BYTES = 4 * 1024 ** 3


def write_synthetic_stream(path, m, n, timestamps, seed=7):
    rng = np.random.default_rng(seed)
    sources = rng.integers(0, n, m)
    targets = (sources + rng.integers(1, n, m)) % n
    times = rng.integers(0, timestamps, m)
    np.savetxt(path, np.column_stack((sources, targets, times)), fmt="%d")


@pytest.mark.slow
@pytest.mark.skipif(not os.environ.get(SMOKE_EDGES), reason=f"set {SMOKE_EDGES} to run the scalability check")
def test_stream_pipeline_on_large_edge_stream(tmp_path):
    resource = pytest.importorskip("resource")
    m = int(os.environ[SMOKE_EDGES])
    edges = tmp_path / "stream.txt"
    # n = m / 100 with 100 timestamps keeps about one edge per node and timestamp
    write_synthetic_stream(edges, m, n=max(2, m // 100), timestamps=100)
    output = tmp_path / "ranking.tsv"

    start = time.perf_counter()
    status = main(["compute", "--input", str(edges), "--delta", "1", "--method", "stream",
                   "--output", str(output)])
    elapsed = time.perf_counter() - start

    assert status == 0
    assert output.stat().st_size > 0
    assert elapsed < TIME_BUDGET_SECONDS
    # ru_maxrss is reported in kilobytes on Linux
    assert resource.getrusage(resource.RUSAGE_SELF).ru_maxrss * 1024 < MEMORY_BUDGET_BYTES
