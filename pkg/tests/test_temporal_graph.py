import pytest
from walk_centrality.application import constants as const
from walk_centrality.application.errors import ConfigurationError, GraphParseError, InputError
from walk_centrality.application.temporal_graph import (TemporalEdge, from_edge_list, ingest,
                                                         line_graph_arc_bound, load_graph, parse_lines, stats)


def test_fig1_graph_has_seven_nodes_and_nine_edges(fig1):
    assert fig1.n == 7
    assert fig1.m == 9
    assert fig1.labels == ("a", "b", "c", "d", "e", "f", "g")


def test_edges_are_stably_sorted_by_time(fig1):
    times = [edge.t for edge in fig1.edges]
    assert times == sorted(times)
    # (a,c,2) precedes (f,g,2) in the input, and so it does after sorting
    assert fig1.edges[1] == TemporalEdge(fig1.index("a"), fig1.index("c"), 2)
    assert fig1.edges[2] == TemporalEdge(fig1.index("f"), fig1.index("g"), 2)


def test_empty_input_gives_empty_graph():
    graph = ingest([], delta=1)
    assert graph.n == 0
    assert graph.m == 0
    assert stats(graph).model_dump() == {"n": 0, "m": 0, "time_support": 0, "tau_in_max": 0, "tau_out_max": 0}


def test_interval_keeps_edges_that_finish_inside(fig1_lines):
    graph = ingest(fig1_lines, delta=1, interval=(3, 5))
    kept = {(graph.labels[e.src], graph.labels[e.dst], e.t) for e in graph.edges}
    assert kept == {("b", "c", 3), ("c", "d", 3), ("c", "e", 3), ("d", "e", 4)}


def test_interval_stats_match_independently_filtered_list(fig1_lines):
    filtered = ingest(fig1_lines, delta=1, interval=(3, 5))
    manual = ingest(["b c 3", "c d 3", "c e 3", "d e 4"], delta=1)
    assert stats(filtered) == stats(manual)


def test_interval_start_after_end_is_rejected(fig1_lines):
    with pytest.raises(ConfigurationError):
        ingest(fig1_lines, delta=1, interval=(5, 3))


def test_undirected_doubles_edges(fig1_lines):
    directed = ingest(fig1_lines, delta=1)
    undirected = ingest(fig1_lines + ["x x 4"], delta=1, undirected=True)
    assert undirected.m == 2 * directed.m
    assert undirected.self_loops_dropped == 1
    reverse = TemporalEdge(undirected.index("b"), undirected.index("a"), 1)
    assert reverse in undirected.edges


def test_self_loops_are_dropped_and_counted(caplog):
    graph = ingest(["a a 1", "a b 2", "b b 3"], delta=1)
    assert graph.m == 1
    assert graph.self_loops_dropped == 2
    assert graph.labels == ("a", "b")
    assert "self-loop" in caplog.text


def test_comments_and_blank_lines_are_skipped():
    graph = ingest(["# header", "", "a b 1", "   ", "# a c 2"], delta=1)
    assert graph.m == 1


def test_duplicate_edges_are_kept():
    graph = ingest(["a b 1", "a b 1"], delta=1)
    assert graph.m == 2


@pytest.mark.parametrize("line", ["a b", "a b 1 2", "a b x", "a b 1.5"])
def test_malformed_line_reports_line_number(line):
    with pytest.raises(GraphParseError) as info:
        list(parse_lines(["a b 1", line]))
    assert info.value.line_number == 2
    assert str(info.value).startswith("line 2:")


def test_negative_timestamp_is_a_parse_error():
    with pytest.raises(GraphParseError, match="negative"):
        ingest(["a b -1"], delta=1)


def test_arrival_overflow_is_a_parse_error():
    with pytest.raises(GraphParseError, match="overflow"):
        ingest([f"a b {const.MAX_TIMESTAMP}"], delta=1)


def test_negative_delta_is_rejected():
    with pytest.raises(ConfigurationError):
        from_edge_list([("a", "b", 1)], delta=-1)


def test_fig1_stats(fig1):
    graph_stats = stats(fig1)
    assert graph_stats.n == 7
    assert graph_stats.m == 9
    assert graph_stats.time_support == 6
    assert graph_stats.tau_out_max == 2
    assert graph_stats.tau_in_max == 2


def test_fig1_line_graph_arc_bound(fig1):
    assert line_graph_arc_bound(fig1) == 11


def test_ingest_is_deterministic(fig1_lines):
    assert ingest(fig1_lines, delta=1) == ingest(fig1_lines, delta=1)


def test_out_and_in_edges_are_chronological(fig1):
    c = fig1.index("c")
    assert [fig1.edges[i].t for i in fig1.out_edges[c]] == [3, 3]
    assert [fig1.edges[i].t for i in fig1.in_edges[c]] == [2, 3]


def test_load_graph_reads_file(tmp_path, fig1_lines):
    path = tmp_path / "fig1.txt"
    path.write_text("\n".join(fig1_lines) + "\n")
    assert load_graph(path, delta=1).m == 9


def test_load_graph_missing_file_is_input_error(tmp_path):
    with pytest.raises(InputError):
        load_graph(tmp_path / "missing.txt")
