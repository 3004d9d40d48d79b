import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypertri import (
    EmptyInputError,
    Hypergraph,
    ParseError,
    parse_edge_list,
    serialize_edge_list,
    stats,
)
from hypertri.core import iter_lines


def parse(text: str, **kw):
    return parse_edge_list(iter_lines(text), **kw)


def test_parse_graph_triangle():
    g, report = parse("1 2\n2 3\n1 3\n")
    assert (g.n, g.m, g.h, g.rank) == (3, 3, 9, 2)
    assert report.duplicates_removed == 0
    assert report.vertex_remap_size == 3


def test_parse_dedup_and_singleton_filter():
    g, report = parse("1 2\n1 2\n5\n")
    assert g.m == 1
    assert report.duplicates_removed == 1
    assert report.singletons_removed == 1
    # vertex 5 only appeared in a dropped edge and must not be remapped
    assert g.n == 2


def test_parse_collapses_duplicate_vertices_within_line():
    g, _ = parse("1 2 3 2\n")
    assert g.m == 1
    assert g.edge_labels(0) == (1, 2, 3)


def test_parse_self_loop_line_is_singleton():
    g, report = parse("5 5\n1 2\n")
    assert report.singletons_removed == 1
    assert g.m == 1


def test_parse_skips_blank_and_comment_lines():
    g, report = parse("# header\n\n1 2\n   \n# tail\n2 3\n")
    assert g.m == 2
    assert report.empty_lines_skipped == 4


def test_parse_rejects_bad_tokens():
    with pytest.raises(ParseError) as err:
        parse("1 2\n1 x\n")
    assert err.value.line == 2
    with pytest.raises(ParseError):
        parse("1 -2\n")


def test_parse_empty_input_raises():
    with pytest.raises(EmptyInputError):
        parse("# nothing\n7\n")
    g, _ = parse("7\n", allow_empty=True)
    assert g.m == 0 and g.n == 0


def test_degree_queries():
    g, _ = parse("1 2\n1 3\n1 4\n")
    hub = g.labels.index(1)
    assert g.degree(hub) == 3
    leaf = g.labels.index(2)
    assert g.degree(leaf) == 1
    with pytest.raises(ValueError):
        g.degree(g.n)
    with pytest.raises(ValueError):
        g.degree(-1)


def test_triangle_degrees_all_two(triangle):
    assert [triangle.degree(v) for v in range(3)] == [2, 2, 2]


def test_stats_examples(triangle, chain):
    assert stats(triangle) == (3, 3, 9, 2, 2, 2.0)
    assert stats(chain) == (4, 3, 13, 4, 3, 3.0)


def test_stats_empty():
    g = Hypergraph.from_edges([])
    assert stats(g) == (0, 0, 0, 0, 0, 0.0)


def test_incidence_invariants(chain):
    g = chain
    assert sum(g.degree(v) for v in range(g.n)) == g.h - g.n
    # every edge id appears in exactly |e| incidence lists
    appearances = {}
    for v in range(g.n):
        for eid in g.incident_edges(v):
            appearances[eid] = appearances.get(eid, 0) + 1
    assert appearances == {eid: len(g.edges[eid]) for eid in range(g.m)}


def test_serialize_round_trip_fixture(chain):
    text = serialize_edge_list(chain)
    g2, _ = parse(text)
    assert g2 == chain


label_edges = st.lists(
    st.lists(st.integers(min_value=0, max_value=30), min_size=1, max_size=6),
    min_size=1,
    max_size=12,
)


@given(label_edges)
@settings(max_examples=200, deadline=None)
def test_serialize_round_trip_random(edges):
    g = Hypergraph.from_edges(edges)
    g2, _ = parse(serialize_edge_list(g), allow_empty=True)
    assert g2 == g
    assert sum(g.degree(v) for v in range(g.n)) == sum(len(e) for e in g.edges)


def test_edge_masks_match_edges(star):
    masks = star.edge_masks()
    for eid, edge in enumerate(star.edges):
        assert masks[eid] == sum(1 << v for v in edge)
