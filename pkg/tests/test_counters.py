import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypertri import Hypergraph, build_dah, build_edge_degree_table, count_all, degeneracy_order
from hypertri.counters import (
    PatternCounts,
    compute_extended_stars,
    compute_gamma,
    compute_local_indegrees,
    compute_stars,
    count_pattern1,
    count_pattern6,
    count_patterns_2_3,
    count_triangle_based,
    derive_open_counts,
    solve_star_counts,
    star_work_bound,
    triangle_work_bound,
)
from hypertri.errors import ConsistencyError, CountOverflowError
from conftest import rand_instance
from hypertri.oracle import brute_force_census
from hypertri.orientation import Ordering


def dah_of(g):
    ordering, _ = degeneracy_order(g)
    return build_dah(g, ordering)


def census_dict(g):
    return {i: count_all(g).counts[i] for i in range(1, 27)}


def nonzero(counts):
    return {i: c for i, c in counts.items() if c}


# -- triangle pass ----------------------------------------------------------


def test_triangle_pass_on_triangle(triangle):
    counts, _ = count_triangle_based(dah_of(triangle))
    assert nonzero(counts) == {17: 1}


def test_triangle_pass_two_children():
    g = Hypergraph.from_edges([[1, 2, 3], [1, 2], [2, 3]])
    counts, _ = count_triangle_based(dah_of(g))
    assert nonzero(counts) == {4: 1}


def test_triangle_pass_star_empty(star):
    counts, _ = count_triangle_based(dah_of(star))
    assert nonzero(counts) == {}


def test_triangle_pass_counter_within_bound(triangle):
    dah = dah_of(triangle)
    _, inner = count_triangle_based(dah)
    assert inner <= triangle_work_bound(dah)


# -- containment ------------------------------------------------------------


def test_pattern1_chain(chain):
    assert count_pattern1(build_edge_degree_table(dah_of(chain))) == 1


def test_pattern1_triangle(triangle):
    assert count_pattern1(build_edge_degree_table(dah_of(triangle))) == 0


def test_pattern1_two_disjoint_chains():
    g = Hypergraph.from_edges(
        [[1, 2], [1, 2, 3], [1, 2, 3, 4], [5, 6], [5, 6, 7], [5, 6, 7, 8]]
    )
    assert count_pattern1(build_edge_degree_table(dah_of(g))) == 2


def test_patterns_2_3():
    g = Hypergraph.from_edges([[1, 2], [1, 2, 3], [1, 2, 4]])
    assert count_patterns_2_3(dah_of(g)) == (1, 0)
    with_blue = Hypergraph.from_edges([[1, 2], [1, 2, 3], [1, 2, 3, 4]])
    # chain triples classify as pattern 1, not 2/3
    assert count_patterns_2_3(dah_of(with_blue)) == (0, 0)
    overlap = Hypergraph.from_edges([[1, 2], [1, 2, 3, 5], [1, 2, 4, 5]])
    assert count_patterns_2_3(dah_of(overlap)) == (0, 1)


def test_patterns_2_3_no_containment(triangle):
    assert count_patterns_2_3(dah_of(triangle)) == (0, 0)


def test_pattern6():
    g = Hypergraph.from_edges([[1, 2], [1, 2, 3], [2, 4]])
    dah = dah_of(g)
    table = build_edge_degree_table(dah)
    partial = {i: 0 for i in range(1, 27)}
    partial.update(count_triangle_based(dah)[0])
    c6 = count_pattern6(table, partial)
    oracle = brute_force_census(g)
    assert c6 == oracle[6] == 1


def test_pattern6_zero_without_containment(triangle, chain):
    for g in (triangle, chain):
        dah = dah_of(g)
        table = build_edge_degree_table(dah)
        partial = {i: 0 for i in range(1, 27)}
        partial.update(count_triangle_based(dah)[0])
        assert count_pattern6(table, partial) == 0


# -- stars ------------------------------------------------------------------


def test_stars_fixture_values(star, triangle, chain):
    assert compute_stars(dah_of(star))[0] == 1
    assert compute_stars(dah_of(triangle))[0] == 0
    assert compute_stars(dah_of(chain))[0] == 1


def test_star_counter_within_bound(star):
    dah = dah_of(star)
    _, iters = compute_stars(dah)
    assert iters <= star_work_bound(dah)


def test_extended_stars_fixture_values(star, chain):
    assert compute_extended_stars(dah_of(star))[0] == 0
    assert compute_extended_stars(dah_of(chain))[0] == 1
    two_children = Hypergraph.from_edges([[1, 2, 3], [1, 2], [2, 3]])
    assert compute_extended_stars(dah_of(two_children))[0] == 2


def test_star_aggregates_match_oracle_combination():
    for seed in range(60):
        g = rand_instance(seed, n_range=(4, 10), m_range=(3, 14))
        dah = dah_of(g)
        oracle = brute_force_census(g)
        assert compute_stars(dah)[0] == sum(oracle[i] for i in range(1, 17))
        ws_expected = (
            (oracle[1] + oracle[3] + oracle[6] + oracle[10])
            + 2
            * (
                oracle[4]
                + oracle[5]
                + oracle[7]
                + oracle[8]
                + oracle[11]
                + oracle[12]
            )
            + 3 * (oracle[13] + oracle[14] + oracle[15] + oracle[16])
        )
        assert compute_extended_stars(dah)[0] == ws_expected


def test_solve_star_counts_star_instance(star):
    assert census_dict(star)[9] == 1


def test_solve_star_counts_pattern10():
    g = Hypergraph.from_edges([[1, 2, 5], [1, 2, 3], [1, 4]])
    counts = census_dict(g)
    assert counts[9] == 0 and counts[10] == 1


def test_solve_star_counts_negative_raises():
    partial = {i: 0 for i in range(1, 17)}
    with pytest.raises(ConsistencyError):
        solve_star_counts(0, 5, partial)


def test_empty_hypergraph_census():
    result = count_all(Hypergraph.from_edges([]))
    assert result.counts.closed_total == 0
    assert result.counts.open_total == 0


# -- open patterns ----------------------------------------------------------


def brute_li(dah):
    """li[e, v] counts edges ending at v whose overlap with e has >= 2
    vertices; every edge contributes a self entry at its own sink."""
    out = {}
    for eid in range(dah.m):
        me = dah.masks[eid]
        for fid in range(dah.m):
            t = me & dah.masks[fid]
            if t.bit_count() >= 2 and (me >> dah.sinks[fid]) & 1:
                key = (eid, dah.sinks[fid])
                out[key] = out.get(key, 0) + 1
    return out


def test_local_indegrees_identity_ordering():
    g = Hypergraph.from_edges([[1, 2, 3], [2, 3]])
    dah = build_dah(g, Ordering.from_inverse(tuple(range(3))))
    li = compute_local_indegrees(dah)
    parent = next(e for e in range(2) if len(g.edges[e]) == 3)
    child = 1 - parent
    sink_rank = dah.sinks[child]
    # the child contributes one entry on top of the parent's self entry
    assert li[(parent, sink_rank)] == 2
    assert li == brute_li(dah)


def test_local_indegrees_disjoint():
    g = Hypergraph.from_edges([[1, 2], [3, 4]])
    dah = dah_of(g)
    # only the self entries (each edge ends inside itself) appear
    for (eid, rank), value in compute_local_indegrees(dah).items():
        assert rank == dah.sinks[eid] and value == 1


def test_local_indegrees_match_brute_force_on_random_instances():
    for seed in range(20):
        dah = dah_of(rand_instance(seed, n_range=(4, 9), m_range=(3, 10)))
        assert compute_local_indegrees(dah) == brute_li(dah)


def test_local_indegrees_sink_outside():
    g = Hypergraph.from_edges([[1, 2], [2, 3]])
    dah = build_dah(g, Ordering.from_inverse(tuple(range(3))))
    li = compute_local_indegrees(dah)
    e12 = next(e for e in range(2) if g.edge_labels(e) == (1, 2))
    e23 = 1 - e12
    # {2,3} ends at 3 which is outside {1,2}: no cross entry
    assert (e12, dah.ordering.position[g.labels.index(3)]) not in li
    assert li[(e23, dah.sinks[e23])] == 1  # self entry only


def test_gamma_fixtures(triangle, path):
    dah = dah_of(triangle)
    assert compute_gamma(dah, compute_local_indegrees(dah))[0] == [3, 0, 0]
    dah = dah_of(path)
    assert compute_gamma(dah, compute_local_indegrees(dah))[0] == [1, 0, 0]
    split = Hypergraph.from_edges([[1, 2, 3, 4], [1, 2], [3, 4]])
    dah = dah_of(split)
    assert compute_gamma(dah, compute_local_indegrees(dah))[0] == [0, 0, 1]


def test_open_counts_fixtures(path, triangle):
    assert nonzero(census_dict(path)) == {25: 1}
    # triangle: gamma[0] = 3 = 3 * c17, so no open pattern remains
    counts = census_dict(triangle)
    assert counts[25] == 0 and counts[26] == 0


def test_open_counts_split_parent():
    counts = census_dict(Hypergraph.from_edges([[1, 2, 3, 4], [1, 2], [3, 4]]))
    assert nonzero(counts) == {21: 1}


def test_derive_open_counts_negative_raises():
    table_stub = type(
        "T", (), {"d_desc": (0,), "d_int": (0,), "d_prime": (0,)}
    )()
    closed = {i: 0 for i in range(1, 21)}
    closed[17] = 1  # forces c25 negative with gamma[0] = 0
    with pytest.raises(ConsistencyError):
        derive_open_counts([0, 0, 0], table_stub, closed)


# -- orchestration ----------------------------------------------------------


def test_count_all_fixture_censuses(triangle, star, path, chain):
    assert nonzero(census_dict(triangle)) == {17: 1}
    assert nonzero(census_dict(star)) == {9: 1}
    assert nonzero(census_dict(path)) == {25: 1}
    assert nonzero(census_dict(chain)) == {1: 1}


def test_count_all_phase_timings(triangle):
    result = count_all(triangle)
    expected = {
        "degeneracy",
        "edge_degrees",
        "triangle",
        "containment",
        "stars",
        "extended_stars",
        "open_patterns",
    }
    assert set(result.timings.millis) == expected
    assert {"triangle_inner", "star_iterations", "extended_star_inner",
            "gamma_inner"} <= set(result.timings.counters)


def test_work_bounds_on_random_instances():
    for seed in range(25):
        g = rand_instance(seed)
        result = count_all(g)
        dah = result.dah
        assert result.timings.counters["triangle_inner"] <= triangle_work_bound(dah)
        assert result.timings.counters["star_iterations"] <= star_work_bound(dah)


@given(st.integers(0, 10_000), st.data())
@settings(max_examples=40, deadline=None)
def test_census_invariant_under_relabeling_and_edge_order(seed, data):
    g = rand_instance(seed, n_range=(4, 9), m_range=(3, 10))
    base = count_all(g).counts.counts

    edges = [list(g.edge_labels(e)) for e in range(g.m)]
    perm_edges = data.draw(st.permutations(edges))
    relabel = data.draw(st.permutations(range(100, 100 + g.n)))
    mapping = dict(zip(sorted({v for e in edges for v in e}), relabel))
    remapped = [[mapping[v] for v in e] for e in perm_edges]
    assert count_all(Hypergraph.from_edges(remapped)).counts.counts == base


def test_pattern_counts_validation():
    with pytest.raises(ValueError):
        PatternCounts((0,) * 5)
    with pytest.raises(ConsistencyError):
        PatternCounts(tuple([0] * 26 + [-1]))
    with pytest.raises(CountOverflowError):
        PatternCounts(tuple([0] * 26 + [2**64]))


def test_pattern_counts_totals(triangle):
    counts = count_all(triangle).counts
    assert counts.closed_total == 1
    assert counts.open_total == 0
    assert counts.as_dict()["17"] == 1
    assert PatternCounts.from_dict(counts.as_dict()) == counts
