from math import comb

import pytest

from hypertri import Hypergraph
from hypertri.errors import SizeGuardError
from conftest import rand_instance
from hypertri.oracle import (
    RandomInstanceSpec,
    brute_force_census,
    brute_force_degeneracy,
    brute_force_edge_degrees,
    brute_force_gamma,
    brute_force_min_max_outdegree,
    generate_random,
    max_distinct_edges,
)


def test_census_fixtures(triangle, star):
    assert brute_force_census(triangle)[17] == 1
    assert brute_force_census(star)[9] == 1
    disjoint = Hypergraph.from_edges([[1, 2], [3, 4], [5, 6], [7, 8]])
    assert brute_force_census(disjoint).counts == (0,) * 27


def test_degeneracy_fixtures(triangle, star):
    assert brute_force_degeneracy(triangle) == 2
    assert brute_force_degeneracy(star) == 1
    assert brute_force_degeneracy(Hypergraph.from_edges([[1, 2]])) == 1


def test_min_max_outdegree_fixtures(triangle, star):
    assert brute_force_min_max_outdegree(triangle) == 2
    assert brute_force_min_max_outdegree(star) == 1
    assert brute_force_min_max_outdegree(Hypergraph.from_edges([[1, 2], [2, 3]])) == 1


def test_edge_degree_fixtures(chain, triangle):
    _, d_anc, _, _ = brute_force_edge_degrees(chain)
    assert d_anc == [2, 1, 0]
    _, _, _, d_int = brute_force_edge_degrees(triangle)
    assert d_int == [2, 2, 2]
    d_prime, _, _, _ = brute_force_edge_degrees(
        Hypergraph.from_edges([[1, 2], [3, 4]])
    )
    assert d_prime == [0, 0]


def test_size_guards():
    wide = Hypergraph.from_edges([[i, i + 1] for i in range(0, 1200, 2)])
    with pytest.raises(SizeGuardError):
        brute_force_census(wide)
    with pytest.raises(SizeGuardError):
        brute_force_degeneracy(wide)
    with pytest.raises(SizeGuardError):
        brute_force_min_max_outdegree(Hypergraph.from_edges([[i, i + 1] for i in range(8)]))


def test_generate_random_deterministic():
    spec = RandomInstanceSpec(seed=7, n_range=(6, 6), m_range=(8, 8), arity_range=(2, 4))
    a = generate_random(spec)
    b = generate_random(spec)
    assert a == b
    assert a.m == 8


def test_generate_random_infeasible():
    n = 4
    cap = comb(n, 2) + comb(n, 3) + comb(n, 4)
    spec = RandomInstanceSpec(
        seed=1, n_range=(n, n), m_range=(cap + 1, cap + 1), arity_range=(2, 4)
    )
    with pytest.raises(ValueError):
        generate_random(spec)
    assert max_distinct_edges(n, (2, 4)) == cap


def test_generated_instances_satisfy_invariants():
    for seed in range(30):
        g = rand_instance(seed)
        assert g.m >= 1
        seen = set()
        for eid in range(g.m):
            edge = g.edges[eid]
            assert len(edge) >= 2
            assert list(edge) == sorted(set(edge))
            key = frozenset(edge)
            assert key not in seen
            seen.add(key)
        assert sum(g.degree(v) for v in range(g.n)) == g.h - g.n


def test_oracle_census_self_identities():
    # the oracle census must satisfy the exact pair-sum identities on its own
    for seed in range(25):
        g = rand_instance(seed, n_range=(4, 10), m_range=(3, 12))
        census = brute_force_census(g)
        d_prime, _, _, _ = brute_force_edge_degrees(g)
        closed = sum(census[i] for i in range(1, 21))
        opened = sum(census[i] for i in range(21, 27))
        assert opened + 3 * closed == sum(comb(d, 2) for d in d_prime)
        gamma = brute_force_gamma(g)
        assert gamma[2] == census[21]
        assert gamma[1] == census[23]
        assert gamma[0] == census[25] + 3 * census[17] + 2 * census[18] + census[19]


def test_oracle_census_permutation_invariant(triangle):
    edges = [[1, 2], [2, 3], [1, 3]]
    rotated = Hypergraph.from_edges([edges[2], edges[0], edges[1]])
    relabeled = Hypergraph.from_edges([[10, 20], [20, 30], [10, 30]])
    assert brute_force_census(rotated).counts == brute_force_census(triangle).counts
    assert brute_force_census(relabeled).counts == brute_force_census(triangle).counts
