"""Brute-force reference implementations and random-instance generation.

Everything here is deliberately naive - direct definitions with no shared
machinery with the fast paths beyond the signature table - and is guarded by
hard size limits so a misuse cannot silently dominate test time.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import permutations
from math import comb

from .core import Hypergraph
from .counters import PatternCounts
from .errors import SizeGuardError
from .patterns import TABLE, signature_bits

__all__ = [
    "RandomInstanceSpec",
    "brute_force_census",
    "brute_force_degeneracy",
    "brute_force_min_max_outdegree",
    "brute_force_edge_degrees",
    "brute_force_gamma",
    "generate_random",
]

CENSUS_EDGE_LIMIT = 500
DEGENERACY_VERTEX_LIMIT = 20
ORDERING_VERTEX_LIMIT = 7
EDGE_DEGREE_LIMIT = 10_000


def brute_force_census(g: Hypergraph) -> PatternCounts:
    """Classify every unordered edge triple directly."""
    if g.m > CENSUS_EDGE_LIMIT:
        raise SizeGuardError(f"census oracle refuses m={g.m} > {CENSUS_EDGE_LIMIT}")
    masks = g.edge_masks()
    counts = [0] * 27
    for i in range(g.m):
        mi = masks[i]
        for j in range(i + 1, g.m):
            mj = masks[j]
            for k in range(j + 1, g.m):
                pid = TABLE.classify(signature_bits(mi, mj, masks[k]))
                if pid is not None:
                    counts[pid] += 1
    return PatternCounts(tuple(counts))


def brute_force_degeneracy(g: Hypergraph) -> int:
    """Maximum over vertex subsets of the minimum degree after trimming.

    Trimming restricts every edge to the subset and keeps restrictions of
    size >= 2 with multiplicity (two different edges with equal trims both
    count toward degrees).
    """
    if g.n > DEGENERACY_VERTEX_LIMIT:
        raise SizeGuardError(
            f"degeneracy oracle refuses n={g.n} > {DEGENERACY_VERTEX_LIMIT}"
        )
    masks = g.edge_masks()
    best = 0
    for subset in range(1, 1 << g.n):
        degree = [0] * g.n
        for me in masks:
            t = me & subset
            if t.bit_count() >= 2:
                while t:
                    low = t & -t
                    degree[low.bit_length() - 1] += 1
                    t ^= low
        sub = subset
        minimum = None
        while sub:
            low = sub & -sub
            d = degree[low.bit_length() - 1]
            if minimum is None or d < minimum:
                minimum = d
            sub ^= low
        if minimum is not None and minimum > best:
            best = minimum
    return best


def brute_force_min_max_outdegree(g: Hypergraph) -> int:
    """Exact minimum over all vertex orderings of the maximum out-degree."""
    if g.n > ORDERING_VERTEX_LIMIT:
        raise SizeGuardError(
            f"ordering oracle refuses n={g.n} > {ORDERING_VERTEX_LIMIT}"
        )
    if g.m == 0:
        return 0
    best = None
    for perm in permutations(range(g.n)):
        dout = [0] * g.n
        worst = 0
        for edge in g.edges:
            sink = max(edge, key=lambda v: perm[v])
            for v in edge:
                if v != sink:
                    dout[v] += 1
                    if dout[v] > worst:
                        worst = dout[v]
            if best is not None and worst >= best:
                break
        if best is None or worst < best:
            best = worst
    return best


def brute_force_edge_degrees(
    g: Hypergraph,
) -> tuple[list[int], list[int], list[int], list[int]]:
    """(d_prime, d_anc, d_desc, d_int) by direct pairwise set comparison."""
    if g.m > EDGE_DEGREE_LIMIT:
        raise SizeGuardError(f"edge-degree oracle refuses m={g.m} > {EDGE_DEGREE_LIMIT}")
    masks = g.edge_masks()
    d_prime = [0] * g.m
    d_anc = [0] * g.m
    d_desc = [0] * g.m
    for i in range(g.m):
        mi = masks[i]
        for j in range(i + 1, g.m):
            mj = masks[j]
            if not mi & mj:
                continue
            d_prime[i] += 1
            d_prime[j] += 1
            if mi & ~mj == 0:
                d_anc[i] += 1
                d_desc[j] += 1
            elif mj & ~mi == 0:
                d_anc[j] += 1
                d_desc[i] += 1
    d_int = [p - a - d for p, a, d in zip(d_prime, d_anc, d_desc)]
    return d_prime, d_anc, d_desc, d_int


def brute_force_gamma(g: Hypergraph) -> list[int]:
    """Complement counts by direct tuple enumeration: (e1, {e2,e3}) with both
    e2 and e3 meeting e1, e1 covered by their union, and empty triple
    intersection; indexed by how many of e2, e3 are strict subsets of e1."""
    if g.m > CENSUS_EDGE_LIMIT:
        raise SizeGuardError(f"gamma oracle refuses m={g.m} > {CENSUS_EDGE_LIMIT}")
    masks = g.edge_masks()
    gamma = [0, 0, 0]
    for e1 in range(g.m):
        m1 = masks[e1]
        for e2 in range(g.m):
            if e2 == e1:
                continue
            m2 = masks[e2]
            if not m1 & m2:
                continue
            for e3 in range(e2 + 1, g.m):
                if e3 == e1:
                    continue
                m3 = masks[e3]
                if not m1 & m3:
                    continue
                if m1 & m2 & m3:
                    continue
                if m1 & ~(m2 | m3):
                    continue
                gamma[(m2 & ~m1 == 0) + (m3 & ~m1 == 0)] += 1
    return gamma


@dataclass(frozen=True)
class RandomInstanceSpec:
    """Deterministic description of a random test hypergraph: the same spec
    always generates the same instance."""

    seed: int
    n_range: tuple[int, int]
    m_range: tuple[int, int]
    arity_range: tuple[int, int] = (2, 5)

    def __post_init__(self):
        for name, (lo, hi) in (
            ("n_range", self.n_range),
            ("m_range", self.m_range),
            ("arity_range", self.arity_range),
        ):
            if lo > hi or lo < 0:
                raise ValueError(f"bad {name}: ({lo}, {hi})")
        if self.arity_range[0] < 2:
            raise ValueError("arity must be at least 2")


def max_distinct_edges(n: int, arity_range: tuple[int, int]) -> int:
    """How many distinct edges exist for the given vertex count and arities."""
    lo, hi = arity_range
    return sum(comb(n, a) for a in range(lo, min(hi, n) + 1))


def generate_random(spec: RandomInstanceSpec) -> Hypergraph:
    """Uniform random distinct vertex subsets, deduplicated, arity >= 2.

    Raises ValueError when the drawn (n, m) cannot host m distinct edges.
    """
    rng = random.Random(spec.seed)
    n = rng.randint(*spec.n_range)
    m = rng.randint(*spec.m_range)
    if n < 2:
        raise ValueError(f"need at least two vertices, drew n={n}")
    capacity = max_distinct_edges(n, spec.arity_range)
    if m > capacity:
        raise ValueError(
            f"cannot place {m} distinct edges on {n} vertices "
            f"with arities {spec.arity_range} (max {capacity})"
        )
    lo, hi = spec.arity_range
    hi = min(hi, n)
    edges: set[frozenset[int]] = set()
    ordered: list[tuple[int, ...]] = []
    while len(edges) < m:
        arity = rng.randint(lo, hi)
        edge = frozenset(rng.sample(range(n), arity))
        if edge not in edges:
            edges.add(edge)
            ordered.append(tuple(sorted(edge)))
    return Hypergraph.from_edges(ordered)
