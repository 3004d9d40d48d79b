"""The exact census pipeline: enumeration passes plus closed-form identities.

Pipeline over an oriented hypergraph:

* a triangle-style pass over out-neighborhoods counts every pattern with at
  least two blue regions (ids {4,5,7,8} and 11..20), deduplicated through a
  canonical witness vertex triple;
* containment counts come from the ancestor/descendant tables: id 1 by a
  product formula, ids {2,3} by enumerating ancestor pairs, id 6 by
  subtracting known counts from the ancestors-times-intersections sum;
* two independent linear combinations - the number of edge triples sharing a
  vertex (S) and a weighted extended-star count (WS) - pin down ids 9 and 10;
* the open patterns 21..26 follow from complement counts (tuples where one
  edge is exactly covered by two others meeting it disjointly) and pair-sum
  identities over the degree tables.

Every derived count must be non-negative and every identity exact; a
violation raises :class:`ConsistencyError` naming the failing quantity.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from math import comb
from typing import Optional

from .core import Hypergraph
from .edge_degrees import EdgeDegreeTable, build_edge_degree_table, stream_ancestors
from .errors import ConsistencyError, CountOverflowError
from .orientation import OrientedHypergraph, build_dah, degeneracy_order
from .patterns import TABLE, WITNESS_IDS, signature_bits, witness_positions

__all__ = [
    "PatternCounts",
    "PhaseTimings",
    "CensusResult",
    "count_triangle_based",
    "count_pattern1",
    "count_patterns_2_3",
    "count_pattern6",
    "compute_stars",
    "compute_extended_stars",
    "solve_star_counts",
    "compute_local_indegrees",
    "compute_gamma",
    "derive_open_counts",
    "count_all",
    "triangle_work_bound",
    "star_work_bound",
]

U64_MAX = 2**64 - 1

_LOOKUP = TABLE.lookup
_IS_TRIANGLE_TARGET = tuple(pid in WITNESS_IDS for pid in range(27))


def _ensure_u64(value: int, what: str) -> int:
    if value > U64_MAX:
        raise CountOverflowError(f"{what} = {value} exceeds unsigned 64-bit range")
    return value


@dataclass(frozen=True)
class PatternCounts:
    """The census vector c(1..26)."""

    counts: tuple[int, ...]  # length 27; index 0 unused

    def __post_init__(self):
        if len(self.counts) != 27:
            raise ValueError("expected 27 entries (index 0 unused)")
        for i, c in enumerate(self.counts):
            if c < 0:
                raise ConsistencyError(f"negative count c({i}) = {c}")
            _ensure_u64(c, f"c({i})")

    def __getitem__(self, pattern_id: int) -> int:
        if not 1 <= pattern_id <= 26:
            raise ValueError(f"pattern id {pattern_id} outside 1..26")
        return self.counts[pattern_id]

    @property
    def closed_total(self) -> int:
        return sum(self.counts[1:21])

    @property
    def open_total(self) -> int:
        return sum(self.counts[21:27])

    def as_dict(self) -> dict[str, int]:
        return {str(i): self.counts[i] for i in range(1, 27)}

    @classmethod
    def from_dict(cls, mapping: dict) -> "PatternCounts":
        counts = [0] * 27
        for key, value in mapping.items():
            counts[int(key)] = int(value)
        return cls(tuple(counts))


@dataclass
class PhaseTimings:
    """Per-phase wall time (ms) and work counters from the census run."""

    millis: dict[str, float] = field(default_factory=dict)
    counters: dict[str, int] = field(default_factory=dict)


@dataclass
class CensusResult:
    counts: PatternCounts
    kappa: int
    timings: PhaseTimings
    dah: OrientedHypergraph
    degree_table: EdgeDegreeTable


# ---------------------------------------------------------------------------
# Triangle-based patterns


def count_triangle_based(dah: OrientedHypergraph) -> tuple[dict[int, int], int]:
    """Counts of the witness-carrying patterns ({4,5,7,8} and 11..20).

    For a starting vertex u, an out-edge e1 of u, a later vertex v of e1, and
    out-edges e2 of u, e3 of v, the triple (e1,e2,e3) is tallied only when
    (u, v) are the two earliest witness vertices and the third lies in e2∩e3;
    that fires exactly once per unordered edge triple.
    """
    masks = dah.masks
    out_edges = dah.out_edges
    lookup = _LOOKUP
    counts = {pid: 0 for pid in range(4, 21) if _IS_TRIANGLE_TARGET[pid]}
    inner = 0
    for u in range(dah.n):
        out_u = out_edges[u]
        if not out_u:
            continue
        low_u = (1 << u) - 1
        for e1 in out_u:
            m1 = masks[e1]
            later = [v for v in dah.members[e1] if v > u]
            if not later:
                continue
            for e2 in out_u:
                if e2 == e1:
                    continue
                m2 = masks[e2]
                p12 = m1 & m2
                for v in later:
                    out_v = out_edges[v]
                    if not out_v:
                        continue
                    inner += len(out_v)
                    vbit = 1 << v
                    for e3 in out_v:
                        if e3 == e1 or e3 == e2:
                            continue
                        m3 = masks[e3]
                        p23 = m2 & m3
                        if not p23:
                            continue  # targets intersect pairwise
                        red = p12 & m3
                        b12 = p12 ^ red
                        b13 = m1 & m3 & ~m2
                        b23 = p23 & ~m1
                        if b12:
                            nb = 1 + (b13 != 0) + (b23 != 0)
                        else:
                            nb = (b13 != 0) + (b23 != 0)
                        if nb < 2:
                            continue  # one blue or fewer: no witness pattern
                        # witness parts: the blues, plus the shared core when
                        # only two blues exist (then the core is non-empty)
                        if nb == 3:
                            if (b12 | b13 | b23) & low_u:
                                continue
                            w0 = (b12 & -b12).bit_length() - 1
                            w1 = (b13 & -b13).bit_length() - 1
                            w2 = (b23 & -b23).bit_length() - 1
                        else:
                            if (b12 | b13 | b23 | red) & low_u:
                                continue
                            w0 = (red & -red).bit_length() - 1
                            if b12:
                                w1 = (b12 & -b12).bit_length() - 1
                                rest = b13 | b23
                            else:
                                w1 = (b13 & -b13).bit_length() - 1
                                rest = b23
                            w2 = (rest & -rest).bit_length() - 1
                        if w0 > w1:
                            w0, w1 = w1, w0
                        if w1 > w2:
                            w1, w2 = w2, w1
                            if w0 > w1:
                                w0, w1 = w1, w0
                        if w0 != u or w1 != v or not (p23 >> w2) & 1:
                            continue
                        pid = lookup[
                            (m1 & ~(m2 | m3) != 0)
                            | ((m2 & ~(m1 | m3) != 0) << 1)
                            | ((m3 & ~(m1 | m2) != 0) << 2)
                            | ((b12 != 0) << 3)
                            | ((b13 != 0) << 4)
                            | ((b23 != 0) << 5)
                            | ((red != 0) << 6)
                        ]
                        counts[pid] += 1
    return counts, inner


def triangle_work_bound(dah: OrientedHypergraph) -> int:
    """Upper bound on the triangle pass's innermost iterations."""
    dout = dah.dout
    return sum(sum(dout[u] for u in members) ** 2 for members in dah.members)


# ---------------------------------------------------------------------------
# Containment-based patterns


def count_pattern1(table: EdgeDegreeTable) -> int:
    """Chains e1 ⊂ e2 ⊂ e3: per middle edge, descendants times ancestors."""
    return _ensure_u64(
        sum(d * a for d, a in zip(table.d_desc, table.d_anc)), "c(1)"
    )


def count_patterns_2_3(dah: OrientedHypergraph) -> tuple[int, int]:
    """Patterns where one edge lies inside two others: classify each pair of
    ancestors of each edge. Chain triples classify as id 1 and are skipped."""
    masks = dah.masks
    c2 = c3 = 0
    for eid in range(dah.m):
        ancestors = list(stream_ancestors(dah, eid))
        if len(ancestors) < 2:
            continue
        m1 = masks[eid]
        for i, f2 in enumerate(ancestors):
            m2 = masks[f2]
            for f3 in ancestors[i + 1 :]:
                pid = _LOOKUP[signature_bits(m1, m2, masks[f3])]
                if pid == 2:
                    c2 += 1
                elif pid == 3:
                    c3 += 1
    return c2, c3


def count_pattern6(table: EdgeDegreeTable, partial: dict[int, int]) -> int:
    """Single containment with the third edge meeting only the shared core.

    The ancestors-times-proper-intersections sum counts ids {6,7,8} once and
    ids {4,5} twice; subtracting the known counts isolates c(6).
    """
    rhs = sum(a * i for a, i in zip(table.d_anc, table.d_int))
    c6 = rhs - partial[7] - partial[8] - 2 * (partial[4] + partial[5])
    if c6 < 0:
        raise ConsistencyError(
            f"c(6) = {c6} < 0 from ancestor-intersection sum {rhs}"
        )
    return _ensure_u64(c6, "c(6)")


# ---------------------------------------------------------------------------
# Star aggregates


def compute_stars(dah: OrientedHypergraph) -> tuple[int, int]:
    """Number of edge triples with a non-empty triple intersection (= the sum
    of counts of ids 1..16).

    Triples where some edge ends inside the shared region all share that
    sink, so they are counted there by binomials over in/out degrees; the
    remaining triples appear among the out-edges of the shared region's
    first vertex.
    """
    masks = dah.masks
    sinks = dah.sinks
    total = 0
    iters = 0
    for v in range(dah.n):
        iters += 1
        din = dah.din[v]
        dout = dah.dout[v]
        total += comb(din, 3) + comb(din, 2) * dout + din * comb(dout, 2)
        out_v = dah.out_edges[v]
        k = len(out_v)
        if k < 3:
            continue
        vbit = 1 << v
        for i in range(k):
            mi = masks[out_v[i]]
            for j in range(i + 1, k):
                mij = mi & masks[out_v[j]]
                if not mij:
                    iters += k - j - 1
                    continue
                for l in range(j + 1, k):
                    iters += 1
                    t = mij & masks[out_v[l]]
                    if not t or t & -t != vbit:
                        continue
                    if (
                        (t >> sinks[out_v[i]]) & 1
                        or (t >> sinks[out_v[j]]) & 1
                        or (t >> sinks[out_v[l]]) & 1
                    ):
                        continue
                    total += 1
    return _ensure_u64(total, "star count"), iters


def star_work_bound(dah: OrientedHypergraph) -> int:
    """Upper bound on the star pass's iteration counter."""
    return dah.n + sum(d**3 for d in dah.dout)


def compute_extended_stars(dah: OrientedHypergraph) -> tuple[int, int]:
    """Weighted extended-star count: the number of tuples ({e1,e2}, e3) with
    e1∩e2∩e3 non-empty and e1∩e2 not inside e3.

    Tuples split by where e3 ends:

    * sink(e3) in e1∩e2: summing in-degrees over e1∩e2 at the pair's first
      shared vertex counts them, after subtracting edges (the pair members
      included) that span e1∩e2 and end inside it;
    * otherwise, if both pair members end at the single shared vertex v, e3
      is found among v's out-edges;
    * if exactly one pair member ends at the single shared vertex, the tuple
      is found from that sink's in/out lists;
    * else all three edges are out-edges of the shared region's first vertex.
    """
    masks = dah.masks
    sinks = dah.sinks
    din = dah.din
    out_edges = dah.out_edges
    ws = 0
    iters = 0
    for u in range(dah.n):
        out_u = out_edges[u]
        k = len(out_u)
        if k < 2:
            continue
        ubit = 1 << u
        for i in range(k):
            e1 = out_u[i]
            m1 = masks[e1]
            s1 = sinks[e1]
            for j in range(i + 1, k):
                e2 = out_u[j]
                m2 = masks[e2]
                p = m1 & m2
                if p & -p == ubit and p != ubit:
                    # sink(e3) inside the pair intersection
                    t = p
                    while t:
                        low = t & -t
                        ws += din[low.bit_length() - 1]
                        t ^= low
                    for f in out_u:
                        iters += 1
                        if p & ~masks[f] == 0 and (p >> sinks[f]) & 1:
                            ws -= 1
                    if s1 == sinks[e2]:
                        vbit = 1 << s1
                        for f in out_edges[s1]:
                            iters += 1
                            if masks[f] & p == vbit:
                                ws += 1
                # remaining tuples whose three edges start together
                for idx3 in range(k):
                    if idx3 == i or idx3 == j:
                        continue
                    iters += 1
                    e3 = out_u[idx3]
                    m3 = masks[e3]
                    t = p & m3
                    if (
                        t
                        and t & -t == ubit
                        and p & ~m3
                        and not (p >> sinks[e3]) & 1
                    ):
                        ws += 1
    # pairs whose earlier member ends at the single shared vertex
    for v in range(dah.n):
        ins = dah.in_edges[v]
        outs = out_edges[v]
        if not ins or len(outs) < 2:
            continue
        vbit = 1 << v
        for f in ins:
            mf = masks[f]
            for g in outs:
                pfg = mf & masks[g]
                if pfg == vbit:
                    continue
                for e3 in outs:
                    if e3 == g:
                        continue
                    iters += 1
                    m3 = masks[e3]
                    if (
                        pfg & m3 == vbit
                        and pfg & ~m3
                        and not (pfg >> sinks[e3]) & 1
                    ):
                        ws += 1
    return _ensure_u64(ws, "extended-star count"), iters


def solve_star_counts(
    s_total: int, ws_total: int, partial: dict[int, int]
) -> tuple[int, int]:
    """Recover c(9) and c(10) from the two star aggregates.

    Requires every other count in 1..16 to be known already.
    """
    c10 = (
        ws_total
        - (partial[1] + partial[3] + partial[6])
        - 2
        * (
            partial[4]
            + partial[5]
            + partial[7]
            + partial[8]
            + partial[11]
            + partial[12]
        )
        - 3 * (partial[13] + partial[14] + partial[15] + partial[16])
    )
    if c10 < 0:
        raise ConsistencyError(f"c(10) = {c10} < 0 from extended-star total {ws_total}")
    known = sum(partial[i] for i in range(1, 17) if i != 9 and i != 10)
    c9 = s_total - known - c10
    if c9 < 0:
        raise ConsistencyError(f"c(9) = {c9} < 0 from star total {s_total}")
    return _ensure_u64(c9, "c(9)"), _ensure_u64(c10, "c(10)")


# ---------------------------------------------------------------------------
# Open patterns


def compute_local_indegrees(dah: OrientedHypergraph) -> dict[tuple[int, int], int]:
    """li[e, v]: edges ending at v that share an earlier vertex with e.

    Equivalently, for v in e: the number of edges f with sink v whose
    intersection with e has at least two vertices.
    """
    masks = dah.masks
    sinks = dah.sinks
    li: dict[tuple[int, int], int] = {}
    for eid in range(dah.m):
        me = masks[eid]
        for u in dah.members[eid]:
            ubit = 1 << u
            for f in dah.out_edges[u]:
                t = me & masks[f]
                if t & -t == ubit and (me >> sinks[f]) & 1:
                    key = (eid, sinks[f])
                    li[key] = li.get(key, 0) + 1
    return li


def compute_gamma(
    dah: OrientedHypergraph, li: dict[tuple[int, int], int]
) -> tuple[list[int], int]:
    """Complement counts: tuples (e1, {e2,e3}) with e1 covered by e2 ∪ e3,
    empty triple intersection, and both e2, e3 meeting e1; indexed by how
    many of e2, e3 are strict subsets of e1.

    Three disjoint discovery routes, by how e2 and e3 attach to e1:

    1. both are out-edges of vertices of e1 at the first vertex of their
       intersection with e1 (those first vertices always differ here, so
       scanning unordered vertex pairs of e1 finds each tuple once);
    2. e3 meets e1 in a single vertex v which is e3's sink; then e2 covers
       all of e1 but v, and the e3 candidates are counted as din(v) minus
       the edges ending at v that also meet e1 earlier;
    3. both attach that way, which forces |e1| = 2.
    """
    masks = dah.masks
    din = dah.din
    out_edges = dah.out_edges
    gamma = [0, 0, 0]
    iters = 0
    for eid in range(dah.m):
        m1 = masks[eid]
        members = dah.members[eid]
        arity = len(members)
        # both reachable
        for a in range(arity):
            u = members[a]
            ubit = 1 << u
            starters = [
                (masks[f], m1 & masks[f])
                for f in out_edges[u]
                if (m1 & masks[f]) & -(m1 & masks[f]) == ubit
            ]
            if not starters:
                continue
            for b in range(a + 1, arity):
                v = members[b]
                vbit = 1 << v
                out_v = out_edges[v]
                if not out_v:
                    continue
                iters += len(starters) * len(out_v)
                for m2, t2 in starters:
                    for f3 in out_v:
                        m3 = masks[f3]
                        t3 = m1 & m3
                        if t3 & -t3 != vbit:
                            continue
                        if m2 & m3 & m1:
                            continue  # non-empty triple intersection
                        if m1 & ~(m2 | m3):
                            continue  # e1 not covered
                        idx = (m2 & ~m1 == 0) + (m3 & ~m1 == 0)
                        gamma[idx] += 1
        # e2 reachable, e3 ending in the one vertex of e1 it touches
        for u in members:
            ubit = 1 << u
            for f in out_edges[u]:
                iters += 1
                m2 = masks[f]
                t = m1 & m2
                if t & -t != ubit:
                    continue
                missing = m1 & ~m2
                if missing == 0 or missing & (missing - 1):
                    continue  # e2 must cover all of e1 except one vertex
                v = missing.bit_length() - 1
                idx = 1 if m2 & ~m1 == 0 else 0
                gamma[idx] += din[v] - li.get((eid, v), 0)
        # neither reachable: only possible when e1 is a pair
        if arity == 2:
            u, v = members
            gamma[0] += (din[u] - li.get((eid, u), 0)) * (
                din[v] - li.get((eid, v), 0)
            )
    for i, value in enumerate(gamma):
        if value < 0:
            raise ConsistencyError(f"complement count gamma[{i}] = {value} < 0")
        _ensure_u64(value, f"gamma[{i}]")
    return gamma, iters


def derive_open_counts(
    gamma: list[int], table: EdgeDegreeTable, closed: dict[int, int]
) -> dict[int, int]:
    """Open-pattern counts 21..26 from complement counts and pair sums."""
    c21 = gamma[2]
    c23 = gamma[1]
    c25 = gamma[0] - 3 * closed[17] - 2 * closed[18] - closed[19]
    if c25 < 0:
        raise ConsistencyError(f"c(25) = {c25} < 0 from gamma[0] = {gamma[0]}")

    desc_pairs = sum(comb(d, 2) for d in table.d_desc)
    c22 = desc_pairs - closed[1] - closed[4] - closed[5] - c21
    if c22 < 0:
        raise ConsistencyError(f"c(22) = {c22} < 0 from descendant-pair sum {desc_pairs}")

    desc_int = sum(d * i for d, i in zip(table.d_desc, table.d_int))
    c24 = (
        desc_int
        - 2 * (closed[2] + closed[3])
        - closed[6]
        - closed[7]
        - closed[8]
        - c23
    )
    if c24 < 0:
        raise ConsistencyError(
            f"c(24) = {c24} < 0 from descendant-intersection sum {desc_int}"
        )

    neighbor_pairs = sum(comb(d, 2) for d in table.d_prime)
    closed_total = sum(closed[i] for i in range(1, 21))
    c26 = neighbor_pairs - 3 * closed_total - (c21 + c22 + c23 + c24 + c25)
    if c26 < 0:
        raise ConsistencyError(
            f"c(26) = {c26} < 0 from neighbor-pair sum {neighbor_pairs}"
        )
    out = {21: c21, 22: c22, 23: c23, 24: c24, 25: c25, 26: c26}
    for pid, value in out.items():
        _ensure_u64(value, f"c({pid})")
    return out


# ---------------------------------------------------------------------------
# Orchestration


def count_all(g: Hypergraph) -> CensusResult:
    """Run the full pipeline and return the 26-entry census.

    Verifies the exact pipeline identities before returning; any violation
    raises :class:`ConsistencyError` naming the failing quantity.
    """
    timings = PhaseTimings()

    def phase(name: str, start: float) -> float:
        now = time.perf_counter()
        timings.millis[name] = (now - start) * 1000.0
        return now

    t = time.perf_counter()
    ordering, kappa = degeneracy_order(g)
    dah = build_dah(g, ordering)
    if dah.max_outdegree != kappa:
        raise ConsistencyError(
            f"peeling degeneracy {kappa} != oriented max out-degree {dah.max_outdegree}"
        )
    t = phase("degeneracy", t)

    table = build_edge_degree_table(dah)
    t = phase("edge_degrees", t)

    triangle_counts, triangle_inner = count_triangle_based(dah)
    timings.counters["triangle_inner"] = triangle_inner
    t = phase("triangle", t)

    counts = {pid: 0 for pid in range(1, 27)}
    counts.update(triangle_counts)
    counts[1] = count_pattern1(table)
    counts[2], counts[3] = count_patterns_2_3(dah)
    counts[6] = count_pattern6(table, counts)
    t = phase("containment", t)

    s_total, star_iters = compute_stars(dah)
    timings.counters["star_iterations"] = star_iters
    t = phase("stars", t)

    ws_total, ws_iters = compute_extended_stars(dah)
    timings.counters["extended_star_inner"] = ws_iters
    t = phase("extended_stars", t)

    counts[9], counts[10] = solve_star_counts(s_total, ws_total, counts)

    li = compute_local_indegrees(dah)
    gamma, gamma_iters = compute_gamma(dah, li)
    timings.counters["gamma_inner"] = gamma_iters
    counts.update(derive_open_counts(gamma, table, counts))
    t = phase("open_patterns", t)

    # Exact cross-check: each edge's intersecting pairs count open patterns
    # once and closed patterns three times.
    neighbor_pairs = sum(comb(d, 2) for d in table.d_prime)
    closed_total = sum(counts[i] for i in range(1, 21))
    open_total = sum(counts[i] for i in range(21, 27))
    if open_total + 3 * closed_total != neighbor_pairs:
        raise ConsistencyError(
            "total-count identity violated: "
            f"{open_total} + 3*{closed_total} != {neighbor_pairs}"
        )
    if sum(counts[i] for i in range(1, 17)) != s_total:
        raise ConsistencyError(
            f"star identity violated: sum c(1..16) != {s_total}"
        )

    vector = PatternCounts(tuple([0] + [counts[i] for i in range(1, 27)]))
    return CensusResult(vector, kappa, timings, dah, table)
