"""Degeneracy ordering by minimum-degree peeling, and the oriented hypergraph.

Peeling removes the minimum-degree vertex (lowest internal id on ties) and
trims it out of its edges; an edge that drops below two remaining vertices is
retired and stops contributing to degrees. The largest degree seen at a peel
step equals the hypergraph degeneracy, and reading every edge as a list
sorted by peel order yields an orientation whose maximum out-degree attains
that value.

A vertex's in-degree counts edges whose order-last vertex ("sink") it is; its
outlist holds the incident edges where it is not the sink. The oriented view
relabels vertices by peel rank, so edge bitmasks live in an order-encoded bit
space: the lowest set bit of any vertex subset is its order-first element
("source"), the highest is its sink.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import Hypergraph

__all__ = [
    "Ordering",
    "OrientedHypergraph",
    "degeneracy_order",
    "build_dah",
    "source_vertex",
    "sink_vertex",
]


@dataclass(frozen=True)
class Ordering:
    """A bijection between vertices and peel ranks (0 = peeled first)."""

    position: tuple[int, ...]  # vertex id -> rank
    inverse: tuple[int, ...]  # rank -> vertex id

    def __post_init__(self):
        n = len(self.position)
        if sorted(self.position) != list(range(n)) or len(self.inverse) != n:
            raise ValueError("ordering is not a bijection on 0..n-1")

    @classmethod
    def from_inverse(cls, inverse: Sequence[int]) -> "Ordering":
        position = [0] * len(inverse)
        for rank, v in enumerate(inverse):
            position[v] = rank
        return cls(tuple(position), tuple(inverse))


def degeneracy_order(g: Hypergraph) -> tuple[Ordering, int]:
    """Minimum-degree peeling order and the degeneracy it certifies.

    Returns ``(ordering, kappa)`` where ``kappa`` is the maximum, over peel
    steps, of the peeled vertex's current degree. Ties on degree break toward
    the lowest vertex id, so the order is reproducible. An empty hypergraph
    yields an empty ordering and ``kappa = 0``.
    """
    n = g.n
    degree = [g.degree(v) for v in range(n)] if n else []
    remaining = [len(e) for e in g.edges]
    alive = [True] * g.m
    peeled = [False] * n
    heap: list[tuple[int, int]] = [(degree[v], v) for v in range(n)]
    heapq.heapify(heap)

    order: list[int] = []
    kappa = 0
    while heap:
        d, v = heapq.heappop(heap)
        if peeled[v] or degree[v] != d:
            continue  # stale entry
        peeled[v] = True
        order.append(v)
        if d > kappa:
            kappa = d
        for eid in g.incident_edges(v):
            if not alive[eid]:
                continue
            remaining[eid] -= 1
            if remaining[eid] < 2:
                alive[eid] = False
                for w in g.edges[eid]:
                    if not peeled[w]:
                        degree[w] -= 1
                        heapq.heappush(heap, (degree[w], w))
    return Ordering.from_inverse(order), kappa


class OrientedHypergraph:
    """A hypergraph read through a vertex ordering, in rank coordinates.

    All per-vertex arrays here are indexed by rank (= position in the
    ordering), and edge masks use bit ``r`` for the vertex of rank ``r``.
    ``members[e]`` lists an edge's vertex ranks ascending, so ``members[e][0]``
    is the edge's source and ``members[e][-1]`` its sink.
    """

    __slots__ = (
        "base",
        "ordering",
        "n",
        "m",
        "masks",
        "members",
        "sinks",
        "din",
        "dout",
        "out_edges",
        "in_edges",
        "max_outdegree",
    )

    def __init__(self, base: Hypergraph, ordering: Ordering):
        self.base = base
        self.ordering = ordering
        self.n = base.n
        self.m = base.m
        position = ordering.position

        members: list[tuple[int, ...]] = []
        masks: list[int] = []
        sinks: list[int] = []
        din = [0] * self.n
        dout = [0] * self.n
        outs: list[list[int]] = [[] for _ in range(self.n)]
        ins: list[list[int]] = [[] for _ in range(self.n)]
        for eid, edge in enumerate(base.edges):
            ranks = sorted(position[v] for v in edge)
            members.append(tuple(ranks))
            mask = 0
            for r in ranks:
                mask |= 1 << r
            masks.append(mask)
            sink = ranks[-1]
            sinks.append(sink)
            din[sink] += 1
            ins[sink].append(eid)
            for r in ranks[:-1]:
                dout[r] += 1
                outs[r].append(eid)

        self.members = members
        self.masks = masks
        self.sinks = sinks
        self.din = din
        self.dout = dout
        self.out_edges = [tuple(x) for x in outs]
        self.in_edges = [tuple(x) for x in ins]
        self.max_outdegree = max(dout, default=0)

    # The degeneracy, when the ordering came from min-degree peeling.
    @property
    def kappa(self) -> int:
        return self.max_outdegree

    def edge_masks(self) -> list[int]:
        return self.masks

    def source_of(self, eid: int) -> int:
        """Rank of the order-first vertex of edge ``eid``."""
        return self.members[eid][0]

    def sink_of(self, eid: int) -> int:
        """Rank of the order-last vertex of edge ``eid``."""
        return self.sinks[eid]

    def vertex_of_rank(self, rank: int) -> int:
        return self.ordering.inverse[rank]


def build_dah(g: Hypergraph, ordering: Ordering) -> OrientedHypergraph:
    """Orient ``g`` by ``ordering``; raises ValueError on a non-bijection."""
    if len(ordering.position) != g.n:
        raise ValueError(
            f"ordering covers {len(ordering.position)} vertices, hypergraph has {g.n}"
        )
    return OrientedHypergraph(g, ordering)


def source_vertex(vertices: Iterable[int], ordering: Ordering) -> int:
    """The order-first vertex of a non-empty vertex set."""
    best = min(((ordering.position[v], v) for v in vertices), default=None)
    if best is None:
        raise ValueError("source of an empty vertex set")
    return best[1]


def sink_vertex(vertices: Iterable[int], ordering: Ordering) -> int:
    """The order-last vertex of a non-empty vertex set."""
    best = max(((ordering.position[v], v) for v in vertices), default=None)
    if best is None:
        raise ValueError("sink of an empty vertex set")
    return best[1]
