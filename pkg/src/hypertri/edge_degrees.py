"""Per-hyperedge degree computation via the orientation.

The degree ``d'(e)`` of a hyperedge is the number of other edges meeting it.
Every intersecting pair (e, f) is discovered through exactly one lens: either
f's sink lies inside e (then f is counted by summing in-degrees over e's
vertices), or it does not and f is found in the outlist of the order-first
vertex of e∩f. The in-degree sum also picks up e itself once, at e's own
sink, so one is subtracted per edge.

Containment pairs are found the same way: an ancestor f of e always shows up
in the outlist of e's source vertex.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Iterator, TextIO

from .errors import ConsistencyError
from .orientation import OrientedHypergraph

__all__ = [
    "EdgeDegreeTable",
    "compute_hyperedge_degrees",
    "compute_ancestor_descendant",
    "stream_ancestors",
    "derive_intersection_counts",
    "build_edge_degree_table",
    "write_edge_degree_csv",
]


@dataclass(frozen=True)
class EdgeDegreeTable:
    """d' and its split: ancestors (supersets), descendants (subsets), and
    proper intersections, with d' = d_anc + d_desc + d_int per edge."""

    d_prime: tuple[int, ...]
    d_anc: tuple[int, ...]
    d_desc: tuple[int, ...]
    d_int: tuple[int, ...]


def compute_hyperedge_degrees(dah: OrientedHypergraph) -> list[int]:
    """Number of intersecting other edges, for every edge."""
    masks = dah.masks
    din = dah.din
    out_edges = dah.out_edges
    sinks = dah.sinks
    d_prime = [0] * dah.m
    for eid in range(dah.m):
        me = masks[eid]
        total = -1  # e itself is included once in the in-degree of its sink
        for u in dah.members[eid]:
            total += din[u]
            ubit = 1 << u
            for f in out_edges[u]:
                if f == eid:
                    continue
                t = me & masks[f]
                # count f here only at the first shared vertex, and only
                # when f's sink falls outside e (else the din sum has it)
                if t & -t == ubit and not (me >> sinks[f]) & 1:
                    total += 1
        d_prime[eid] = total
    return d_prime


def compute_ancestor_descendant(
    dah: OrientedHypergraph,
) -> tuple[list[int], list[int]]:
    """Counts of strict supersets and strict subsets, for every edge.

    Every ancestor of e contains e's source vertex and does not end there,
    so scanning that one outlist finds each containment pair exactly once.
    """
    masks = dah.masks
    d_anc = [0] * dah.m
    d_desc = [0] * dah.m
    for eid in range(dah.m):
        me = masks[eid]
        for f in dah.out_edges[dah.members[eid][0]]:
            if f != eid and me & ~masks[f] == 0:
                d_anc[eid] += 1
                d_desc[f] += 1
    return d_anc, d_desc


def stream_ancestors(dah: OrientedHypergraph, eid: int) -> Iterator[int]:
    """Yield each strict superset of edge ``eid`` exactly once.

    Ancestor sets are streamed rather than stored: materialized they take
    super-linear space.
    """
    me = dah.masks[eid]
    masks = dah.masks
    for f in dah.out_edges[dah.members[eid][0]]:
        if f != eid and me & ~masks[f] == 0:
            yield f


def derive_intersection_counts(
    d_prime: list[int], d_anc: list[int], d_desc: list[int]
) -> list[int]:
    """d_int = d' - d_anc - d_desc; a negative entry signals a bug."""
    d_int = []
    for eid, (dp, da, dd) in enumerate(zip(d_prime, d_anc, d_desc)):
        value = dp - da - dd
        if value < 0:
            raise ConsistencyError(
                f"edge {eid}: d'={dp} < ancestors {da} + descendants {dd}"
            )
        d_int.append(value)
    return d_int


def build_edge_degree_table(dah: OrientedHypergraph) -> EdgeDegreeTable:
    d_prime = compute_hyperedge_degrees(dah)
    d_anc, d_desc = compute_ancestor_descendant(dah)
    d_int = derive_intersection_counts(d_prime, d_anc, d_desc)
    return EdgeDegreeTable(tuple(d_prime), tuple(d_anc), tuple(d_desc), tuple(d_int))


def write_edge_degree_csv(
    table: EdgeDegreeTable, dah: OrientedHypergraph, stream: TextIO
) -> None:
    writer = csv.writer(stream)
    writer.writerow(["edge", "arity", "d_prime", "d_anc", "d_desc", "d_int"])
    for eid in range(dah.m):
        writer.writerow(
            [
                eid,
                len(dah.members[eid]),
                table.d_prime[eid],
                table.d_anc[eid],
                table.d_desc[eid],
                table.d_int[eid],
            ]
        )
