"""Hypergraph container, edge-list ingestion, and global statistics.

The on-disk interchange format is one hyperedge per line: whitespace-separated
non-negative integer vertex labels, with ``#`` starting a comment line. Vertex
labels are remapped to dense internal ids ``0..n-1`` (order of first
appearance); the original labels are retained for serialization.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import EmptyInputError, ParseError

__all__ = [
    "Hypergraph",
    "IngestReport",
    "GlobalStats",
    "parse_edge_list",
    "serialize_edge_list",
    "stats",
]


@dataclass(frozen=True)
class IngestReport:
    """What ingestion dropped or rewrote. All fields are non-negative."""

    duplicates_removed: int = 0
    singletons_removed: int = 0
    empty_lines_skipped: int = 0
    vertex_remap_size: int = 0

    def as_dict(self) -> dict[str, int]:
        return {
            "duplicates_removed": self.duplicates_removed,
            "singletons_removed": self.singletons_removed,
            "empty_lines_skipped": self.empty_lines_skipped,
            "vertex_remap_size": self.vertex_remap_size,
        }


class GlobalStats(NamedTuple):
    n: int
    m: int
    h: int
    rank: int
    max_degree: int
    avg_arity: float


class Hypergraph:
    """Immutable deduplicated set system with dual incidence indexes.

    ``edges[e]`` is a tuple of internal vertex ids, sorted ascending. No two
    edges have the same vertex set and every edge has arity >= 2. The
    vertex->edge index is stored as flat offset/value arrays so incidence
    scans are cache-friendly and allocation-free.
    """

    __slots__ = (
        "n",
        "m",
        "h",
        "rank",
        "edges",
        "labels",
        "_inc_offsets",
        "_inc_edges",
        "_degrees",
        "_masks",
    )

    def __init__(self, edges: Sequence[tuple[int, ...]], labels: Sequence[int]):
        self.edges: tuple[tuple[int, ...], ...] = tuple(tuple(e) for e in edges)
        self.labels: tuple[int, ...] = tuple(labels)
        self.n = len(self.labels)
        self.m = len(self.edges)
        self.h = self.n + sum(len(e) for e in self.edges)
        self.rank = max((len(e) for e in self.edges), default=0)

        degrees = [0] * self.n
        for e in self.edges:
            for v in e:
                degrees[v] += 1
        self._degrees = degrees

        # CSR-style vertex -> incident edge ids, ascending edge id per vertex.
        offsets = [0] * (self.n + 1)
        for d, v in zip(degrees, range(self.n)):
            offsets[v + 1] = offsets[v] + d
        cursor = offsets[:-1].copy()
        inc = [0] * (self.h - self.n)
        for eid, e in enumerate(self.edges):
            for v in e:
                inc[cursor[v]] = eid
                cursor[v] += 1
        self._inc_offsets = offsets
        self._inc_edges = inc
        self._masks: list[int] | None = None

    # -- queries ---------------------------------------------------------

    def degree(self, v: int) -> int:
        """Number of hyperedges containing vertex ``v`` (internal id)."""
        if not 0 <= v < self.n:
            raise ValueError(f"vertex {v} out of range 0..{self.n - 1}")
        return self._degrees[v]

    @property
    def degrees(self) -> list[int]:
        return self._degrees.copy()

    def incident_edges(self, v: int) -> list[int]:
        """Edge ids containing ``v``, ascending."""
        if not 0 <= v < self.n:
            raise ValueError(f"vertex {v} out of range 0..{self.n - 1}")
        return self._inc_edges[self._inc_offsets[v] : self._inc_offsets[v + 1]]

    def edge_masks(self) -> list[int]:
        """Per-edge vertex bitmask (bit ``v`` set iff internal id ``v`` in e).

        Computed once and cached; masks make the set algebra of the counting
        and oracle paths word-parallel.
        """
        if self._masks is None:
            masks = []
            for e in self.edges:
                m = 0
                for v in e:
                    m |= 1 << v
                masks.append(m)
            self._masks = masks
        return self._masks

    def edge_labels(self, eid: int) -> tuple[int, ...]:
        """Original labels of edge ``eid``, ascending by label."""
        return tuple(sorted(self.labels[v] for v in self.edges[eid]))

    # -- construction ----------------------------------------------------

    @classmethod
    def from_edges(
        cls, edges: Iterable[Iterable[int]], *, allow_empty: bool = True
    ) -> "Hypergraph":
        """Build from label edge lists, applying the ingestion rules
        (within-edge duplicate collapse, arity-1 drop, edge-set dedup)."""
        g, _ = _build(list(edges), allow_empty=allow_empty)
        return g

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return (
            self.n == other.n
            and self.m == other.m
            and tuple(self.edge_labels(e) for e in range(self.m))
            == tuple(other.edge_labels(e) for e in range(other.m))
        )

    def __hash__(self):  # pragma: no cover - identity hashing is enough
        return id(self)

    def __repr__(self) -> str:
        return f"Hypergraph(n={self.n}, m={self.m}, h={self.h}, rank={self.rank})"


def _build(
    label_edges: Sequence[Iterable[int]], *, allow_empty: bool
) -> tuple[Hypergraph, IngestReport]:
    """Dedup/filter label edges, remap vertices, build the container."""
    kept: list[tuple[int, ...]] = []
    seen: set[frozenset[int]] = set()
    duplicates = 0
    singletons = 0
    for raw in label_edges:
        vertices = frozenset(raw)
        if len(vertices) < 2:
            singletons += 1
            continue
        if vertices in seen:
            duplicates += 1
            continue
        seen.add(vertices)
        kept.append(tuple(sorted(vertices)))

    if not kept and not allow_empty:
        raise EmptyInputError("no hyperedge of arity >= 2 after filtering")

    remap: dict[int, int] = {}
    for e in kept:
        for label in e:
            if label not in remap:
                remap[label] = len(remap)
    labels = sorted(remap, key=remap.get)  # internal id -> label
    internal = [tuple(sorted(remap[x] for x in e)) for e in kept]
    g = Hypergraph(internal, labels)
    report = IngestReport(
        duplicates_removed=duplicates,
        singletons_removed=singletons,
        vertex_remap_size=g.n,
    )
    return g, report


def parse_edge_list(
    lines: Iterable[str], *, allow_empty: bool = False
) -> tuple[Hypergraph, IngestReport]:
    """Parse an edge-list text stream.

    ``lines`` may be an open file or any iterable of strings. Blank lines and
    lines starting with ``#`` are skipped (counted in the report). Raises
    :class:`ParseError` on a non-integer or negative token, and
    :class:`EmptyInputError` if nothing survives filtering (unless
    ``allow_empty``).
    """
    label_edges: list[list[int]] = []
    skipped = 0
    for lineno, line in enumerate(lines, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            skipped += 1
            continue
        row: list[int] = []
        for token in stripped.split():
            try:
                value = int(token)
            except ValueError:
                raise ParseError(f"not an integer vertex label: {token!r}", lineno)
            if value < 0:
                raise ParseError(f"negative vertex label: {value}", lineno)
            row.append(value)
        label_edges.append(row)

    g, report = _build(label_edges, allow_empty=allow_empty)
    return g, IngestReport(
        duplicates_removed=report.duplicates_removed,
        singletons_removed=report.singletons_removed,
        empty_lines_skipped=skipped,
        vertex_remap_size=report.vertex_remap_size,
    )


def serialize_edge_list(g: Hypergraph) -> str:
    """Canonical text form: edges in first-seen order, labels ascending.

    Parsing the result yields a hypergraph equal to ``g``.
    """
    out: list[str] = []
    for eid in range(g.m):
        out.append(" ".join(str(x) for x in g.edge_labels(eid)))
    return "\n".join(out) + ("\n" if out else "")


def iter_lines(text: str) -> Iterator[str]:
    """Split ``text`` into lines the way :func:`parse_edge_list` expects."""
    return iter(text.splitlines())


def stats(g: Hypergraph) -> GlobalStats:
    """Global statistics: ``(n, m, h, rank, max_degree, avg_arity)``."""
    max_degree = max(g._degrees, default=0)
    avg_arity = (g.h - g.n) / g.m if g.m else 0.0
    return GlobalStats(g.n, g.m, g.h, g.rank, max_degree, avg_arity)
