"""Exact census of the 26 three-hyperedge intersection patterns.

Three hyperedges can intersect in 26 structurally distinct ways (20 with all
pairs meeting, 6 with exactly two). This package counts all of them exactly:
a minimum-degree peeling order orients the hypergraph so enumeration only
walks "outward" edge lists, closed-form identities cover the patterns too
frequent to enumerate, and a brute-force oracle validates every fast path.
"""

__version__ = "0.1.0"

from .core import (
    GlobalStats,
    Hypergraph,
    IngestReport,
    parse_edge_list,
    serialize_edge_list,
    stats,
)
from .counters import CensusResult, PatternCounts, PhaseTimings, count_all
from .edge_degrees import EdgeDegreeTable, build_edge_degree_table
from .errors import (
    ConsistencyError,
    CountOverflowError,
    EmptyInputError,
    HypertriError,
    ParseError,
    SizeGuardError,
)
from .orientation import Ordering, OrientedHypergraph, build_dah, degeneracy_order
from .patterns import TABLE, RegionSignature, classify, region_signature

__all__ = [
    "__version__",
    "GlobalStats",
    "Hypergraph",
    "IngestReport",
    "parse_edge_list",
    "serialize_edge_list",
    "stats",
    "CensusResult",
    "PatternCounts",
    "PhaseTimings",
    "count_all",
    "EdgeDegreeTable",
    "build_edge_degree_table",
    "ConsistencyError",
    "CountOverflowError",
    "EmptyInputError",
    "HypertriError",
    "ParseError",
    "SizeGuardError",
    "Ordering",
    "OrientedHypergraph",
    "build_dah",
    "degeneracy_order",
    "TABLE",
    "RegionSignature",
    "classify",
    "region_signature",
]
