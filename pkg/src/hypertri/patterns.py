"""Three-edge intersection taxonomy: region signatures and the 26 classes.

Three distinct hyperedges split their union into seven Venn regions: three
"green" private regions (vertices in exactly one edge), three "blue" pairwise
regions (in exactly two), and one "red" region (in all three). A pattern class
is an equivalence class of region-emptiness vectors under permutation of the
three edge roles. Twenty classes have all three pairs intersecting (closed);
six have exactly two intersecting pairs (open); triples with fewer than two
intersecting pairs belong to no class.

The signature->class table is generated by exhaustive enumeration of the 128
emptiness vectors, never hand-typed: invalid vectors (an empty edge, or an
emptiness pattern that forces two edges to be equal sets) are discarded, the
rest are canonicalized under the six role permutations and classified by
structural predicates (containment shape, blue/green counts). A fatal check
guards the class inventory.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Optional, Sequence

from .errors import ConsistencyError

__all__ = [
    "RegionSignature",
    "PatternTable",
    "TABLE",
    "signature_bits",
    "region_signature",
    "classify",
    "witness_positions",
    "generate_pattern_table",
    "CLOSED_IDS",
    "OPEN_IDS",
]

# Region bit layout. b12 is the pairwise region of edges 1 and 2 minus edge 3,
# g1 the private region of edge 1, red the triple intersection.
G1, G2, G3, B12, B13, B23, RED = range(7)
REGION_NAMES = ("g1", "g2", "g3", "b12", "b13", "b23", "red")

CLOSED_IDS = tuple(range(1, 21))
OPEN_IDS = tuple(range(21, 27))

# Regions that belong to edge role i but not to edge role j. Emptiness of all
# of them means edge i is a subset of edge j.
_PRIVATE_VS = {
    (0, 1): (G1, B13),
    (1, 0): (G2, B23),
    (0, 2): (G1, B12),
    (2, 0): (G3, B23),
    (1, 2): (G2, B12),
    (2, 1): (G3, B13),
}
_EDGE_REGIONS = ((G1, B12, B13, RED), (G2, B12, B23, RED), (G3, B13, B23, RED))
_PAIR_BLUE = {(0, 1): B12, (0, 2): B13, (1, 2): B23}

FAMILY_LABELS = {
    1: "containment chain",
    2: "contained in two",
    3: "contained in two",
    4: "two intersecting children",
    5: "two intersecting children",
    6: "single containment",
    7: "single containment",
    8: "single containment",
    9: "red, no blue",
    10: "red, one blue",
    11: "red, two blue",
    12: "red, two blue",
    13: "red, three blue",
    14: "red, three blue",
    15: "red, three blue",
    16: "red, three blue",
    17: "three blue, no red",
    18: "three blue, no red",
    19: "three blue, no red",
    20: "three blue, no red",
    21: "open",
    22: "open",
    23: "open",
    24: "open",
    25: "open",
    26: "open",
}

# Family inventory the generated table must reproduce exactly (closed part).
_EXPECTED_CLOSED_FAMILY_SIZES = {
    "containment chain": 1,
    "contained in two": 2,
    "two intersecting children": 2,
    "single containment": 3,
    "red, no blue": 1,
    "red, one blue": 1,
    "red, two blue": 2,
    "red, three blue": 4,
    "three blue, no red": 4,
}


@dataclass(frozen=True)
class RegionSignature:
    """Non-emptiness flags of the seven regions of an edge triple."""

    g1: bool
    g2: bool
    g3: bool
    b12: bool
    b13: bool
    b23: bool
    red: bool

    @property
    def bits(self) -> int:
        value = 0
        for i, flag in enumerate(
            (self.g1, self.g2, self.g3, self.b12, self.b13, self.b23, self.red)
        ):
            if flag:
                value |= 1 << i
        return value

    @classmethod
    def from_bits(cls, bits: int) -> "RegionSignature":
        return cls(*(bool((bits >> i) & 1) for i in range(7)))


def _bit(sig: int, region: int) -> int:
    return (sig >> region) & 1


def _permute(sig: int, perm: Sequence[int]) -> int:
    """Signature after relabeling edge roles: new role k takes old role perm[k]."""
    out = 0
    for k in range(3):
        if _bit(sig, perm[k]):  # greens occupy bits 0..2 in role order
            out |= 1 << k
    for (a, b), region in _PAIR_BLUE.items():
        old = _PAIR_BLUE[tuple(sorted((perm[a], perm[b])))]
        if _bit(sig, old):
            out |= 1 << region
    if _bit(sig, RED):
        out |= 1 << RED
    return out


def _subset(sig: int, i: int, j: int) -> bool:
    """True iff the signature forces edge i to be contained in edge j."""
    return all(not _bit(sig, r) for r in _PRIVATE_VS[(i, j)])


def _edge_nonempty(sig: int, i: int) -> bool:
    return any(_bit(sig, r) for r in _EDGE_REGIONS[i])


def _intersecting_pairs(sig: int) -> list[tuple[int, int]]:
    if _bit(sig, RED):
        return [(0, 1), (0, 2), (1, 2)]
    return [pair for pair, blue in _PAIR_BLUE.items() if _bit(sig, blue)]


def _green_count(sig: int) -> int:
    return _bit(sig, G1) + _bit(sig, G2) + _bit(sig, G3)


def _blue_count(sig: int) -> int:
    return _bit(sig, B12) + _bit(sig, B13) + _bit(sig, B23)


def _signature_status(sig: int) -> int:
    """-1 if no triple of distinct edges realizes sig, 0 if disconnected,
    1 if the signature belongs to one of the 26 classes."""
    if not all(_edge_nonempty(sig, i) for i in range(3)):
        return -1
    for i, j in ((0, 1), (0, 2), (1, 2)):
        if _subset(sig, i, j) and _subset(sig, j, i):
            return -1  # forced set equality
    if len(_intersecting_pairs(sig)) < 2:
        return 0
    return 1


def _classify_structural(sig: int) -> int:
    """Assign the class id of a valid connected signature.

    Closed ids follow the containment shape first (chain 1; contained-in-two
    {2,3}; two children of one parent {4,5}; single containment {6,7,8}) and
    then blue/green counts; within each ambiguous group the lower id has
    fewer non-empty regions. Open ids are keyed by (number of edges contained
    in the middle edge, whether the middle edge is covered by the other two).
    """
    pairs = _intersecting_pairs(sig)
    if len(pairs) == 2:
        # Open: the middle role appears in both intersecting pairs.
        roles = [r for pair in pairs for r in pair]
        middle = next(r for r in range(3) if roles.count(r) == 2)
        others = [r for r in range(3) if r != middle]
        children = sum(_subset(sig, r, middle) for r in others)
        covered = not _bit(sig, (G1, G2, G3)[middle])
        return {
            (2, True): 21,
            (2, False): 22,
            (1, True): 23,
            (1, False): 24,
            (0, True): 25,
            (0, False): 26,
        }[(children, covered)]

    containments = [
        (i, j) for i in range(3) for j in range(3) if i != j and _subset(sig, i, j)
    ]
    if len(containments) == 3:
        return 1
    if len(containments) == 2:
        (a1, b1), (a2, b2) = containments
        if a1 == a2:  # one edge inside both others
            blue_between_parents = _PAIR_BLUE[tuple(sorted((b1, b2)))]
            return 3 if _bit(sig, blue_between_parents) else 2
        if b1 == b2:  # two children of one parent, children intersecting
            return 5 if _bit(sig, (G1, G2, G3)[b1]) else 4
        raise ConsistencyError(f"unexpected containment shape in signature {sig:07b}")
    if len(containments) == 1:
        ((child, parent),) = containments
        third = next(r for r in range(3) if r not in (child, parent))
        blue_parent_third = _PAIR_BLUE[tuple(sorted((parent, third)))]
        if not _bit(sig, blue_parent_third):
            return 6
        return 7 if _green_count(sig) == 1 else 8

    blues = _blue_count(sig)
    greens = _green_count(sig)
    if _bit(sig, RED):
        if blues == 0:
            return 9
        if blues == 1:
            return 10
        if blues == 2:
            return 11 if greens == 2 else 12
        return 13 + greens
    if blues != 3:
        raise ConsistencyError(f"closed signature {sig:07b} without red has {blues} blues")
    return 17 + greens


class PatternTable:
    """Frozen signature->class lookup plus audit metadata."""

    def __init__(
        self,
        lookup: Sequence[int],
        canonical: dict[int, int],
        members: dict[int, tuple[int, ...]],
    ):
        self.lookup = tuple(lookup)
        self.canonical = dict(canonical)
        self.members = dict(members)

    def classify(self, sig: int) -> Optional[int]:
        """Class id 1..26 for a realizable signature, None for a connected?-no
        (fewer than two intersecting pairs). Raises on signatures no triple of
        distinct non-empty edges can produce."""
        value = self.lookup[sig]
        if value < 0:
            raise ConsistencyError(
                f"signature {sig:07b} cannot arise from three distinct edges"
            )
        return value or None

    def family(self, pattern_id: int) -> str:
        return FAMILY_LABELS[pattern_id]

    def is_closed(self, pattern_id: int) -> bool:
        return pattern_id <= 20


def generate_pattern_table() -> PatternTable:
    """Enumerate all 128 signatures and build the class table.

    Raises :class:`ConsistencyError` unless the enumeration produces exactly
    20 closed and 6 open classes with the expected family inventory.
    """
    lookup = [-1] * 128
    members: dict[int, list[int]] = {}
    for sig in range(128):
        status = _signature_status(sig)
        if status < 0:
            continue
        if status == 0:
            lookup[sig] = 0
            continue
        pid = _classify_structural(sig)
        for perm in permutations(range(3)):
            other = _permute(sig, perm)
            if _classify_structural(other) != pid:
                raise ConsistencyError(
                    f"class of signature {sig:07b} not invariant under role swap"
                )
        lookup[sig] = pid
        members.setdefault(pid, []).append(sig)

    closed = sorted(pid for pid in members if pid <= 20)
    opened = sorted(pid for pid in members if pid > 20)
    if closed != list(CLOSED_IDS) or opened != list(OPEN_IDS):
        raise ConsistencyError(
            f"expected classes 1..26, got closed={closed} open={opened}"
        )
    family_sizes: dict[str, int] = {}
    for pid in CLOSED_IDS:
        family_sizes[FAMILY_LABELS[pid]] = family_sizes.get(FAMILY_LABELS[pid], 0) + 1
    if family_sizes != _EXPECTED_CLOSED_FAMILY_SIZES:
        raise ConsistencyError(f"closed family inventory drifted: {family_sizes}")

    canonical = {pid: min(sigs) for pid, sigs in members.items()}
    return PatternTable(lookup, canonical, {p: tuple(s) for p, s in members.items()})


TABLE = generate_pattern_table()
_LOOKUP = TABLE.lookup


def signature_bits(m1: int, m2: int, m3: int) -> int:
    """Region-emptiness bits of three edge bitmasks."""
    i12 = m1 & m2
    i13 = m1 & m3
    i23 = m2 & m3
    red = i12 & m3
    bits = 0
    if m1 & ~(m2 | m3):
        bits |= 1 << G1
    if m2 & ~(m1 | m3):
        bits |= 1 << G2
    if m3 & ~(m1 | m2):
        bits |= 1 << G3
    if i12 & ~m3:
        bits |= 1 << B12
    if i13 & ~m2:
        bits |= 1 << B13
    if i23 & ~m1:
        bits |= 1 << B23
    if red:
        bits |= 1 << RED
    return bits


def region_signature(g, e1: int, e2: int, e3: int) -> RegionSignature:
    """Exact emptiness flags for three distinct edges of a hypergraph (or of
    an oriented hypergraph; anything exposing ``edge_masks()``)."""
    if len({e1, e2, e3}) != 3:
        raise ValueError(f"edge ids must be distinct, got {(e1, e2, e3)}")
    masks = g.edge_masks()
    return RegionSignature.from_bits(signature_bits(masks[e1], masks[e2], masks[e3]))


def classify(sig: RegionSignature | int) -> Optional[int]:
    """Class id for a signature, or None when the triple is no pattern."""
    bits = sig.bits if isinstance(sig, RegionSignature) else sig
    return TABLE.classify(bits)


# Patterns whose instances carry a witness vertex triple: everything with at
# least two blue regions.
WITNESS_IDS = frozenset({4, 5, 7, 8}) | frozenset(range(11, 21))


def witness_positions(m1: int, m2: int, m3: int, pattern_id: int) -> tuple[int, int, int]:
    """Witness of a classified triple, as ascending bit positions.

    For three-blue patterns (13..20) these are the lowest bits of the three
    blue regions; for two-blue patterns ({4,5,7,8,11,12}) the lowest bit of
    the red region replaces the absent blue. Masks must be in an order-encoded
    bit space (lower bit = earlier vertex).
    """
    if pattern_id not in WITNESS_IDS:
        raise ValueError(f"pattern {pattern_id} has no witness")
    b12 = m1 & m2 & ~m3
    b13 = m1 & m3 & ~m2
    b23 = m2 & m3 & ~m1
    if pattern_id >= 13:
        parts = (b12, b13, b23)
    else:
        parts = tuple(b for b in (b12, b13, b23) if b) + (m1 & m2 & m3,)
    if len(parts) != 3 or not all(parts):
        raise ConsistencyError(
            f"witness regions inconsistent with pattern {pattern_id}"
        )
    out = sorted((p & -p).bit_length() - 1 for p in parts)
    return out[0], out[1], out[2]
