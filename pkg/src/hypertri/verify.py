"""Oracle-equivalence battery over seeded random instances.

Used by the command-line ``verify`` mode and by the acceptance tests. Each
instance is checked on four fronts: full census against the brute-force
census, edge-degree tables, complement counts, and (small instances only) the
degeneracy value against both brute-force characterizations. The first
mismatch is reported with the serialized instance so it can be replayed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from .core import Hypergraph, serialize_edge_list
from .counters import compute_gamma, compute_local_indegrees, count_all
from .edge_degrees import build_edge_degree_table
from .oracle import (
    DEGENERACY_VERTEX_LIMIT,
    ORDERING_VERTEX_LIMIT,
    RandomInstanceSpec,
    brute_force_census,
    brute_force_degeneracy,
    brute_force_edge_degrees,
    brute_force_gamma,
    brute_force_min_max_outdegree,
    generate_random,
    max_distinct_edges,
)

__all__ = ["BatterySettings", "BatteryFailure", "BatteryResult", "run_battery"]

import random

# Mutates the fast census before comparison; exists so the failure-reporting
# path itself can be exercised. Never set outside tests.
FaultHook = Callable[[dict[str, int]], dict[str, int]]


@dataclass(frozen=True)
class BatterySettings:
    seed: int = 42
    instances: int = 200
    min_n: int = 4
    max_n: int = 12
    min_m: int = 3
    max_m: int = 15
    arity_range: tuple[int, int] = (2, 5)

    def validate(self) -> None:
        if self.min_n < 2 or self.min_n > self.max_n:
            raise ValueError(f"bad vertex range [{self.min_n}, {self.max_n}]")
        if self.min_m < 1 or self.min_m > self.max_m:
            raise ValueError(f"bad edge range [{self.min_m}, {self.max_m}]")
        if self.max_n > DEGENERACY_VERTEX_LIMIT:
            raise ValueError(
                f"max-n {self.max_n} exceeds the oracle guard "
                f"({DEGENERACY_VERTEX_LIMIT}); refusing to configure"
            )
        if self.instances < 1:
            raise ValueError("need at least one instance")


@dataclass
class BatteryFailure:
    index: int
    check: str
    detail: str
    instance_text: str


@dataclass
class BatteryResult:
    instances_run: int = 0
    duality_checked: int = 0
    failure: Optional[BatteryFailure] = None
    kappa_seen: list[int] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.failure is None


def _instance(settings: BatterySettings, index: int) -> Hypergraph:
    rng = random.Random(settings.seed * 1_000_003 + index)
    n = rng.randint(settings.min_n, settings.max_n)
    m = min(
        rng.randint(settings.min_m, settings.max_m),
        max_distinct_edges(n, settings.arity_range),
    )
    spec = RandomInstanceSpec(
        seed=rng.randrange(2**62),
        n_range=(n, n),
        m_range=(m, m),
        arity_range=settings.arity_range,
    )
    return generate_random(spec)


def run_battery(
    settings: BatterySettings,
    *,
    fault: Optional[FaultHook] = None,
    check_duality: bool = True,
) -> BatteryResult:
    """Run the battery; stops at the first mismatch."""
    settings.validate()
    result = BatteryResult()
    for index in range(settings.instances):
        g = _instance(settings, index)
        text = serialize_edge_list(g)

        def fail(check: str, detail: str) -> BatteryResult:
            result.failure = BatteryFailure(index, check, detail, text)
            return result

        census = count_all(g)
        result.kappa_seen.append(census.kappa)
        fast = census.counts.as_dict()
        if fault is not None:
            fast = fault(fast)
        slow = brute_force_census(g).as_dict()
        if fast != slow:
            diffs = {
                k: (fast[k], slow[k]) for k in fast if fast[k] != slow[k]
            }
            return fail(
                "census",
                f"fast vs oracle census differ (fast, oracle): {diffs}",
            )

        table = build_edge_degree_table(census.dah)
        op, oa, od, oi = brute_force_edge_degrees(g)
        if (
            list(table.d_prime) != op
            or list(table.d_anc) != oa
            or list(table.d_desc) != od
            or list(table.d_int) != oi
        ):
            return fail(
                "edge_degrees",
                f"fast {table} vs oracle (d', anc, desc, int) = "
                f"{(op, oa, od, oi)}",
            )

        li = compute_local_indegrees(census.dah)
        gamma, _ = compute_gamma(census.dah, li)
        oracle_gamma = brute_force_gamma(g)
        if gamma != oracle_gamma:
            return fail(
                "gamma", f"fast gamma {gamma} vs oracle {oracle_gamma}"
            )

        if check_duality and g.n <= ORDERING_VERTEX_LIMIT:
            by_orderings = brute_force_min_max_outdegree(g)
            by_subsets = brute_force_degeneracy(g)
            if not census.kappa == by_orderings == by_subsets:
                return fail(
                    "degeneracy",
                    f"peeling {census.kappa}, ordering-minimum {by_orderings}, "
                    f"subset-maximum {by_subsets}",
                )
            result.duality_checked += 1

        result.instances_run += 1
    return result
