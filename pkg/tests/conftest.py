import random

import pytest

from hypertri import Hypergraph
from hypertri.oracle import RandomInstanceSpec, generate_random, max_distinct_edges

TRIANGLE = [[1, 2], [2, 3], [1, 3]]
STAR = [[1, 2], [1, 3], [1, 4]]
PATH = [[1, 2], [2, 3], [3, 4]]
CHAIN = [[1, 2], [1, 2, 3], [1, 2, 3, 4]]


def rand_instance(seed, n_range=(4, 12), m_range=(3, 15), arity=(2, 5)) -> Hypergraph:
    """Seeded random instance with the edge count clamped to what fits."""
    rng = random.Random(seed)
    n = rng.randint(*n_range)
    m = min(rng.randint(*m_range), max_distinct_edges(n, arity))
    return generate_random(
        RandomInstanceSpec(
            seed=rng.randrange(2**62), n_range=(n, n), m_range=(m, m), arity_range=arity
        )
    )


@pytest.fixture
def triangle() -> Hypergraph:
    return Hypergraph.from_edges(TRIANGLE)


@pytest.fixture
def star() -> Hypergraph:
    return Hypergraph.from_edges(STAR)


@pytest.fixture
def path() -> Hypergraph:
    return Hypergraph.from_edges(PATH)


@pytest.fixture
def chain() -> Hypergraph:
    return Hypergraph.from_edges(CHAIN)
