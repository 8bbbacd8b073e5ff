import random

import pytest

from relfact.corpus import random_probability
from relfact.graphs import Edge, StochasticGraph


def random_graph(rng: random.Random, max_nodes: int = 6, max_edges: int = 9) -> StochasticGraph:
    """Small random multigraph, not necessarily connected; loops and
    parallels allowed; at least one terminal."""
    node_count = rng.randint(2, max_nodes)
    nodes = [f"n{i}" for i in range(node_count)]
    edges = tuple(
        Edge(eid, rng.choice(nodes), rng.choice(nodes), random_probability(rng))
        for eid in range(1, rng.randint(1, max_edges) + 1)
    )
    terminals = rng.sample(nodes, rng.randint(1, node_count))
    return StochasticGraph(nodes=frozenset(nodes), edges=edges, terminals=frozenset(terminals))


@pytest.fixture
def rng():
    return random.Random(20240817)
