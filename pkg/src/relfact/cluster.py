"""Random cluster model partition function and its non-cluster limit.

Z(q, G) collects state probabilities weighted by q raised to the number of
connected components of the operative subgraph (isolated vertices count).
Its linear coefficient in q is exactly the all-terminal reliability, which
carries the cut factorization over to the q -> 0 derivative.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .conmatrix import ConnectivityBundle, invert_connectivity_matrix
from .graphs import CutDecomposition, StochasticGraph, UnionFind, identify_nodes, validate_decomposition
from .partitions import Partition, coherent_order
from .reliability import DEFAULT_ENUMERATION_BOUND, EnumerationBoundError, ordered_parallel_map


class DisconnectedGraphError(ValueError):
    """The underlying graph must be connected for the partition function."""


@dataclass(frozen=True)
class ClusterPolynomial:
    """Z(q) = sum_k w_k q^k with exact rational weights, k = cluster count.

    Setting q = 1 recovers total probability 1; the k = 1 weight is the
    probability that the operative edges span everything in one component.
    """

    node_count: int
    coeffs: dict[int, Fraction]

    def __post_init__(self) -> None:
        if any(not 1 <= k <= self.node_count for k in self.coeffs):
            raise ValueError("cluster counts must lie in 1..|V|")
        if any(w < 0 for w in self.coeffs.values()):
            raise ValueError("weights must be non-negative")
        if sum(self.coeffs.values(), Fraction(0)) != 1:
            raise ValueError("weights must sum to 1")

    def evaluate(self, q: Fraction) -> Fraction:
        q = Fraction(q)
        return sum((w * q**k for k, w in self.coeffs.items()), Fraction(0))


def _underlying_connected(g: StochasticGraph) -> bool:
    if not g.nodes:
        return True
    uf = UnionFind(g.nodes)
    for e in g.edges:
        uf.union(e.u, e.v)
    return uf.component_count() == 1


def partition_function(g: StochasticGraph, bound: int | None = None) -> ClusterPolynomial:
    """Exact cluster-count weights from full state enumeration."""
    if not _underlying_connected(g):
        raise DisconnectedGraphError("underlying graph is not connected")
    limit = DEFAULT_ENUMERATION_BOUND if bound is None else bound
    m = len(g.edges)
    if m > limit:
        raise EnumerationBoundError(f"{m} edges exceed the enumeration bound {limit}")
    nodes = sorted(g.nodes)
    node_ix = {v: i for i, v in enumerate(nodes)}
    pairs = [(node_ix[e.u], node_ix[e.v]) for e in g.edges]
    probs = [e.prob for e in g.edges]
    acc: dict[int, Fraction] = {}

    def walk(i: int, active: list[tuple[int, int]], weight: Fraction) -> None:
        if weight == 0:
            return
        if i == m:
            parent = list(range(len(nodes)))

            def find(x: int) -> int:
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return x

            for u, v in active:
                parent[find(u)] = find(v)
            k = sum(1 for x in range(len(nodes)) if find(x) == x)
            acc[k] = acc.get(k, Fraction(0)) + weight
            return
        walk(i + 1, active + [pairs[i]], weight * probs[i])
        walk(i + 1, active, weight * (1 - probs[i]))

    walk(0, [], Fraction(1))
    return ClusterPolynomial(node_count=len(nodes), coeffs=acc)


def dq_at_zero(z: ClusterPolynomial) -> Fraction:
    """d/dq of Z at q = 0: the weight of single-cluster states, which equals
    the all-terminal reliability."""
    return z.coeffs.get(1, Fraction(0))


def _side_w1_task(task: tuple[StochasticGraph, tuple[str, ...], Partition, int | None]) -> Fraction:
    g, boundary, a, bound = task
    return dq_at_zero(partition_function(identify_nodes(g, boundary, a), bound))


def factorized_dq(
    d: CutDecomposition,
    variant: str = "canonical",
    bundle: ConnectivityBundle | None = None,
    jobs: int = 1,
    bound: int | None = None,
) -> Fraction:
    """The q -> 0 derivative of Z for the union, assembled from the sides.

    Requires the all-terminal case (every node of the union is a terminal)
    and connected identified sides; equals dq_at_zero of the union exactly.
    """
    union = validate_decomposition(d)
    if union.terminals != union.nodes:
        raise ValueError("the factorized derivative needs every node terminal")
    n = d.n
    if bundle is None:
        bundle = invert_connectivity_matrix(coherent_order(n, variant))
    if bundle.n != n:
        raise ValueError(f"bundle is for boundary size {bundle.n}, decomposition has {n}")
    states = bundle.order.states
    tasks = [(d.g1, d.boundary, a, bound) for a in states] + [
        (d.g2, d.boundary, a, bound) for a in states
    ]
    vals = ordered_parallel_map(_side_w1_task, tasks, jobs)
    w1 = vals[: len(states)]
    w2 = vals[len(states) :]
    b = bundle.A_inv
    total = Fraction(0)
    for i in range(len(states)):
        if w1[i] == 0:
            continue
        for j in range(len(states)):
            if w2[j]:
                total += b[i][j] * w1[i] * w2[j]
    return total
