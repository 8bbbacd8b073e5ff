"""Exact reliability computation by independent routes.

Routes: full state enumeration (the oracle), contraction/deletion factoring
with irrelevant-edge pruning, the joint boundary-state sum, and the bilinear
cut factorization through the inverse connectivity matrix.  All routes work
in exact rational arithmetic and must agree bit for bit; the test suite
leans on that equality everywhere.
"""

from __future__ import annotations

import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

from .conmatrix import ConnectivityBundle, invert_connectivity_matrix
from .graphs import (
    CutDecomposition,
    Edge,
    Hypothesis2Error,
    StochasticGraph,
    contract,
    delete,
    delete_many,
    identify_nodes,
    irrelevant_edges,
    is_k_connected,
    validate_decomposition,
)
from .partitions import Partition, coherent_order, is_connected_pair

DEFAULT_ENUMERATION_BOUND = 24


class EnumerationBoundError(ValueError):
    """Too many edges for state enumeration; use the factoring route."""


def _check_bound(g: StochasticGraph, bound: int | None) -> int:
    limit = DEFAULT_ENUMERATION_BOUND if bound is None else bound
    if len(g.edges) > limit:
        raise EnumerationBoundError(
            f"{len(g.edges)} edges exceed the enumeration bound {limit}; "
            "use the factoring route instead"
        )
    return limit


def _indexed(g: StochasticGraph):
    node_ix = {v: i for i, v in enumerate(sorted(g.nodes))}
    pairs = [(node_ix[e.u], node_ix[e.v]) for e in g.edges]
    probs = [e.prob for e in g.edges]
    return node_ix, pairs, probs


def _roots_connected(count: int, active: list[tuple[int, int]], targets: list[int]) -> bool:
    parent = list(range(count))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in active:
        parent[find(u)] = find(v)
    first = find(targets[0])
    return all(find(t) == first for t in targets[1:])


def reliability_bruteforce(g: StochasticGraph, bound: int | None = None) -> Fraction:
    """Sum of state probabilities over every terminal-linking state.

    Walks the full state tree; branches of probability zero are skipped,
    which changes nothing in the sum.
    """
    _check_bound(g, bound)
    if len(g.terminals) <= 1:
        return Fraction(1)
    node_ix, pairs, probs = _indexed(g)
    targets = [node_ix[t] for t in sorted(g.terminals)]
    m = len(pairs)
    total = Fraction(0)

    def walk(i: int, active: list[tuple[int, int]], weight: Fraction) -> None:
        nonlocal total
        if weight == 0:
            return
        if i == m:
            if _roots_connected(len(node_ix), active, targets):
                total += weight
            return
        p = probs[i]
        walk(i + 1, active + [pairs[i]], weight * p)
        walk(i + 1, active, weight * (1 - p))

    walk(0, [], Fraction(1))
    return total


def _pivot_edge(g: StochasticGraph) -> Edge:
    """Deterministic factoring pivot: relevant edges only remain at call
    sites; prefer one touching a terminal, ties by smallest id."""
    touching = [e for e in g.edges if e.u in g.terminals or e.v in g.terminals]
    pool = touching if touching else list(g.edges)
    return min(pool, key=lambda e: e.id)


def reliability_factoring(g: StochasticGraph) -> Fraction:
    """Contraction/deletion recursion with irrelevant-edge pruning.

    Base cases: terminals disconnected in the fully operative graph (0) and
    at most one terminal left (1).  Agrees exactly with enumeration wherever
    both run.
    """
    if not is_k_connected(g):
        return Fraction(0)
    if len(g.terminals) <= 1:
        return Fraction(1)
    junk = irrelevant_edges(g)
    if junk:
        g = delete_many(g, junk)
    e = _pivot_edge(g)
    p = e.prob
    return p * reliability_factoring(contract(g, e.id)) + (1 - p) * reliability_factoring(
        delete(g, e.id)
    )


@dataclass(frozen=True)
class ReliabilityPolynomial:
    """Pathset counts by number of operative edges, for equal edge
    probability p: R(p) = sum_i C_i p^i (1-p)^(m-i)."""

    coefficients: tuple[int, ...]

    @property
    def edge_count(self) -> int:
        return len(self.coefficients) - 1

    def evaluate(self, p: Fraction) -> Fraction:
        p = Fraction(p)
        m = self.edge_count
        return sum(
            (c * p**i * (1 - p) ** (m - i) for i, c in enumerate(self.coefficients)),
            Fraction(0),
        )

    def monomial_coefficients(self) -> list[int]:
        """Coefficients of R(p) expanded in powers of p."""
        m = self.edge_count
        out = [0] * (m + 1)
        for i, c in enumerate(self.coefficients):
            if not c:
                continue
            for j in range(i, m + 1):
                out[j] += c * (-1) ** (j - i) * comb(m - i, j - i)
        return out

    def degree(self) -> int:
        mono = self.monomial_coefficients()
        for j in range(len(mono) - 1, -1, -1):
            if mono[j]:
                return j
        return -1

    def leading_coefficient(self) -> int:
        d = self.degree()
        return self.monomial_coefficients()[d] if d >= 0 else 0


def reliability_polynomial(g: StochasticGraph, bound: int | None = None) -> ReliabilityPolynomial:
    """Count terminal-linking states by operative edge count."""
    _check_bound(g, bound)
    node_ix, pairs, _ = _indexed(g)
    m = len(pairs)
    counts = [0] * (m + 1)
    if len(g.terminals) <= 1:
        return ReliabilityPolynomial(tuple(comb(m, i) for i in range(m + 1)))
    targets = [node_ix[t] for t in sorted(g.terminals)]
    for mask in range(1 << m):
        active = [pairs[i] for i in range(m) if mask >> i & 1]
        if _roots_connected(len(node_ix), active, targets):
            counts[mask.bit_count()] += 1
    return ReliabilityPolynomial(tuple(counts))


@dataclass(frozen=True)
class StateDistribution:
    """Exact probability of each boundary partition induced by one side."""

    boundary: tuple[str, ...]
    probs: dict[Partition, Fraction]

    def __post_init__(self) -> None:
        object.__setattr__(self, "boundary", tuple(self.boundary))
        total = sum(self.probs.values(), Fraction(0))
        if total != 1:
            raise ValueError(f"state distribution mass {total} != 1")

    @property
    def n(self) -> int:
        return len(self.boundary)

    def prob(self, a: Partition) -> Fraction:
        return self.probs.get(a, Fraction(0))


def state_distribution(
    g: StochasticGraph, boundary: list[str] | tuple[str, ...], bound: int | None = None
) -> StateDistribution:
    """Distribution over boundary partitions: labels i and j share a block
    exactly when the operative edges join boundary[i-1] to boundary[j-1]."""
    boundary = tuple(boundary)
    for b in boundary:
        if b not in g.nodes:
            raise ValueError(f"boundary node {b!r} not in graph")
    _check_bound(g, bound)
    node_ix, pairs, probs = _indexed(g)
    bix = [node_ix[b] for b in boundary]
    n = len(boundary)
    m = len(pairs)
    acc: dict[Partition, Fraction] = {}

    def walk(i: int, active: list[tuple[int, int]], weight: Fraction) -> None:
        if weight == 0:
            return
        if i == m:
            parent = list(range(len(node_ix)))

            def find(x: int) -> int:
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return x

            for u, v in active:
                parent[find(u)] = find(v)
            groups: dict[int, list[int]] = {}
            for label in range(1, n + 1):
                groups.setdefault(find(bix[label - 1]), []).append(label)
            part = Partition(tuple(tuple(grp) for grp in groups.values()))
            acc[part] = acc.get(part, Fraction(0)) + weight
            return
        p = probs[i]
        walk(i + 1, active + [pairs[i]], weight * p)
        walk(i + 1, active, weight * (1 - p))

    walk(0, [], Fraction(1))
    return StateDistribution(boundary=boundary, probs=acc)


def joint_reliability(d1: StateDistribution, d2: StateDistribution) -> Fraction:
    """Mass of the pairs of side states that jointly link the boundary.

    This is the quadratic pre-factorization route: it sums P1(A) * P2(B)
    over connected pairs rather than going through the inverse matrix.
    """
    if d1.n != d2.n:
        raise ValueError(f"boundary sizes differ: {d1.n} vs {d2.n}")
    total = Fraction(0)
    for a, pa in d1.probs.items():
        if pa == 0:
            continue
        for b, pb in d2.probs.items():
            if pb and is_connected_pair(a, b):
                total += pa * pb
    return total


def conditioned_reliability(
    g: StochasticGraph, boundary: list[str] | tuple[str, ...], a: Partition
) -> Fraction:
    """Reliability of one side after identifying its boundary through a."""
    return reliability_factoring(identify_nodes(g, tuple(boundary), a))


def _conditioned_task(task: tuple[StochasticGraph, tuple[str, ...], Partition]) -> Fraction:
    g, boundary, a = task
    return conditioned_reliability(g, boundary, a)


def ordered_parallel_map(fn, tasks, jobs: int = 1) -> list:
    """Deterministic map: results come back in task order regardless of the
    worker count, so parallel and sequential runs are bitwise identical."""
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(fn, tasks))
    return [fn(t) for t in tasks]


@dataclass(frozen=True)
class FactorizationResult:
    bundle: ConnectivityBundle
    side1: tuple[Fraction, ...]
    side2: tuple[Fraction, ...]
    value: Fraction

    def side_reliabilities(self) -> tuple[dict[Partition, Fraction], dict[Partition, Fraction]]:
        states = self.bundle.order.states
        return (
            dict(zip(states, self.side1)),
            dict(zip(states, self.side2)),
        )


def factorization_detail(
    d: CutDecomposition,
    variant: str = "canonical",
    bundle: ConnectivityBundle | None = None,
    jobs: int = 1,
) -> FactorizationResult:
    """Cut factorization with the per-partition side reliabilities exposed.

    The 2 * Bell(n) one-side problems are independent and evaluated through
    the deterministic parallel map; the bilinear combination runs in fixed
    index order.
    """
    validate_decomposition(d)
    n = d.n
    if bundle is None:
        bundle = invert_connectivity_matrix(coherent_order(n, variant))
    if bundle.n != n:
        raise ValueError(f"bundle is for boundary size {bundle.n}, decomposition has {n}")
    states = bundle.order.states
    tasks = [(d.g1, d.boundary, a) for a in states] + [(d.g2, d.boundary, a) for a in states]
    vals = ordered_parallel_map(_conditioned_task, tasks, jobs)
    r1 = tuple(vals[: len(states)])
    r2 = tuple(vals[len(states) :])
    b = bundle.A_inv
    value = Fraction(0)
    for i in range(len(states)):
        if r1[i] == 0:
            continue
        row = b[i]
        for j in range(len(states)):
            if r2[j]:
                value += row[j] * r1[i] * r2[j]
    return FactorizationResult(bundle=bundle, side1=r1, side2=r2, value=value)


def factorized_reliability(
    d: CutDecomposition,
    variant: str = "canonical",
    bundle: ConnectivityBundle | None = None,
    jobs: int = 1,
) -> Fraction:
    """Exact reliability of the union graph via the cut factorization.

    A decomposition whose terminals cannot all reach the boundary has
    reliability 0; that case warns and short-circuits instead of raising.
    """
    try:
        return factorization_detail(d, variant=variant, bundle=bundle, jobs=jobs).value
    except Hypothesis2Error as exc:
        warnings.warn(str(exc))
        return Fraction(0)


def n2_closed_form(d: CutDecomposition) -> Fraction:
    """Three-term inclusion-exclusion for a two-node boundary.

    With hats marking the sides whose two boundary nodes are identified:
    R = R(G1) * R(G2^) + R(G1^) * R(G2) - R(G1) * R(G2).  Taking the same
    node twice as the boundary degenerates it to the articulation-point
    product R(G1) * R(G2).
    """
    if d.n != 2:
        raise ValueError(f"closed form needs a boundary of size 2, got {d.n}")
    try:
        validate_decomposition(d)
    except Hypothesis2Error as exc:
        warnings.warn(str(exc))
        return Fraction(0)
    bottom = Partition.singletons(2)
    top = Partition.top(2)
    r1 = conditioned_reliability(d.g1, d.boundary, bottom)
    r2 = conditioned_reliability(d.g2, d.boundary, bottom)
    r1_hat = conditioned_reliability(d.g1, d.boundary, top)
    r2_hat = conditioned_reliability(d.g2, d.boundary, top)
    return r1 * r2_hat + r1_hat * r2 - r1 * r2


def gamma_graph(n: int, a: Partition, p: Fraction = Fraction(1, 2)) -> StochasticGraph:
    """Complete graph on n nodes with equal edge probability p, its nodes
    identified through a, and every resulting node terminal."""
    if a.n != n:
        raise ValueError(f"partition of {a.n} labels for a {n}-node graph")
    names = tuple(str(i) for i in range(1, n + 1))
    edges = tuple(
        Edge(k + 1, names[i - 1], names[j - 1], p)
        for k, (i, j) in enumerate(combinations(range(1, n + 1), 2))
    )
    base = StochasticGraph(nodes=frozenset(names), edges=edges, terminals=frozenset(names))
    out = identify_nodes(base, names, a)
    return StochasticGraph(nodes=out.nodes, edges=out.edges, terminals=out.nodes)
