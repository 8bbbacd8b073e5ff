"""Stochastic multigraphs with exact rational edge probabilities.

Graphs are immutable values; every operation returns a new graph.  Parallel
edges and self-loops are first class: contraction creates them and only the
irrelevant-edge pruning removes them.  Node identifiers are strings; merged
nodes take a canonical identifier joining the sorted original names with
"+", so the provenance of a quotient stays readable.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .partitions import Partition


class GraphError(ValueError):
    pass


class DecompositionError(GraphError):
    pass


class Hypothesis1Error(DecompositionError):
    """Sides share an edge, or a boundary node is missing from a side's terminals."""


class Hypothesis2Error(DecompositionError):
    """Some terminal cannot reach any boundary node; the reliability is 0."""


NODE_GLUE = "+"


def merged_node_id(parts: Iterable[str]) -> str:
    atoms = sorted({atom for part in parts for atom in part.split(NODE_GLUE)})
    return NODE_GLUE.join(atoms)


@dataclass(frozen=True)
class Edge:
    """One stochastic edge; endpoints are unordered and may coincide (loop)."""

    id: int
    u: str
    v: str
    prob: Fraction

    def __post_init__(self) -> None:
        u, v = sorted((self.u, self.v))
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "prob", Fraction(self.prob))
        if not 0 <= self.prob <= 1:
            raise GraphError(f"edge {self.id}: probability {self.prob} outside [0,1]")

    @property
    def is_loop(self) -> bool:
        return self.u == self.v

    def endpoints(self) -> tuple[str, str]:
        return (self.u, self.v)


@dataclass(frozen=True)
class StochasticGraph:
    nodes: frozenset[str]
    edges: tuple[Edge, ...]
    terminals: frozenset[str]

    def __post_init__(self) -> None:
        object.__setattr__(self, "nodes", frozenset(self.nodes))
        object.__setattr__(self, "edges", tuple(self.edges))
        object.__setattr__(self, "terminals", frozenset(self.terminals))
        if not all(isinstance(x, str) for x in self.nodes):
            raise GraphError("node identifiers must be strings")
        ids = [e.id for e in self.edges]
        if len(ids) != len(set(ids)):
            raise GraphError("edge identifiers must be pairwise distinct")
        for e in self.edges:
            if e.u not in self.nodes or e.v not in self.nodes:
                raise GraphError(f"edge {e.id} endpoint outside the node set")
        if not self.terminals <= self.nodes:
            raise GraphError("terminals must be a subset of the nodes")

    @property
    def edge_ids(self) -> frozenset[int]:
        return frozenset(e.id for e in self.edges)

    def edge(self, edge_id: int) -> Edge:
        for e in self.edges:
            if e.id == edge_id:
                return e
        raise GraphError(f"unknown edge id {edge_id}")


@dataclass(frozen=True)
class CutDecomposition:
    """Two subgraphs sharing exactly the boundary nodes (and no edges)."""

    g1: StochasticGraph
    g2: StochasticGraph
    boundary: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "boundary", tuple(self.boundary))

    @property
    def n(self) -> int:
        return len(self.boundary)


class UnionFind:
    """Plain disjoint-set union over hashable items, with path compression."""

    def __init__(self, items: Iterable = ()) -> None:
        self.parent = {x: x for x in items}

    def add(self, x) -> None:
        self.parent.setdefault(x, x)

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, x, y) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[rx] = ry

    def same(self, x, y) -> bool:
        return self.find(x) == self.find(y)

    def component_count(self) -> int:
        return sum(1 for x in self.parent if self.parent[x] == x)


def contract(g: StochasticGraph, edge_id: int) -> StochasticGraph:
    """Quotient of g by one edge: endpoints merge, the edge disappears,
    every other edge is re-targeted (parallels become loops and stay)."""
    e = g.edge(edge_id)
    merged = merged_node_id((e.u, e.v))
    old = {e.u, e.v}
    if merged in g.nodes and merged not in old:
        raise GraphError(f"merged identifier {merged!r} collides with an existing node")

    def q(x: str) -> str:
        return merged if x in old else x

    return StochasticGraph(
        nodes=frozenset(q(x) for x in g.nodes),
        edges=tuple(Edge(f.id, q(f.u), q(f.v), f.prob) for f in g.edges if f.id != edge_id),
        terminals=frozenset(q(t) for t in g.terminals),
    )


def delete(g: StochasticGraph, edge_id: int) -> StochasticGraph:
    """g without one edge; nodes and terminals untouched."""
    g.edge(edge_id)
    return StochasticGraph(
        nodes=g.nodes,
        edges=tuple(f for f in g.edges if f.id != edge_id),
        terminals=g.terminals,
    )


def delete_many(g: StochasticGraph, edge_ids: Iterable[int]) -> StochasticGraph:
    drop = set(edge_ids)
    unknown = drop - set(g.edge_ids)
    if unknown:
        raise GraphError(f"unknown edge ids {sorted(unknown)}")
    return StochasticGraph(
        nodes=g.nodes,
        edges=tuple(f for f in g.edges if f.id not in drop),
        terminals=g.terminals,
    )


def is_k_pathset(g: StochasticGraph, state: Mapping[int, int]) -> bool:
    """True iff the operative edges of the state link all terminals together."""
    if set(state) != set(g.edge_ids):
        raise GraphError("state domain must equal the graph's edge-id set")
    if len(g.terminals) <= 1:
        return True
    uf = UnionFind(g.nodes)
    for e in g.edges:
        if state[e.id]:
            uf.union(e.u, e.v)
    root = None
    for t in g.terminals:
        r = uf.find(t)
        if root is None:
            root = r
        elif r != root:
            return False
    return True


def is_k_connected(g: StochasticGraph) -> bool:
    """Connectivity of the terminals when every edge is operative."""
    return is_k_pathset(g, {e.id: 1 for e in g.edges})


def identify_nodes(g: StochasticGraph, boundary: Iterable[str], a: Partition) -> StochasticGraph:
    """Merge boundary nodes that share a block of a; everything else is mapped
    through the quotient.  All edges are retained (loops included)."""
    boundary = tuple(boundary)
    if a.n != len(boundary):
        raise GraphError(f"partition of {a.n} labels against boundary of size {len(boundary)}")
    for x in boundary:
        if x not in g.nodes:
            raise GraphError(f"boundary node {x!r} not in graph")
    mapping: dict[str, str] = {}
    for blk in a.blocks:
        members = {boundary[i - 1] for i in blk}
        if len(members) > 1:
            target = merged_node_id(members)
            if target in g.nodes and target not in members:
                raise GraphError(
                    f"merged identifier {target!r} collides with an existing node"
                )
            for x in members:
                mapping[x] = target

    def q(x: str) -> str:
        return mapping.get(x, x)

    return StochasticGraph(
        nodes=frozenset(q(x) for x in g.nodes),
        edges=tuple(Edge(e.id, q(e.u), q(e.v), e.prob) for e in g.edges),
        terminals=frozenset(q(t) for t in g.terminals),
    )


def _biconnected_blocks(g: StochasticGraph) -> tuple[list[set[int]], set[str]]:
    """Edge sets of the biconnected blocks (loops excluded) and the cut nodes.

    Multigraph-aware: traversal is tracked per edge id, so a parallel edge to
    the DFS parent counts as a cycle, not a revisit.
    """
    adj: dict[str, list[tuple[int, str]]] = defaultdict(list)
    for e in g.edges:
        if e.is_loop:
            continue
        adj[e.u].append((e.id, e.v))
        adj[e.v].append((e.id, e.u))

    disc: dict[str, int] = {}
    low: dict[str, int] = {}
    used: set[int] = set()
    stack: list[int] = []
    blocks: list[set[int]] = []
    cut: set[str] = set()
    clock = [0]

    def dfs(u: str, parent_eid: int | None) -> None:
        disc[u] = low[u] = clock[0]
        clock[0] += 1
        children = 0
        for eid, w in adj[u]:
            if eid in used:
                continue
            used.add(eid)
            stack.append(eid)
            if w not in disc:
                children += 1
                dfs(w, eid)
                low[u] = min(low[u], low[w])
                if low[w] >= disc[u]:
                    if parent_eid is not None or children > 1:
                        cut.add(u)
                    comp = set()
                    while True:
                        x = stack.pop()
                        comp.add(x)
                        if x == eid:
                            break
                    blocks.append(comp)
            else:
                low[u] = min(low[u], disc[w])

    for v in sorted(adj):
        if v not in disc:
            dfs(v, None)
    return blocks, cut


def irrelevant_edges(g: StochasticGraph) -> set[int]:
    """Edges that no minimal terminal-linking state uses.

    Characterization: loops are always irrelevant, and a non-loop edge is
    relevant exactly when its biconnected block sits on a block-cut-tree
    path between two terminal locations (so some simple terminal-to-terminal
    path crosses it).  When the terminals are not even connected with every
    edge operative the reliability is 0 and every edge is vacuously
    irrelevant, so the whole edge set comes back.
    """
    if len(g.terminals) <= 1:
        return set(g.edge_ids)
    if not is_k_connected(g):
        return set(g.edge_ids)

    blocks, cut = _biconnected_blocks(g)
    edge_by_id = {e.id: e for e in g.edges}
    block_vertices = [
        {v for eid in blk for v in edge_by_id[eid].endpoints()} for blk in blocks
    ]

    # block-cut forest: block nodes ("b", i) joined to their cut vertices ("c", v)
    tree: dict[tuple, set[tuple]] = defaultdict(set)
    home: dict[str, tuple] = {}
    for i, verts in enumerate(block_vertices):
        bnode = ("b", i)
        tree.setdefault(bnode, set())
        for v in verts:
            if v in cut:
                cnode = ("c", v)
                tree[bnode].add(cnode)
                tree[cnode].add(bnode)
            else:
                home[v] = bnode
    locations = {("c", t) if t in cut else home[t] for t in g.terminals}

    # Steiner subtree spanning the terminal locations: strip non-terminal leaves
    alive = set(tree)
    degree = {x: len(tree[x]) for x in tree}
    frontier = [x for x in alive if degree[x] <= 1 and x not in locations]
    while frontier:
        x = frontier.pop()
        if x not in alive or x in locations:
            continue
        alive.discard(x)
        for y in tree[x]:
            if y in alive:
                degree[y] -= 1
                if degree[y] <= 1 and y not in locations:
                    frontier.append(y)

    relevant: set[int] = set()
    for i, blk in enumerate(blocks):
        if ("b", i) in alive:
            relevant |= blk
    return set(g.edge_ids) - relevant


def union_graph(g1: StochasticGraph, g2: StochasticGraph) -> StochasticGraph:
    return StochasticGraph(
        nodes=g1.nodes | g2.nodes,
        edges=g1.edges + g2.edges,
        terminals=g1.terminals | g2.terminals,
    )


def validate_decomposition(d: CutDecomposition) -> StochasticGraph:
    """Check the decomposition invariants and return the union graph.

    Raises Hypothesis1Error when the sides share an edge, share nodes beyond
    the boundary, or a boundary node is not a terminal of both sides; raises
    Hypothesis2Error when some terminal of the union cannot reach the
    boundary (in that case the overall reliability is 0).
    """
    bset = set(d.boundary)
    shared_edges = set(d.g1.edge_ids) & set(d.g2.edge_ids)
    if shared_edges:
        raise Hypothesis1Error(
            f"Hypothesis 1 violated: sides share edge ids {sorted(shared_edges)}"
        )
    shared_nodes = set(d.g1.nodes) & set(d.g2.nodes)
    if shared_nodes != bset:
        raise Hypothesis1Error(
            "Hypothesis 1 violated: shared nodes "
            f"{sorted(shared_nodes)} differ from the boundary {sorted(bset)}"
        )
    for side, g in (("g1", d.g1), ("g2", d.g2)):
        missing = bset - set(g.terminals)
        if missing:
            raise Hypothesis1Error(
                f"Hypothesis 1 violated: boundary nodes {sorted(missing)} "
                f"missing from the terminals of {side}"
            )
    union = union_graph(d.g1, d.g2)
    uf = UnionFind(union.nodes)
    for e in union.edges:
        uf.union(e.u, e.v)
    boundary_roots = {uf.find(b) for b in bset}
    stranded = sorted(t for t in union.terminals if uf.find(t) not in boundary_roots)
    if stranded:
        raise Hypothesis2Error(
            f"Hypothesis 2 violated: terminals {stranded} reach no boundary node"
        )
    return union
