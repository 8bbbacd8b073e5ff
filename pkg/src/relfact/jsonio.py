"""Wire formats: graphs, decompositions, matrices, and exact rationals.

Rationals travel as reduced "num/den" strings with the sign on the
numerator.  Probabilities are accepted as "num/den", as decimal strings
(converted exactly, so "0.9" becomes 9/10), or as the integers 0 and 1;
floats are rejected because they would smuggle binary rounding into an
exact pipeline.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .graphs import CutDecomposition, Edge, StochasticGraph
from .linalg import InvariantFactors
from .conmatrix import ConnectivityBundle


class FormatError(ValueError):
    """Structurally malformed document (distinct from semantic graph errors)."""


def fraction_to_str(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def fraction_from_str(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"bad rational {s!r}: {exc}") from None


def prob_from_json(value: Any) -> Fraction:
    if isinstance(value, bool):
        raise FormatError(f"probability must be a string or 0/1, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return fraction_from_str(value)
    if isinstance(value, float):
        raise FormatError(
            f"probability {value!r} is a float; pass it as a string for exactness"
        )
    raise FormatError(f"probability must be a string or 0/1, got {value!r}")


def _require(obj: dict, key: str, kind: type) -> Any:
    if key not in obj:
        raise FormatError(f"missing key {key!r}")
    val = obj[key]
    if not isinstance(val, kind):
        raise FormatError(f"key {key!r} must be {kind.__name__}, got {type(val).__name__}")
    return val


def graph_from_obj(obj: Any) -> StochasticGraph:
    if not isinstance(obj, dict):
        raise FormatError("graph document must be an object")
    nodes = _require(obj, "nodes", list)
    edges_raw = _require(obj, "edges", list)
    terminals = _require(obj, "terminals", list)
    if not all(isinstance(x, str) for x in nodes + terminals):
        raise FormatError("nodes and terminals must be strings")
    edges = []
    for item in edges_raw:
        if not isinstance(item, dict):
            raise FormatError("each edge must be an object")
        eid = _require(item, "id", int)
        u = _require(item, "u", str)
        v = _require(item, "v", str)
        p = prob_from_json(_require(item, "p", object))
        edges.append(Edge(eid, u, v, p))
    return StochasticGraph(nodes=frozenset(nodes), edges=tuple(edges), terminals=frozenset(terminals))


def graph_to_obj(g: StochasticGraph) -> dict:
    return {
        "nodes": sorted(g.nodes),
        "edges": [
            {"id": e.id, "u": e.u, "v": e.v, "p": fraction_to_str(e.prob)}
            for e in sorted(g.edges, key=lambda e: e.id)
        ],
        "terminals": sorted(g.terminals),
    }


def decomposition_from_obj(obj: Any) -> CutDecomposition:
    if not isinstance(obj, dict):
        raise FormatError("decomposition document must be an object")
    boundary = _require(obj, "boundary", list)
    if not all(isinstance(x, str) for x in boundary):
        raise FormatError("boundary must be a list of node names")
    return CutDecomposition(
        g1=graph_from_obj(_require(obj, "g1", dict)),
        g2=graph_from_obj(_require(obj, "g2", dict)),
        boundary=tuple(boundary),
    )


def decomposition_to_obj(d: CutDecomposition) -> dict:
    return {
        "g1": graph_to_obj(d.g1),
        "g2": graph_to_obj(d.g2),
        "boundary": list(d.boundary),
    }


def conmatrix_to_obj(bundle: ConnectivityBundle, det: int, factors: InvariantFactors) -> dict:
    return {
        "n": bundle.n,
        "order": [str(p) for p in bundle.order.states],
        "A": [list(row) for row in bundle.A],
        "A_inv": [[fraction_to_str(x) for x in row] for row in bundle.A_inv],
        "det": str(det),
        "invariant_factors": [str(d) for d in factors.snf_diagonal],
        "torsion_prime_powers": [list(t) for t in factors.torsion_prime_powers],
    }


def dumps_canonical(obj: Any) -> str:
    """Deterministic JSON: sorted keys, compact separators, one newline."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"
