"""Connectivity matrices over a coherent partition order, and their exact
inverses through the triangular product B * C * D.

The matrix A marks which pairs of boundary partitions jointly link the whole
boundary.  Its inverse supplies the bilinear coefficients of the cut
factorization.  B and D are the matrices of two linear operators on the
partition algebra: pi expands a state through alternating joins over the
block-crossing pairs, xi through alternating meets over one-block splits.
Both are triangular with unit diagonal in any coherent order, which is what
makes the inverse exact and cheap.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .linalg import (
    InvariantFactors,
    fraction_free_determinant,
    identity_matrix,
    is_symmetric,
    mat_mul,
    rational_inverse_oracle,
    smith_normal_form,
)
from .partitions import (
    CoherentOrder,
    Partition,
    coherent_order,
    is_connected_pair,
    join,
    meet,
)

# Sparse vector in the partition algebra: absent entries are 0.
AlgebraVector = dict[Partition, int]


def pair_partition(n: int, i: int, j: int) -> Partition:
    """The partition of {1..n} whose only non-singleton block is {i, j}."""
    blocks = [(x,) for x in range(1, n + 1) if x not in (i, j)]
    blocks.append(tuple(sorted((i, j))))
    return Partition(tuple(blocks))


def crossing_pairs(a: Partition) -> list[tuple[int, int]]:
    """Unordered pairs of ground elements lying in different blocks of a."""
    owner = {x: k for k, blk in enumerate(a.blocks) for x in blk}
    return [(i, j) for i, j in combinations(range(1, a.n + 1), 2) if owner[i] != owner[j]]


def join_action(p: Partition, vec: AlgebraVector) -> AlgebraVector:
    """Multiply a sparse algebra vector by a basis state in the join algebra."""
    out: AlgebraVector = {}
    for s, c in vec.items():
        t = join(p, s)
        c2 = out.get(t, 0) + c
        if c2:
            out[t] = c2
        elif t in out:
            del out[t]
    return out


def meet_action(p: Partition, vec: AlgebraVector) -> AlgebraVector:
    """Multiply a sparse algebra vector by a basis state in the meet algebra."""
    out: AlgebraVector = {}
    for s, c in vec.items():
        t = meet(p, s)
        c2 = out.get(t, 0) + c
        if c2:
            out[t] = c2
        elif t in out:
            del out[t]
    return out


def _vec_sub(u: AlgebraVector, v: AlgebraVector) -> AlgebraVector:
    out = dict(u)
    for s, c in v.items():
        c2 = out.get(s, 0) - c
        if c2:
            out[s] = c2
        elif s in out:
            del out[s]
    return out


def pi_vector(a: Partition) -> AlgebraVector:
    """Expansion of pi(a) in the partition basis.

    pi(a) is the product, over every pair {i,j} crossing the blocks of a, of
    (identity - pair_state({i,j})) in the join algebra, applied to a.
    Expanded, that is the signed sum over subsets F of crossing pairs of
    join(a, <F>).  The coefficient of a itself is 1 and all other support is
    strictly coarser, so the matrix of pi is lower triangular with unit
    diagonal in a coherent order.
    """
    vec: AlgebraVector = {a: 1}
    n = a.n
    for i, j in crossing_pairs(a):
        vec = _vec_sub(vec, join_action(pair_partition(n, i, j), vec))
    return vec


def connectivity_number(a: Partition) -> int:
    """Coefficient of the one-block state in pi(a); magnitude (m-1)! for a
    state with m blocks, and invariant under relabeling."""
    return pi_vector(a).get(Partition.top(a.n), 0)


def cocovers(a: Partition) -> list[Partition]:
    """States obtained from a by splitting exactly one block into two
    non-empty parts: the immediate refinements of a."""
    out = []
    for k, blk in enumerate(a.blocks):
        if len(blk) < 2:
            continue
        rest = a.blocks[:k] + a.blocks[k + 1 :]
        first = blk[0]
        others = blk[1:]
        # enumerate proper subsets containing the block minimum: each split once
        for r in range(len(others)):
            for keep in combinations(others, r):
                part1 = (first,) + keep
                part2 = tuple(x for x in others if x not in keep)
                out.append(Partition(rest + (part1, part2)))
    return out


def xi_vector(a: Partition) -> AlgebraVector:
    """Expansion of xi(a) in the partition basis.

    xi(a) is the product, over the one-block splits c of a, of (a - c) in
    the meet algebra.  Any state strictly below a is annihilated by some
    factor, any state above a fixes the whole vector, the coefficient of a
    itself is 1, and the rest of the support is strictly finer: the matrix
    of xi is upper triangular with unit diagonal in a coherent order.
    """
    vec: AlgebraVector = {a: 1}
    for c in cocovers(a):
        vec = _vec_sub(vec, meet_action(c, vec))
    return vec


def connectivity_matrix(order: CoherentOrder) -> list[list[int]]:
    """Symmetric 0/1 matrix marking the pairs of states that jointly link
    the whole boundary."""
    states = order.states
    m = len(states)
    out = [[0] * m for _ in range(m)]
    for i in range(m):
        for j in range(i, m):
            bit = int(is_connected_pair(states[i], states[j]))
            out[i][j] = bit
            out[j][i] = bit
    return out


@dataclass(frozen=True)
class ConnectivityBundle:
    """The connectivity matrix of one coherent order with its exact inverse
    and the triangular factors it came from."""

    order: CoherentOrder
    A: list[list[int]]
    B: list[list[int]]
    C: list[list[Fraction]]
    D: list[list[int]]
    A_inv: list[list[Fraction]]

    @property
    def n(self) -> int:
        return self.order.n


def invert_connectivity_matrix(order: CoherentOrder) -> ConnectivityBundle:
    """Assemble A and its inverse B*C*D over the given coherent order.

    B holds the pi expansions column by column, D the xi expansions, and C
    is diagonal with the reciprocals of the connectivity numbers.  The
    product is verified against A exactly before anything is returned.
    """
    states = order.states
    m = len(states)
    A = connectivity_matrix(order)
    B = [[0] * m for _ in range(m)]
    D = [[0] * m for _ in range(m)]
    C = [[Fraction(0)] * m for _ in range(m)]
    for j, a in enumerate(states):
        pv = pi_vector(a)
        for s, c in pv.items():
            B[order.position(s)][j] = c
        alpha = pv.get(Partition.top(order.n), 0)
        if alpha == 0:
            raise RuntimeError(f"connectivity number of {a} is 0; implementation bug")
        C[j][j] = Fraction(1, alpha)
        for s, c in xi_vector(a).items():
            D[order.position(s)][j] = c
    A_inv = mat_mul(mat_mul(B, C), D)
    if mat_mul(A, A_inv) != identity_matrix(m):
        raise RuntimeError("B*C*D failed to invert the connectivity matrix")
    if not is_symmetric(A_inv):
        raise RuntimeError("inverse of the connectivity matrix must be symmetric")
    return ConnectivityBundle(order=order, A=A, B=B, C=C, D=D, A_inv=A_inv)


def connectivity_matrix_det(n: int) -> int:
    """Determinant of the connectivity matrix, by exact fraction-free
    elimination on the canonical order."""
    return fraction_free_determinant(connectivity_matrix(coherent_order(n)))


def connectivity_invariant_factors(n: int) -> InvariantFactors:
    """Smith normal form invariants of the connectivity matrix."""
    return smith_normal_form(connectivity_matrix(coherent_order(n)))


def bundle_inverse_crosscheck(bundle: ConnectivityBundle) -> bool:
    """True iff the triangular-product inverse matches independent rational
    elimination entry for entry."""
    return bundle.A_inv == rational_inverse_oracle(bundle.A)
