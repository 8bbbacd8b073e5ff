"""Exact K-terminal network reliability with boundary-cut factorization.

Everything runs in exact rational arithmetic.  The public surface mirrors
the module layout: partition lattice, stochastic graphs, connectivity
matrices, the reliability routes, and the random cluster model.
"""

from .cluster import ClusterPolynomial, dq_at_zero, factorized_dq, partition_function
from .conmatrix import (
    ConnectivityBundle,
    connectivity_matrix,
    connectivity_matrix_det,
    connectivity_number,
    invert_connectivity_matrix,
    pi_vector,
    xi_vector,
)
from .graphs import (
    CutDecomposition,
    Edge,
    StochasticGraph,
    contract,
    delete,
    identify_nodes,
    irrelevant_edges,
    is_k_connected,
    is_k_pathset,
    validate_decomposition,
)
from .linalg import (
    InvariantFactors,
    abelian_signature,
    fraction_free_determinant,
    rational_inverse_oracle,
    smith_normal_form,
)
from .partitions import (
    CoherentOrder,
    Orbit,
    Partition,
    all_partitions,
    bell_number,
    coherent_order,
    conjugate,
    is_connected_pair,
    join,
    meet,
    orbits,
    refines,
)
from .reliability import (
    FactorizationResult,
    ReliabilityPolynomial,
    StateDistribution,
    conditioned_reliability,
    factorization_detail,
    factorized_reliability,
    gamma_graph,
    joint_reliability,
    n2_closed_form,
    reliability_bruteforce,
    reliability_factoring,
    reliability_polynomial,
    state_distribution,
)

__all__ = [name for name in dir() if not name.startswith("_")]
