"""Dense families of subsets of [n]^d with no symmetric difference equal to
the d-th power of a union of few intervals, plus exact verifiers."""

from .algebra_checks import (
    build_inclusion_matrix,
    check_inclusion_exclusion_zero,
    check_omega_identity,
    expand_valueset,
    verify_independence,
)
from .code_builder import (
    GraphParityCode,
    ParityCode,
    build_code,
    build_graph_code,
    membership,
    restrict_to_best_slice,
    solve_parity_weights,
)
from .interval_union import Interval, IntervalUnion, canonicalize, count_unions, enumerate_unions
from .value_space import PointSet, ValueSpaceIndex
from .witness_walks import Walk, bfs_bipartite, odd_closed_walk, verify_walk

__version__ = "0.1.0"
