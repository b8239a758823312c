"""Subgraph isomorphism on graph classes excluding a fixed linear forest."""

from .errors import Budget, BudgetExceeded, ClassViolation
from .graphs import (
    Embedding,
    Graph,
    clique,
    complement,
    components,
    contains_disjoint_p5,
    contains_path_subgraph,
    disjoint_union,
    double_star,
    has_disjoint_path_packing,
    make_family,
    path,
    star,
    verify_embedding,
)
from .harness import SolveResult, bench, dispatch, generate, run_algorithm
from .recognizers import (
    ViCertificate,
    TwinPartition,
    enumerate_minimal_vi_sets,
    find_p4_hitting_set,
    find_vi_set,
    is_vi_set,
    kp3_free_vi_bound,
    twin_partition,
)
from .solvers import (
    solve_backtracking,
    solve_bounded_diversity,
    solve_bounded_hitting,
    solve_bounded_integrity,
    solve_p4_free,
    solve_p4_plus_small_paths,
)

__all__ = [
    "Budget",
    "BudgetExceeded",
    "ClassViolation",
    "Embedding",
    "Graph",
    "SolveResult",
    "TwinPartition",
    "ViCertificate",
    "bench",
    "clique",
    "complement",
    "components",
    "contains_disjoint_p5",
    "contains_path_subgraph",
    "disjoint_union",
    "dispatch",
    "double_star",
    "enumerate_minimal_vi_sets",
    "find_p4_hitting_set",
    "find_vi_set",
    "generate",
    "has_disjoint_path_packing",
    "is_vi_set",
    "kp3_free_vi_bound",
    "make_family",
    "path",
    "run_algorithm",
    "solve_backtracking",
    "solve_bounded_diversity",
    "solve_bounded_hitting",
    "solve_bounded_integrity",
    "solve_p4_free",
    "solve_p4_plus_small_paths",
    "star",
    "twin_partition",
    "verify_embedding",
]
