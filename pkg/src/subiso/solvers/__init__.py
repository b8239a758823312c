from .backtracking import solve_backtracking
from .p4free import solve_p4_free
from .vertex_integrity import solve_bounded_integrity, solve_p4_plus_small_paths
from .hitting import solve_bounded_hitting
from .neighborhood_diversity import solve_bounded_diversity

__all__ = [
    "solve_backtracking",
    "solve_p4_free",
    "solve_bounded_integrity",
    "solve_p4_plus_small_paths",
    "solve_bounded_hitting",
    "solve_bounded_diversity",
]
