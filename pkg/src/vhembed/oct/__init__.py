"""Odd cycle transversal solvers."""

from .bounds import lower_bound_witness, oct_upper_lower_bounds
from .brute import oct_brute_force
from .components import oct_via_components
from .decomposition import OctDecomposition
from .exact import oct_exact
from .greedy import DEFAULT_RESTARTS, best_of_greedy, greedy_bipartite
from .series_parallel import (
    NestedEarDecomposition,
    ear_decompose_sp,
    oct_series_parallel,
    odd_ear_runs,
    sp_parse,
    validate_nested_ears,
)

__all__ = [
    "DEFAULT_RESTARTS",
    "NestedEarDecomposition",
    "OctDecomposition",
    "best_of_greedy",
    "ear_decompose_sp",
    "greedy_bipartite",
    "lower_bound_witness",
    "oct_brute_force",
    "oct_exact",
    "oct_series_parallel",
    "oct_upper_lower_bounds",
    "oct_via_components",
    "odd_ear_runs",
    "sp_parse",
    "validate_nested_ears",
]
