"""Exact-rational search for extreme cut-generating functions on cyclic groups."""

from .bounds import (
    HalvingSequence,
    basis_determinant,
    basis_matrix,
    check_upper_bound,
    construct_sequence,
    empirical_complexity,
)
from .complex2d import (
    ComponentPartition,
    Face,
    Painting,
    covered_components,
    painting_from_function,
)
from .extremality import (
    ExtremalityResult,
    is_extreme,
    is_polytope_vertex,
    oversampling_vertex_test,
)
from .grid_functions import (
    GridFunction,
    apply_automorphism,
    arithmetic_complexity,
    gmic,
    is_minimal,
    load_function,
    number_of_slopes,
    restrict,
    save_function,
)
from .mip import (
    MipModel,
    SolutionFile,
    build_mip,
    build_mip_2q,
    emit_mip,
    emit_mip_2q,
    function_assignment,
    mip_2q_filename,
    mip_filename,
    parse_lp,
    refind_function,
)
from .patterns import (
    PatternInstance,
    build_prescribed_painting,
    build_slope_polytope,
    grid_size,
    pattern_extreme,
    pi_from_slopes,
    slopes_from_pi,
)
from .polyhedra import (
    Polytope,
    build_minimal_function_polytope,
    build_triple_system_polytope,
    dimension,
    enumerate_vertices,
    function_from_vertex,
    remove_redundant,
)
from .search import (
    COMBINED,
    HEURISTIC,
    SearchConfig,
    SearchOutcome,
    VERTEX_FILTER,
    combined_search,
    exact_epsilon,
    heuristic_backtracking_search,
    run_search,
    vertex_filtering_search,
)
from .svgplot import render_2d_diagram

__all__ = [
    "ComponentPartition",
    "ExtremalityResult",
    "Face",
    "GridFunction",
    "HalvingSequence",
    "MipModel",
    "Painting",
    "PatternInstance",
    "Polytope",
    "COMBINED",
    "HEURISTIC",
    "SearchConfig",
    "SearchOutcome",
    "VERTEX_FILTER",
    "SolutionFile",
    "apply_automorphism",
    "arithmetic_complexity",
    "basis_determinant",
    "basis_matrix",
    "build_minimal_function_polytope",
    "build_mip",
    "build_mip_2q",
    "build_prescribed_painting",
    "build_slope_polytope",
    "build_triple_system_polytope",
    "check_upper_bound",
    "combined_search",
    "construct_sequence",
    "covered_components",
    "dimension",
    "emit_mip",
    "emit_mip_2q",
    "empirical_complexity",
    "enumerate_vertices",
    "exact_epsilon",
    "function_assignment",
    "function_from_vertex",
    "gmic",
    "grid_size",
    "heuristic_backtracking_search",
    "is_extreme",
    "is_minimal",
    "is_polytope_vertex",
    "load_function",
    "mip_2q_filename",
    "mip_filename",
    "number_of_slopes",
    "oversampling_vertex_test",
    "painting_from_function",
    "parse_lp",
    "pattern_extreme",
    "pi_from_slopes",
    "refind_function",
    "remove_redundant",
    "render_2d_diagram",
    "restrict",
    "run_search",
    "save_function",
    "slopes_from_pi",
    "vertex_filtering_search",
]
