"""Exact, brute-force-checked tools for intersecting uniform set families."""

from .algebra import (
    InclusionMatrix,
    MultilinearPolynomial,
    build_polynomial,
    coefficient_matrix,
    ekr_inclusion_matrix,
    ekr_matrix_proof,
    exact_rank,
    frw_independence_check,
    inclusion_matrix,
    polynomials_independent,
)
from .errors import *  # noqa: F401,F403
from .oracle import (
    OracleResult,
    enumerate_subfamilies,
    max_intersecting_bruteforce,
    max_t_intersecting_bruteforce,
    random_maximal_intersecting,
    rational_rank,
)
from .pipeline import (
    ChainReport,
    EkrDecomposition,
    ExtremalClass,
    ExtremalKind,
    check_shadow_disjoint,
    classify_extremal,
    decompose,
    g0_min_intersection,
    run_chain,
    star,
)
from .setcore import (
    Subset,
    UniformFamily,
    all_k_subsets,
    colex_rank,
    colex_unrank,
    complement_within,
    format_family,
    intersection_size,
    intersection_sizes,
    is_intersecting,
    make_family,
    min_pairwise_intersection,
    parse_family,
)
from .shadows import ExtremalCase, KatonaReport, classify_katona_equality, katona_check, katona_exhaustive, shadow

__version__ = "0.1.0"
