"""Small-graph toolkit for checking when a large adjacency eigenvalue forces a factor.

Graphs are bitmask-based with graph6 I/O. Factor decisions come with
certificates: a factor when one exists, a violating vertex set otherwise.
Verifiers sweep every small graph, or seeded samples for larger orders.
"""

from __future__ import annotations

from .canon import canonical_code, canonical_form, is_isomorphic
from .enumeration import EnumerationSource, Sampler, enumerate_graphs, graph_classes
from .errors import (
    CapacityError,
    ConvergenceError,
    Graph6Error,
    GraphFactorsError,
    NotEquitableError,
    ParameterError,
)
from .factors import (
    FactorQuery,
    FactorResult,
    Outcome,
    ab_factor,
    f_factor,
    fractional_pm,
    is_unique_pm,
    kelmans_sequence_to_extremal,
    odd_1b_factor,
    one_b_factor_exists,
    perfect_matching,
)
from .graph import (
    Graph,
    complete,
    g_unique_kfactor,
    g_unique_pm,
    h_na,
    isolated_extremal,
    join,
    pair_join_graph,
    t_graph,
    union,
)
from .graph6 import parse_graph6, write_graph6
from .matching import max_matching
from .spectral import (
    Verdict,
    char_poly,
    compare_rho,
    matrix_spectral_radius,
    quotient_matrix,
    spectral_radius,
)
from .theorems import (
    VerificationReport,
    explore_problem_5_1,
    verify_cor_1_1,
    verify_lemma_suite,
    verify_thm_1_1,
    verify_thm_1_2,
    verify_thm_1_3,
    verify_thm_5_1,
)

__version__ = "0.1.0"

__all__ = [
    "CapacityError",
    "ConvergenceError",
    "EnumerationSource",
    "FactorQuery",
    "FactorResult",
    "Graph",
    "Graph6Error",
    "GraphFactorsError",
    "NotEquitableError",
    "Outcome",
    "ParameterError",
    "Sampler",
    "Verdict",
    "VerificationReport",
    "ab_factor",
    "canonical_code",
    "canonical_form",
    "char_poly",
    "compare_rho",
    "complete",
    "enumerate_graphs",
    "explore_problem_5_1",
    "f_factor",
    "fractional_pm",
    "g_unique_kfactor",
    "g_unique_pm",
    "graph_classes",
    "h_na",
    "is_isomorphic",
    "is_unique_pm",
    "isolated_extremal",
    "join",
    "kelmans_sequence_to_extremal",
    "pair_join_graph",
    "matrix_spectral_radius",
    "max_matching",
    "odd_1b_factor",
    "one_b_factor_exists",
    "parse_graph6",
    "perfect_matching",
    "quotient_matrix",
    "spectral_radius",
    "t_graph",
    "union",
    "verify_cor_1_1",
    "verify_lemma_suite",
    "verify_thm_1_1",
    "verify_thm_1_2",
    "verify_thm_1_3",
    "verify_thm_5_1",
    "write_graph6",
]
