"""Exact regularity of powers of edge ideals, with theorem-level verification sweeps."""

from ._kernels import BACKEND
from .combinatorics import (
    MatchingCertificate,
    VwcLabeling,
    canonical_form,
    check_vwc_characterization,
    induced_matching,
    induced_matching_number,
    is_very_well_covered,
    is_well_covered,
    relabel_swap,
    vwc_labeling,
)
from .errors import (
    BudgetExceeded,
    EdgeRegError,
    InvalidLabeling,
    NotAnEdge,
    NotSquarefree,
    NotVeryWellCovered,
    ParseError,
    RingMismatch,
    UnitIdeal,
    UnknownVertex,
    VerificationFailure,
    VertexNameCollision,
    ZeroIdeal,
)
from .even import (
    ColonGraph,
    EdgeProduct,
    WitnessPath,
    colon_graph,
    colon_ideal_by_even_connections,
    is_even_connected,
    verify_colon_decomposition,
    verify_gprime_vwc,
)
from .families import generate_vwc_family
from .graph import Graph, delete_closed_neighborhood, join, parse_graph, whisker
from .harness import (
    SweepConfig,
    VerificationRecord,
    differential_colon_sweep,
    verify_colon_bound,
    verify_counterexample_boundary,
    verify_main_theorem,
    verify_special_families,
)
from .homology import SimplicialComplex, reduced_homology_ranks, stanley_reisner_complex
from .lemmas import verify_structural_lemmas
from .monomial import (
    Monomial,
    MonomialIdeal,
    PolarizationMap,
    colon_by_monomial,
    edge_ideal,
    ideal_equal,
    is_squarefree,
    parse_ideal,
    polarize,
    power,
)
from .regularity import RegularityReport, regularity, regularity_lcm_lattice, regularity_squarefree

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BudgetExceeded",
    "canonical_form",
    "check_vwc_characterization",
    "colon_by_monomial",
    "colon_graph",
    "colon_ideal_by_even_connections",
    "ColonGraph",
    "delete_closed_neighborhood",
    "differential_colon_sweep",
    "edge_ideal",
    "EdgeProduct",
    "EdgeRegError",
    "generate_vwc_family",
    "Graph",
    "ideal_equal",
    "induced_matching",
    "induced_matching_number",
    "InvalidLabeling",
    "is_even_connected",
    "is_squarefree",
    "is_very_well_covered",
    "is_well_covered",
    "join",
    "MatchingCertificate",
    "Monomial",
    "MonomialIdeal",
    "NotAnEdge",
    "NotSquarefree",
    "NotVeryWellCovered",
    "parse_graph",
    "parse_ideal",
    "ParseError",
    "PolarizationMap",
    "polarize",
    "power",
    "reduced_homology_ranks",
    "regularity",
    "regularity_lcm_lattice",
    "regularity_squarefree",
    "RegularityReport",
    "relabel_swap",
    "RingMismatch",
    "SimplicialComplex",
    "stanley_reisner_complex",
    "SweepConfig",
    "UnitIdeal",
    "UnknownVertex",
    "VerificationFailure",
    "VerificationRecord",
    "verify_colon_bound",
    "verify_colon_decomposition",
    "verify_counterexample_boundary",
    "verify_gprime_vwc",
    "verify_main_theorem",
    "verify_special_families",
    "verify_structural_lemmas",
    "VertexNameCollision",
    "vwc_labeling",
    "VwcLabeling",
    "whisker",
    "WitnessPath",
    "ZeroIdeal",
]
