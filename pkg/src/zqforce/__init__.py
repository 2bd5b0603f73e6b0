"""Exact solvers and matrix certificates for zero forcing and its q-analogue.

Core surface: bitmask graphs (:mod:`zqforce.graphs`), the adversarial game
solver (:mod:`zqforce.game`), bipartite contraction criteria
(:mod:`zqforce.contraction`), threshold-graph formulas and certificates
(:mod:`zqforce.threshold`), symmetric spectral checks and family
certificates (:mod:`zqforce.spectral`), and named-family generators with a
known-values registry (:mod:`zqforce.families`).
"""

from .graphs import (
    ColouredState,
    Graph,
    build_graph,
    ccr_closure,
    induced_subgraph,
    parse_edge_list,
    parse_graph6,
    single_forces,
    to_graph6,
    uncoloured_components,
    vertex_connectivity,
)
from .game import (
    CacheLimitError,
    InfeasibleError,
    ZqResult,
    admissible_families,
    psd_closure,
    rule3_closure,
    z0_number,
    z_number,
    zq_chain,
    zq_number,
)
from .contraction import (
    ContractedBigraph,
    bipartite_contraction,
    degree_one_witness,
    has_forcing_move,
    max_matching,
)
from .threshold import (
    CreationSequence,
    ThresholdStats,
    build_threshold_graph,
    certificate_matrix,
    parse_creation_sequence,
    z_classical,
    zq_formula,
)
from .spectral import (
    Inertia,
    book_certificate,
    bipartite_prism_certificate,
    eigenvalues_sym,
    in_Sq,
    inertia,
    kneser_certificate,
    nullity,
    srg_certificate,
)
from .families import (
    FamilySpec,
    KnownValue,
    cartesian_product,
    generate,
    kneser_structure_check,
    known_values,
    probe_conjecture,
    reproduce_report,
)

__version__ = "0.1.0"
