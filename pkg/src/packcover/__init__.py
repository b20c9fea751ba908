"""Exact digraph containment, width certificates, and packing/covering duality."""

from .containment import (
    ButterflyMinorModel,
    CheckResult,
    EnumerationBudgetError,
    HostFamily,
    HostSubdigraph,
    PathsModel,
    Relation,
    SearchLimits,
    SizeCapError,
    StrongMinorModel,
    SubdigraphModel,
    contains,
    enumerate_minimal_hosts,
    host_digraph,
    model_footprint,
    parse_relation,
    verify_model,
)
from .dgr import DgrFormatError, format_dgr, load_digraph, parse_dgr, save_digraph
from .digraph import (
    Digraph,
    SccPartition,
    canonical_form,
    complete_digraph,
    contract_butterfly,
    contract_strong,
    delete_arcs,
    delete_vertices,
    directed_cycle,
    disjoint_union,
    has_directed_cycle,
    induced,
    induced_with_map,
    is_contractible_arc,
    is_isomorphic,
    is_s_semicomplete,
    is_strongly_connected,
    random_s_semicomplete,
    random_tournament,
    relabel,
    scc,
    single_vertex,
    subdigraph,
    transitive_tournament,
)
from .duality import (
    ArcCoverOutcome,
    CoverCheck,
    EpReport,
    PiercingInstance,
    PiercingResult,
    VertexCoverOutcome,
    cover_from_cutwidth_ordering,
    cover_from_path_decomposition,
    ep_verify,
    host_trace,
    max_packing,
    min_cover,
    pierce_path_subgraphs,
)
from .ensembles import (
    all_tournaments,
    derive_seed,
    random_semicomplete_batch,
    tournament_from_mask,
    tournaments_up_to_iso,
)
from .cli import ExperimentConfig, RunArtifact, builtin_pattern, save_report
from .widths import (
    DecompositionCheck,
    Layout,
    PathDecomposition,
    WidthCertificate,
    cutwidth,
    directed_pathwidth,
    layout_cutwidth,
    layout_to_decomposition,
    layout_vertex_separation,
    validate_path_decomposition,
)

__all__ = [name for name in dir() if not name.startswith("_")]
