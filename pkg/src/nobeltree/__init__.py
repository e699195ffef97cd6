"""Closeness and ancestry analytics for academic genealogies."""

from .closeness import (
    ClosenessRecord,
    ClosenessReport,
    HolderParams,
    Kin,
    closeness_report,
    cross_distance,
    crosscloseness,
    holder_mean,
    holder_mean_distance,
    horizontal_distance,
    kinship_neighborhood,
    pairwise_cross_distance,
)
from .errors import *  # noqa: F401,F403
from .graph import (
    FIELDS,
    Edge,
    Field,
    GenealogyGraph,
    Prize,
    Scholar,
    ancestors,
    build_graph,
    descendants,
    distance_to_set,
    generation_ancestors,
    laureate_ancestor_counts,
    laureate_descendant_counts,
    nearest_common_ancestor,
    weak_components,
)
from .ingest import DatasetManifest, load_dataset, parse_edges, parse_nodes
from .stats import (
    ancestry_summary,
    cohort_series,
    cross_table,
    laureate_pair_counts,
    tie_classification,
    welch_t,
)

__version__ = "0.1.0"
