"""Ramsey numbers of chorded cycles: exact search, extremal certificates and embedding tools."""

from ._core import (
    AllocationError,
    BudgetExceeded,
    CapExceeded,
    ChainEmbedError,
    Coloring,
    Graph,
    allocate_chunks,
    almost_bipartite_index,
    arrows,
    certify_lower_bound,
    chain_path_embed,
    chorded_cycle,
    clique_block_coloring,
    complete_graph,
    construction_lower_bound,
    cycle_graph,
    even_extremal_coloring,
    find_subgraph,
    is_bipartite,
    k_almost_extremal_coloring,
    mono_copy,
    odd_extremal_coloring,
    paper_constants,
    path_graph,
    prepare_host,
    ramsey_number,
    random_cluster_chain,
    random_host_instance,
    regularity_check,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
