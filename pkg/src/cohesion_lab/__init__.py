"""Popularity games on social networks: core stability and social cohesion."""

from .graph import (
    CutProfile,
    Graph,
    GraphError,
    clique_number,
    complete_bipartite,
    complete_graph,
    connected_subsets,
    cut_profile,
    cycle_graph,
    diameter,
    eccentricity,
    enumerate_connected_graphs,
    induced_degree,
    is_connected,
    parse_edge_list,
    path_graph,
    read_edge_list,
    sample_random_graph,
    star_graph,
)
from .game import (
    BlockingCertificate,
    CohesionVerdict,
    GroupStructure,
    Method,
    Popularity,
    Status,
    TieCounts,
    blocks_grand,
    find_blocking_set,
    gamma,
    is_blocking,
    is_core_stable,
    is_socially_cohesive,
    payoff_under,
    popularity,
    tie_counts,
)

__version__ = "0.1.0"
