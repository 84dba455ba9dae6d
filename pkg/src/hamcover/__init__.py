"""Hamilton cycle covers of graphs, with the tools needed to build and check them."""

from .cover import (
    CoverCertificate,
    brute_force_min_cover,
    build_split_plan,
    cover_all_but_star,
    desk_split_plan,
    finish_cover,
    optimal_cover,
    parity_obstruction_check,
    verify_cover,
)
from .factor import FFactorInstance, find_f_factor, regularize, tutte_deficiency
from .graph import Graph, generate_gnp, read_graph, write_graph
from .hamilton import (
    SearchBudget,
    cover_with_hamilton_cycles,
    find_hamilton_cycle,
    hamilton_path_between,
    pack_hamilton_cycles,
)
from .pseudorandom import check_pseudorandom

__version__ = "0.1.0"

__all__ = [
    "CoverCertificate",
    "brute_force_min_cover",
    "build_split_plan",
    "cover_all_but_star",
    "desk_split_plan",
    "finish_cover",
    "optimal_cover",
    "parity_obstruction_check",
    "verify_cover",
    "FFactorInstance",
    "find_f_factor",
    "regularize",
    "tutte_deficiency",
    "Graph",
    "generate_gnp",
    "read_graph",
    "write_graph",
    "SearchBudget",
    "cover_with_hamilton_cycles",
    "find_hamilton_cycle",
    "hamilton_path_between",
    "pack_hamilton_cycles",
    "check_pseudorandom",
]
