"""coplab: exact pursuit-evasion laboratory on small graphs.

Computes cop number, independence number, and clique cover number exactly;
samples a seeded clique-cover random construction with deterministic property
checks; and executes scripted cop/robber strategies that extract induced-cycle
or capture certificates.
"""

from ._kernels import BACKEND
from .graphs import (
    Graph,
    bits,
    complement,
    disjoint_union,
    edges_between,
    enumerate_labeled_graphs,
    from_edges,
    induced_subgraph,
    make_family,
    mask_of,
    parse_graph6,
    petersen,
    read_graph6_stream,
    shrikhande,
    to_graph6,
)
from .invariants import (
    CliquePartition,
    InvariantReport,
    chromatic_number,
    clique_cover_number,
    clique_number,
    clique_pairs_connected,
    has_induced_cycle,
    independence_number,
    induced_cycle_spectrum,
    induces_cycle,
    invariant_report,
    is_dismantlable,
)
from .solver import (
    GameState,
    Transcript,
    WinTable,
    cop_number,
    cops_win,
    optimal_cop_strategy,
    optimal_robber_strategy,
    play,
    state_index,
    verify_transcript,
)
from .randgraphs import (
    PlantedCoverParams,
    blockable_vertices,
    check_max_degree,
    chernoff_bound,
    default_params,
    feasibility_inequalities,
    monte_carlo,
    sample_planted_cover,
    theta_of_sample,
)
from .strategies import (
    ExtractionResult,
    clique_guard_strategy,
    extract_induced_c4,
    extract_induced_cycle,
    partition_evader,
    robber_safe_set,
)

__version__ = "0.1.0"
