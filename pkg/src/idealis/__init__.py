"""Edge ideals, vertex cover ideals and their powers for (C4, 2K2)-free graphs."""

from .graph import (
    Graph,
    Partition,
    complement,
    find_induced,
    is_chordal,
    max_degree,
    minimal_vertex_covers,
    random_c4_2k2_graph,
    recognize_c4_2k2,
)
from .homology import GF2, QQ, SimplicialComplex, reduced_homology_ranks
from .monomial import (
    Monomial,
    MonomialIdeal,
    colon,
    cover_ideal,
    edge_ideal,
    parse_ideal,
    polarize,
    power,
)
from .quotients import (
    LinearQuotientsCertificate,
    check_linear_quotients_order,
    exhaustive_linear_quotients,
    greedy_linear_quotients,
    cover_power_order,
)
from .resolution import BettiTable, betti_table, has_linear_resolution, regularity

__version__ = "0.1.0"
