"""Entanglement bounds, LOCC discrimination and capacity for graph states."""

from graphent.bounds import (
    BoundsReport,
    coloring_lower_bound,
    entanglement_report,
    lc_orbit_search,
    matching_upper_bound,
)
from graphent.capacity import (
    Ensemble,
    EnsembleEntry,
    achievable_rate,
    capacity_bound,
    colouring_ensemble,
    finite_blocklength_bound,
    povm_constraint_check,
)
from graphent.graph import (
    Graph,
    GraphError,
    build_family,
    disjoint_union,
    local_complement,
    max_independent_set,
    two_color,
)
from graphent.kernels import BACKEND
from graphent.locc import discrimination_protocol, simulate_discrimination, verify_perfect_discrimination
from graphent.measures import (
    MeasureValues,
    MixedGraphState,
    closest_separable_state,
    exact_pure_measures,
    geometric_oracle,
    mixed_measures,
    two_graph_mixture_measures,
)
from graphent.stabilizer import (
    Bipartition,
    PauliString,
    StabilizerTableau,
    apply_lc_unitary,
    cut_rank,
    generators_of,
    measure_pauli,
    statevector,
)

__version__ = "0.1.0"
