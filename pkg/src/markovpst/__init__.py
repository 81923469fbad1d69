"""Markovian (Szegedy-variant) quantum walks on graphs and perfect state transfer."""

from markovpst.graph import (
    DisconnectedGraphError,
    Graph,
    GraphError,
    SelfLoopError,
    VertexRangeError,
    cycle,
    from_edge_list,
    hypercube,
    path,
    product,
    star,
    transition_probability,
)
from markovpst.arcs import (
    ArcState,
    WalkStep,
    apply_reflection,
    apply_swap,
    dense_oracle_step,
    evolve,
    overlap,
    psi_state,
    step,
)
from markovpst.analytic import (
    PropagatedState,
    ProbabilityProfile,
    cycle_state,
    path_probability_profile,
    path_state,
)
from markovpst.detector import ClaimReport, TransferEvent, detect, run_claim_suite

__version__ = "0.1.0"
