"""Randomized strong-diameter network decomposition with a CONGEST simulator."""

from .decomposition import (
    AlgoParams,
    Cluster,
    Decomposition,
    RunStats,
    Schedule,
    block_bound,
    build_schedule,
    decompose,
    diameter_bound,
    unassigned,
)
from .engine import (
    PhaseResult,
    PhaseStats,
    Token,
    congestion_report,
    run_phase_distributed,
    run_phase_reference,
    run_phase_with_radii,
)
from .graph import Graph, bfs_distances, connected_components, generate, strong_diameter, weak_diameter
from .randomness import RandomStream, derive_stream, phase_radii, sample_exponential
from .verification import (
    MonteCarloResult,
    ValidationReport,
    check_order_statistics,
    ev_frequency,
    failure_frequency,
    oracle_equivalence,
    staged_survival,
    survival_curve,
    validate,
)

__version__ = "0.1.0"
