"""Hierarchical-swarm contest model: coupled oscillator dynamics on a
two-force command network, scored as a zero-sum game over frustration
choices."""

__version__ = "0.1.0"

from .network import (
    AgentSpec,
    C2Network,
    Echelon,
    ForceLayout,
    HqTree,
    LinkClass,
    Population,
    Role,
    build_force_network,
    build_headquarters,
    default_branching,
)
from .dynamics import (
    DEFAULT_SIGMA,
    CoupledDynamics,
    FrustrationAssignment,
    ModelParams,
    OodaState,
    SimState,
    effective_adjacency,
    ooda_state,
    order_parameter,
)
from .integrate import (
    IntegrationError,
    IntegratorConfig,
    Trajectory,
    accumulate_occupancy,
    integrate_segment,
)
from .game import (
    DEFAULT_ACTIONS,
    ActionSet,
    CellFailure,
    DominanceReport,
    GameConfig,
    GameResult,
    MaximinSolution,
    PayoffMatrix,
    dominance_analysis,
    enumerate_payoffs,
    initial_state,
    maximin_solve,
    play_game,
    utilities,
)
from .harness import (
    DensityGrid,
    ScoreSeries,
    StrategyUtility,
    SweepArtifacts,
    density_grid,
    read_payoff_csv,
    run_sweep,
    score_timeseries,
    utility_by_strategy,
    write_payoff_csv,
)
from .config import (
    ConfigError,
    RunConfig,
    config_hash,
    load_config,
    save_config,
)

__all__ = [
    "__version__",
    # network
    "AgentSpec",
    "C2Network",
    "Echelon",
    "ForceLayout",
    "HqTree",
    "LinkClass",
    "Population",
    "Role",
    "build_force_network",
    "build_headquarters",
    "default_branching",
    # dynamics
    "DEFAULT_SIGMA",
    "CoupledDynamics",
    "FrustrationAssignment",
    "ModelParams",
    "OodaState",
    "SimState",
    "effective_adjacency",
    "ooda_state",
    "order_parameter",
    # integration
    "IntegrationError",
    "IntegratorConfig",
    "Trajectory",
    "accumulate_occupancy",
    "integrate_segment",
    # game
    "DEFAULT_ACTIONS",
    "ActionSet",
    "CellFailure",
    "DominanceReport",
    "GameConfig",
    "GameResult",
    "MaximinSolution",
    "PayoffMatrix",
    "dominance_analysis",
    "enumerate_payoffs",
    "initial_state",
    "maximin_solve",
    "play_game",
    "utilities",
    # harness
    "DensityGrid",
    "ScoreSeries",
    "StrategyUtility",
    "SweepArtifacts",
    "density_grid",
    "read_payoff_csv",
    "run_sweep",
    "score_timeseries",
    "utility_by_strategy",
    "write_payoff_csv",
    # config
    "ConfigError",
    "RunConfig",
    "config_hash",
    "load_config",
    "save_config",
]
