"""Two-player zero-sum game over per-turn frustration choices.

A game partitions the horizon into equal turns; before each turn both
players commit a frustration and the coupled system is integrated forward
from the previous turn's final state.  A turn's score is each side's hill
occupancy over that turn, the per-turn advantage is the score difference,
and a player's utility is the summed advantage, making the game zero-sum by
construction.  The payoff matrix enumerates every strategy pair over a
shared set of seeds (a seed fixes initial conditions identically across all
cells), and is analyzed for weak dominance and its maximin (equilibrium)
mixtures.
"""
from __future__ import annotations

import itertools
import multiprocessing
from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np
from scipy.optimize import linprog

from .dynamics import (
    CoupledDynamics,
    FrustrationAssignment,
    ModelParams,
    SimState,
)
from .integrate import (
    IntegrationError,
    IntegratorConfig,
    Trajectory,
    accumulate_occupancy,
    integrate_segment,
)
from .network import C2Network, Echelon, ForceLayout, Population, build_force_network

__all__ = [
    "DEFAULT_ACTIONS",
    "ActionSet",
    "Strategy",
    "GameConfig",
    "GameResult",
    "PayoffMatrix",
    "CellFailure",
    "DominanceReport",
    "MaximinSolution",
    "initial_state",
    "play_game",
    "utilities",
    "enumerate_payoffs",
    "dominance_analysis",
    "maximin_solve",
]

DEFAULT_ACTIONS: tuple[float, ...] = (0.0, np.pi / 3, 2 * np.pi / 3, np.pi)

Strategy = tuple[float, ...]


@dataclass(frozen=True)
class ActionSet:
    """Ordered frustration choices available to both players."""

    values: tuple[float, ...] = DEFAULT_ACTIONS

    def __post_init__(self):
        values = tuple(float(v) for v in self.values)
        object.__setattr__(self, "values", values)
        if len(values) < 1:
            raise ValueError("action set must not be empty")
        if len(set(values)) != len(values):
            raise ValueError("action values must be distinct")
        if list(values) != sorted(values):
            raise ValueError("action values must be sorted ascending")
        if values[0] < 0 or values[-1] > np.pi:
            raise ValueError("action values must lie in [0, pi]")

    def __len__(self) -> int:
        return len(self.values)

    def strategies(self, turns: int) -> list[Strategy]:
        """All length-``turns`` action sequences, in lexicographic order."""
        if turns < 1:
            raise ValueError("turns must be >= 1")
        return [tuple(s) for s in itertools.product(self.values, repeat=turns)]


@dataclass(frozen=True)
class GameConfig:
    """Everything needed to play one game (minus the strategies)."""

    layout: ForceLayout = field(default_factory=ForceLayout)
    params: ModelParams = field(default_factory=ModelParams)
    integrator: IntegratorConfig = field(default_factory=IntegratorConfig)
    t_final: float = 20.0
    turns: int = 2
    seed: int = 0
    spawn_radius: float = 0.5
    spawn_blue: tuple[float, float] = (-2.0, 0.0)
    spawn_red: tuple[float, float] = (2.0, 0.0)

    def validate(self) -> None:
        self.layout.validate()
        self.params.validate()
        self.integrator.validate()
        if self.t_final <= 0:
            raise ValueError("game.t_final must be > 0")
        if self.turns < 1:
            raise ValueError("game.turns must be >= 1")
        if self.spawn_radius < 0:
            raise ValueError("game.spawn_radius must be >= 0")

    @property
    def hill_radius(self) -> float:
        return self.params.hill_radius

    def turn_boundaries(self) -> np.ndarray:
        return np.linspace(0.0, self.t_final, self.turns + 1)


def initial_state(
    network: C2Network, config: GameConfig, seed: int
) -> tuple[SimState, np.ndarray]:
    """Seeded initial conditions: (state at t=0, natural frequencies).

    One seed feeds three independent substreams (frequencies, phases,
    positions), so the draws only depend on (layout, seed), never on the
    strategies in play.  Each swarm spawns uniformly inside a disk at its
    side's muster point.
    """
    streams = [
        np.random.Generator(np.random.PCG64(ss))
        for ss in np.random.SeedSequence(seed).spawn(3)
    ]
    freq_rng, phase_rng, pos_rng = streams

    n = len(network)
    draws = freq_rng.uniform(size=n)
    omegas = np.empty(n)
    for a in network.agents:
        lo, hi = config.layout.omega_range(a.echelon)
        omegas[a.id] = lo + draws[a.id] * (hi - lo)

    phases = phase_rng.uniform(0.0, 2 * np.pi, size=n)

    swarm_ids = network.swarm_ids
    centers = {
        Population.BLUE: np.asarray(config.spawn_blue, dtype=float),
        Population.RED: np.asarray(config.spawn_red, dtype=float),
    }
    radii = config.spawn_radius * np.sqrt(pos_rng.uniform(size=len(swarm_ids)))
    angles = pos_rng.uniform(0.0, 2 * np.pi, size=len(swarm_ids))
    positions = np.empty((len(swarm_ids), 2))
    for row, agent_id in enumerate(swarm_ids):
        center = centers[network.agents[agent_id].population]
        positions[row] = center + radii[row] * np.array(
            [np.cos(angles[row]), np.sin(angles[row])]
        )

    state = SimState(phases=phases, positions=positions, swarm_ids=swarm_ids, t=0.0)
    return state, omegas


@dataclass(frozen=True)
class GameResult:
    """Outcome of one played game.

    Per-turn scores are hill occupancy over that turn's segment; the
    advantage is blue minus red, and utilities sum it (red's by negation, so
    the zero-sum identity holds exactly).
    """

    strategy_blue: Strategy
    strategy_red: Strategy
    seed: int
    turn_boundaries: np.ndarray
    scores_blue: np.ndarray
    scores_red: np.ndarray
    final_state: SimState
    trajectory: Trajectory | None = None

    @property
    def advantage_blue(self) -> np.ndarray:
        return self.scores_blue - self.scores_red

    @property
    def utility_blue(self) -> float:
        return float(np.sum(self.advantage_blue))

    @property
    def utility_red(self) -> float:
        return -self.utility_blue


def utilities(result: GameResult) -> tuple[float, float]:
    """(blue, red) utilities; red is the exact negation of blue."""
    u_blue = float(np.sum(result.scores_blue - result.scores_red))
    return u_blue, -u_blue


def play_game(
    config: GameConfig,
    strategy_blue: Sequence[float],
    strategy_red: Sequence[float],
    seed: int | None = None,
    keep_trajectory: bool = False,
    network: C2Network | None = None,
) -> GameResult:
    """Play one full game and score it.

    Both strategies must provide one frustration per turn.  The network may
    be passed in to amortize construction across many games; its natural
    frequencies are redrawn from the seed either way.  A zero horizon is
    tolerated as a degenerate game: nothing is integrated, all scores are 0.
    """
    if config.t_final != 0.0:
        config.validate()
    strategy_blue = tuple(float(v) for v in strategy_blue)
    strategy_red = tuple(float(v) for v in strategy_red)
    if len(strategy_blue) != config.turns or len(strategy_red) != config.turns:
        raise ValueError(
            f"strategies must have exactly {config.turns} entries "
            f"(got {len(strategy_blue)} and {len(strategy_red)})"
        )
    if seed is None:
        seed = config.seed

    if network is None:
        network = build_force_network(config.layout)
    state, omegas = initial_state(network, config, seed)
    network = network.with_frequencies(omegas)

    boundaries = config.turn_boundaries()
    scores_blue = np.zeros(config.turns)
    scores_red = np.zeros(config.turns)
    full: Trajectory | None = None

    if config.t_final == 0.0:
        return GameResult(
            strategy_blue=strategy_blue,
            strategy_red=strategy_red,
            seed=seed,
            turn_boundaries=boundaries,
            scores_blue=scores_blue,
            scores_red=scores_red,
            final_state=state,
            trajectory=None,
        )

    for k in range(config.turns):
        frustration = FrustrationAssignment(
            phi_blue=strategy_blue[k], phi_red=strategy_red[k]
        )
        dynamics = CoupledDynamics(network, config.params, frustration)
        try:
            segment = integrate_segment(
                dynamics.full_rhs,
                state,
                float(boundaries[k]),
                float(boundaries[k + 1]),
                config.integrator,
                network=network,
            )
        except IntegrationError as err:
            raise IntegrationError(
                f"turn {k + 1}/{config.turns} failed: {err}", t=err.t, agent=err.agent
            ) from err
        scores_blue[k] = accumulate_occupancy(
            segment, Population.BLUE, config.hill_radius
        )
        scores_red[k] = accumulate_occupancy(
            segment, Population.RED, config.hill_radius
        )
        state = segment.final_state
        if keep_trajectory:
            full = segment if full is None else full.concat(segment)

    return GameResult(
        strategy_blue=strategy_blue,
        strategy_red=strategy_red,
        seed=seed,
        turn_boundaries=boundaries,
        scores_blue=scores_blue,
        scores_red=scores_red,
        final_state=state,
        trajectory=full,
    )


@dataclass(frozen=True)
class CellFailure:
    blue: Strategy
    red: Strategy
    seed: int
    error: str


@dataclass(frozen=True)
class PayoffMatrix:
    """Blue's mean utility for every (blue, red) strategy pair.

    ``values[r, c]`` averages blue's utility over the seed list; red's payoff
    is its negation.  Cells that failed to integrate are NaN and recorded in
    ``failures``; ``per_turn[r][c]`` keeps the per-seed, per-turn advantage
    breakdown for valid cells.
    """

    blue_strategies: tuple[Strategy, ...]
    red_strategies: tuple[Strategy, ...]
    values: np.ndarray
    seeds: tuple[int, ...]
    per_turn: tuple[tuple[tuple[tuple[float, ...], ...] | None, ...], ...] = ()
    failures: tuple[CellFailure, ...] = ()

    @property
    def complete(self) -> bool:
        return bool(np.all(np.isfinite(self.values)))

    def require_complete(self) -> None:
        if not self.complete:
            bad = int(np.sum(~np.isfinite(self.values)))
            raise ValueError(f"payoff matrix has {bad} invalid cells")


def _play_cell(args) -> tuple[int, int, float | None, list, CellFailure | None]:
    config, blue, red, seeds, r, c = args
    network = _cached_network(config.layout)
    per_seed_utils: list[float] = []
    breakdown: list[tuple[float, ...]] = []
    for seed in seeds:
        try:
            result = play_game(config, blue, red, seed=seed, network=network)
        except IntegrationError as err:
            return r, c, None, [], CellFailure(blue, red, seed, str(err))
        per_seed_utils.append(result.utility_blue)
        breakdown.append(tuple(float(q) for q in result.advantage_blue))
    return r, c, float(np.mean(per_seed_utils)), breakdown, None


_NETWORK_CACHE: dict[ForceLayout, C2Network] = {}


def _cached_network(layout: ForceLayout) -> C2Network:
    network = _NETWORK_CACHE.get(layout)
    if network is None:
        network = build_force_network(layout)
        _NETWORK_CACHE[layout] = network
    return network


def enumerate_payoffs(
    config: GameConfig,
    action_set: ActionSet | None = None,
    turns: int | None = None,
    seeds: Sequence[int] = (0,),
    workers: int = 1,
) -> PayoffMatrix:
    """Play every strategy pair and average blue's utility over the seeds.

    With the defaults (4 actions, 2 turns) both players have 16 strategies
    and the matrix has 256 cells.  Cells are independent jobs; with
    ``workers > 1`` they are distributed over a process pool.  Failed cells
    are marked NaN and reported, never silently zeroed.
    """
    action_set = action_set or ActionSet()
    turns = config.turns if turns is None else turns
    seeds = tuple(int(s) for s in seeds)
    if len(seeds) < 1:
        raise ValueError("at least one seed is required")
    if turns != config.turns:
        config = replace(config, turns=turns)
    config.validate()

    strategies = action_set.strategies(turns)
    m = len(strategies)
    values = np.full((m, m), np.nan)
    breakdowns: list[list] = [[None] * m for _ in range(m)]
    failures: list[CellFailure] = []

    jobs = [
        (config, blue, red, seeds, r, c)
        for r, blue in enumerate(strategies)
        for c, red in enumerate(strategies)
    ]
    if workers > 1:
        with multiprocessing.Pool(workers) as pool:
            outcomes = pool.map(_play_cell, jobs)
    else:
        outcomes = [_play_cell(job) for job in jobs]

    for r, c, mean_utility, breakdown, failure in outcomes:
        if failure is not None:
            failures.append(failure)
            continue
        values[r, c] = mean_utility
        breakdowns[r][c] = tuple(breakdown)

    return PayoffMatrix(
        blue_strategies=tuple(strategies),
        red_strategies=tuple(strategies),
        values=values,
        seeds=seeds,
        per_turn=tuple(tuple(row) for row in breakdowns),
        failures=tuple(failures),
    )


@dataclass(frozen=True)
class DominanceReport:
    """Weak (or strict) dominance structure of a payoff matrix.

    A row dominates another when it is at least as good against every column;
    it is dominant when it dominates all other rows.  Columns are judged on
    the column player's (negated) payoff.
    """

    dominant_rows: tuple[int, ...]
    dominated_rows: tuple[int, ...]
    dominant_columns: tuple[int, ...]
    dominated_columns: tuple[int, ...]
    strict: bool = False


def _dominates(a: np.ndarray, b: np.ndarray, strict: bool) -> bool:
    if strict:
        return bool(np.all(a > b))
    return bool(np.all(a >= b))


def dominance_analysis(matrix: PayoffMatrix, strict: bool = False) -> DominanceReport:
    """Exhaustive pairwise dominance comparison of rows and columns."""
    matrix.require_complete()
    values = matrix.values
    m, n = values.shape
    red_values = -values  # column player's payoff

    dominant_rows = []
    dominated_rows = []
    for r in range(m):
        if all(_dominates(values[r], values[o], strict) for o in range(m) if o != r):
            dominant_rows.append(r)
        if any(_dominates(values[o], values[r], strict) for o in range(m) if o != r):
            dominated_rows.append(r)

    dominant_columns = []
    dominated_columns = []
    for c in range(n):
        if all(
            _dominates(red_values[:, c], red_values[:, o], strict)
            for o in range(n)
            if o != c
        ):
            dominant_columns.append(c)
        if any(
            _dominates(red_values[:, o], red_values[:, c], strict)
            for o in range(n)
            if o != c
        ):
            dominated_columns.append(c)

    return DominanceReport(
        dominant_rows=tuple(dominant_rows),
        dominated_rows=tuple(dominated_rows),
        dominant_columns=tuple(dominant_columns),
        dominated_columns=tuple(dominated_columns),
        strict=strict,
    )


@dataclass(frozen=True)
class MaximinSolution:
    """Equilibrium mixtures and value of the zero-sum matrix game."""

    blue_mixture: np.ndarray
    red_mixture: np.ndarray
    value: float
    blue_value: float
    red_value: float

    @property
    def gap(self) -> float:
        return abs(self.blue_value - self.red_value)


def _clean_mixture(x: np.ndarray) -> np.ndarray:
    x = np.where(x < 0, 0.0, x)
    total = x.sum()
    if total <= 0:
        raise ValueError("degenerate mixture from solver")
    return x / total


def _solve_one_side(values: np.ndarray) -> tuple[np.ndarray, float]:
    """Row player's maximin mixture for a payoff it wants to maximize."""
    m, n = values.shape
    # Variables: (p_1..p_m, v); maximize v s.t. for each column c,
    # sum_r p_r * values[r, c] >= v, with p a probability vector.
    c_obj = np.zeros(m + 1)
    c_obj[-1] = -1.0
    a_ub = np.hstack([-values.T, np.ones((n, 1))])
    b_ub = np.zeros(n)
    a_eq = np.zeros((1, m + 1))
    a_eq[0, :m] = 1.0
    bounds = [(0.0, None)] * m + [(None, None)]
    res = linprog(
        c_obj, A_ub=a_ub, b_ub=b_ub, A_eq=a_eq, b_eq=np.ones(1), bounds=bounds,
        method="highs",
    )
    if not res.success:
        raise RuntimeError(f"matrix game LP failed: {res.message}")
    return _clean_mixture(res.x[:m]), float(res.x[-1])


def maximin_solve(matrix: PayoffMatrix | np.ndarray) -> MaximinSolution:
    """Solve the zero-sum matrix game by linear programming.

    Returns mixed strategies on the simplex (normalized to 1e-9) whose
    security levels agree to well under 1e-6; the value is their midpoint.
    """
    if isinstance(matrix, PayoffMatrix):
        matrix.require_complete()
        values = matrix.values
    else:
        values = np.asarray(matrix, dtype=float)
        if values.ndim != 2 or not np.all(np.isfinite(values)):
            raise ValueError("payoff values must be a finite 2-D array")

    blue_mixture, blue_value = _solve_one_side(values)
    red_mixture, red_neg_value = _solve_one_side(-values.T)
    red_value = -red_neg_value
    return MaximinSolution(
        blue_mixture=blue_mixture,
        red_mixture=red_mixture,
        value=0.5 * (blue_value + red_value),
        blue_value=blue_value,
        red_value=red_value,
    )
