"""Batch drivers that turn played games into figure-ready data files.

Produces the standard analysis artifacts for a strategy sweep: the payoff
matrix with dominance and maximin analyses, per-Blue-strategy utility
distributions, spatial density grids per population and frustration, and
cumulative score traces with turn markers.  Everything is written as plain
CSV/JSON; rendering is left to external tooling.  Artifacts are a pure
function of (config, action set, seeds): no timestamps, stable float
formatting, deterministic ordering.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import __version__
from .game import (
    ActionSet,
    DominanceReport,
    GameConfig,
    MaximinSolution,
    PayoffMatrix,
    Strategy,
    dominance_analysis,
    enumerate_payoffs,
    maximin_solve,
    play_game,
)
from .integrate import Trajectory
from .network import Population

__all__ = [
    "DensityGrid",
    "ScoreSeries",
    "StrategyUtility",
    "SweepArtifacts",
    "density_grid",
    "score_timeseries",
    "utility_by_strategy",
    "run_sweep",
    "write_payoff_csv",
    "read_payoff_csv",
    "write_analysis_files",
]


@dataclass(frozen=True)
class DensityGrid:
    """Normalized 2-D position histogram for one population's swarm.

    ``density[i, j]`` covers the cell [x_edges[i], x_edges[i+1]) x
    [y_edges[j], y_edges[j+1]); for a nonempty grid the densities integrate
    to 1 over the window.
    """

    x_edges: np.ndarray
    y_edges: np.ndarray
    density: np.ndarray
    population: Population
    samples_total: int
    samples_in_window: int

    @property
    def empty(self) -> bool:
        return self.samples_in_window == 0

    @property
    def cell_area(self) -> float:
        return float(
            (self.x_edges[1] - self.x_edges[0]) * (self.y_edges[1] - self.y_edges[0])
        )


def density_grid(
    trajectories: Trajectory | Iterable[Trajectory],
    population: Population,
    window: tuple[float, float] = (-3.0, 3.0),
    resolution: int = 120,
) -> DensityGrid:
    """Bin every sampled position of the population's swarm agents.

    Counts are normalized by the number of in-window samples and the cell
    area, so the grid integrates to 1 whenever any sample landed inside the
    window; a grid that caught nothing is flagged empty instead.
    """
    if isinstance(trajectories, Trajectory):
        trajectories = [trajectories]
    trajectories = list(trajectories)
    if not trajectories:
        raise ValueError("at least one trajectory is required")
    if resolution < 1:
        raise ValueError("resolution must be >= 1")
    lo, hi = float(window[0]), float(window[1])
    if not hi > lo:
        raise ValueError("window must have positive extent")

    xs = []
    ys = []
    total = 0
    for traj in trajectories:
        rows = traj.population_rows(population)
        pts = traj.positions[:, rows, :].reshape(-1, 2)
        total += pts.shape[0]
        xs.append(pts[:, 0])
        ys.append(pts[:, 1])
    x = np.concatenate(xs) if xs else np.empty(0)
    y = np.concatenate(ys) if ys else np.empty(0)

    edges = np.linspace(lo, hi, resolution + 1)
    counts, x_edges, y_edges = np.histogram2d(x, y, bins=[edges, edges])
    in_window = int(counts.sum())
    area = (edges[1] - edges[0]) ** 2
    if in_window > 0:
        density = counts / (in_window * area)
    else:
        density = np.zeros_like(counts)
    return DensityGrid(
        x_edges=x_edges,
        y_edges=y_edges,
        density=density,
        population=population,
        samples_total=total,
        samples_in_window=in_window,
    )


@dataclass(frozen=True)
class ScoreSeries:
    """Cumulative hill occupancy per population over a trajectory.

    Uses the same left-rectangle rule as the per-segment score, so the final
    entries equal accumulate_occupancy over the whole trajectory exactly.
    Both series are nondecreasing (the occupancy integrand counts agents).
    """

    times: np.ndarray
    cumulative_blue: np.ndarray
    cumulative_red: np.ndarray
    turn_boundaries: np.ndarray

    def turn_of(self, t: float) -> int:
        """0-based turn index containing time t (last turn at the endpoint)."""
        k = int(np.searchsorted(self.turn_boundaries, t, side="right")) - 1
        return min(max(k, 0), max(len(self.turn_boundaries) - 2, 0))


def score_timeseries(
    trajectory: Trajectory,
    hill_radius: float,
    turn_boundaries: Sequence[float] | None = None,
) -> ScoreSeries:
    if hill_radius <= 0:
        raise ValueError("hill_radius must be > 0")
    times = trajectory.times
    dts = np.diff(times)
    inside = np.linalg.norm(trajectory.positions, axis=2) <= hill_radius

    series = {}
    for population in (Population.BLUE, Population.RED):
        rows = trajectory.population_rows(population)
        counts = inside[:, rows].sum(axis=1).astype(float)
        cumulative = np.zeros(len(times))
        cumulative[1:] = np.cumsum(counts[:-1] * dts)
        series[population] = cumulative

    if turn_boundaries is None:
        boundaries = np.array([times[0], times[-1]])
    else:
        boundaries = np.asarray(turn_boundaries, dtype=float)
    return ScoreSeries(
        times=times.copy(),
        cumulative_blue=series[Population.BLUE],
        cumulative_red=series[Population.RED],
        turn_boundaries=boundaries,
    )


@dataclass(frozen=True)
class StrategyUtility:
    """Blue's utility spread for one strategy across all Red responses."""

    strategy: Strategy
    utilities: tuple[float, ...]
    mean: float
    min: float
    max: float


def utility_by_strategy(matrix: PayoffMatrix) -> list[StrategyUtility]:
    """Per-Blue-strategy utility distributions, ordered by first-turn action.

    Ordering is lexicographic in the action sequence, so strategies sharing
    a first choice are grouped together.
    """
    matrix.require_complete()
    order = sorted(range(len(matrix.blue_strategies)),
                   key=lambda r: matrix.blue_strategies[r])
    summaries = []
    for r in order:
        row = matrix.values[r]
        summaries.append(
            StrategyUtility(
                strategy=matrix.blue_strategies[r],
                utilities=tuple(float(v) for v in row),
                mean=float(np.mean(row)),
                min=float(np.min(row)),
                max=float(np.max(row)),
            )
        )
    return summaries


def _phi_token(phi: float) -> str:
    return f"{float(phi):.4f}"


def _strategy_label(strategy: Strategy) -> str:
    return "|".join(repr(float(v)) for v in strategy)


def _parse_strategy(label: str) -> Strategy:
    return tuple(float(tok) for tok in label.split("|"))


def write_payoff_csv(matrix: PayoffMatrix, path: Path) -> None:
    """Payoff matrix as CSV: rows Blue, columns Red, repr-exact floats."""
    lines = ["blue\\red," + ",".join(_strategy_label(s) for s in matrix.red_strategies)]
    for r, strategy in enumerate(matrix.blue_strategies):
        cells = ",".join(repr(float(v)) for v in matrix.values[r])
        lines.append(f"{_strategy_label(strategy)},{cells}")
    path.write_text("\n".join(lines) + "\n")


def read_payoff_csv(path: Path) -> PayoffMatrix:
    """Inverse of write_payoff_csv; seeds/breakdowns are not recoverable."""
    lines = [ln for ln in Path(path).read_text().splitlines() if ln.strip()]
    if not lines:
        raise ValueError(f"{path}: empty payoff file")
    header = lines[0].split(",")
    if not header or "\\" not in header[0]:
        raise ValueError(f"{path}: missing 'blue\\red' header")
    red = tuple(_parse_strategy(tok) for tok in header[1:])
    blue = []
    rows = []
    for ln in lines[1:]:
        cells = ln.split(",")
        if len(cells) != len(red) + 1:
            raise ValueError(f"{path}: row has {len(cells) - 1} cells, expected {len(red)}")
        blue.append(_parse_strategy(cells[0]))
        rows.append([float(tok) for tok in cells[1:]])
    values = np.array(rows, dtype=float) if rows else np.empty((0, len(red)))
    return PayoffMatrix(
        blue_strategies=tuple(blue),
        red_strategies=red,
        values=values,
        seeds=(),
    )


def _write_json(path: Path, payload) -> None:
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _dominance_payload(matrix: PayoffMatrix, report: DominanceReport) -> dict:
    def labels(idx: tuple[int, ...]) -> list[str]:
        return [_strategy_label(matrix.blue_strategies[i]) for i in idx]

    return {
        "strict": report.strict,
        "dominant_rows": list(report.dominant_rows),
        "dominated_rows": list(report.dominated_rows),
        "dominant_columns": list(report.dominant_columns),
        "dominated_columns": list(report.dominated_columns),
        "dominant_row_strategies": labels(report.dominant_rows),
        "dominant_column_strategies": labels(report.dominant_columns),
    }


def _maximin_payload(matrix: PayoffMatrix, solution: MaximinSolution) -> dict:
    return {
        "value": solution.value,
        "blue_security_level": solution.blue_value,
        "red_security_level": solution.red_value,
        "gap": solution.gap,
        "blue_mixture": [float(p) for p in solution.blue_mixture],
        "red_mixture": [float(p) for p in solution.red_mixture],
        "strategies": [_strategy_label(s) for s in matrix.blue_strategies],
    }


def _utility_payload(summaries: list[StrategyUtility]) -> list[dict]:
    return [
        {
            "strategy": _strategy_label(s.strategy),
            "mean": s.mean,
            "min": s.min,
            "max": s.max,
            "utilities": list(s.utilities),
        }
        for s in summaries
    ]


def write_analysis_files(matrix: PayoffMatrix, out_dir: Path) -> dict[str, Path]:
    """dominance.json, maximin.json, utility_by_strategy.json for a matrix."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    report = dominance_analysis(matrix)
    solution = maximin_solve(matrix)
    summaries = utility_by_strategy(matrix)
    paths = {
        "dominance": out_dir / "dominance.json",
        "maximin": out_dir / "maximin.json",
        "utility_by_strategy": out_dir / "utility_by_strategy.json",
    }
    _write_json(paths["dominance"], _dominance_payload(matrix, report))
    _write_json(paths["maximin"], _maximin_payload(matrix, solution))
    _write_json(paths["utility_by_strategy"], _utility_payload(summaries))
    return paths


def _write_density_csv(grid: DensityGrid, path: Path) -> None:
    x_centers = 0.5 * (grid.x_edges[:-1] + grid.x_edges[1:])
    y_centers = 0.5 * (grid.y_edges[:-1] + grid.y_edges[1:])
    lines = [
        f"# population: {grid.population.value}",
        f"# samples_in_window: {grid.samples_in_window}",
        f"# samples_total: {grid.samples_total}",
        f"# empty: {str(grid.empty).lower()}",
        "x_center,y_center,density",
    ]
    for i, xc in enumerate(x_centers):
        for j, yc in enumerate(y_centers):
            lines.append(f"{repr(float(xc))},{repr(float(yc))},{repr(float(grid.density[i, j]))}")
    path.write_text("\n".join(lines) + "\n")


def _write_scores_csv(series: ScoreSeries, path: Path) -> None:
    lines = [
        "# turn_boundaries: " + ",".join(repr(float(b)) for b in series.turn_boundaries),
        "t,score_blue,score_red,turn",
    ]
    for k in range(len(series.times)):
        t = float(series.times[k])
        lines.append(
            f"{repr(t)},{repr(float(series.cumulative_blue[k]))},"
            f"{repr(float(series.cumulative_red[k]))},{series.turn_of(t)}"
        )
    path.write_text("\n".join(lines) + "\n")


def _canonical(obj):
    """JSON-safe canonical form of nested dataclass/enum/numpy content."""
    import dataclasses
    import enum

    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {
            f.name: _canonical(getattr(obj, f.name))
            for f in dataclasses.fields(obj)
        }
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, dict):
        return {str(_canonical(k)): _canonical(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_canonical(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_canonical(v) for v in obj.tolist()]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, float):
        return repr(obj)
    return obj


def sweep_fingerprint(
    config: GameConfig, action_set: ActionSet, turns: int, seeds: Sequence[int]
) -> str:
    """Stable hash of everything that determines the sweep's outputs."""
    payload = {
        "config": _canonical(config),
        "action_set": _canonical(action_set),
        "turns": turns,
        "seeds": [int(s) for s in seeds],
    }
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


@dataclass(frozen=True)
class SweepArtifacts:
    """Everything a sweep produced, in memory and on disk."""

    matrix: PayoffMatrix
    dominance: DominanceReport | None
    maximin: MaximinSolution | None
    out_dir: Path
    paths: dict[str, Path]


def run_sweep(
    config: GameConfig,
    action_set: ActionSet | None = None,
    turns: int | None = None,
    seeds: Sequence[int] = (0,),
    out_dir: Path | str = "sweep_out",
    workers: int = 1,
    densities: bool = True,
) -> SweepArtifacts:
    """Full strategy sweep: payoff enumeration, analyses, figure data.

    Writes payoff_matrix.csv, dominance.json, maximin.json,
    utility_by_strategy.json, failures.json and provenance.json, plus (with
    ``densities=True``) density_{blue,red}_{phi}.csv and scores_{cell}.csv
    from one representative game per frustration value (that value against
    an unfrustrated opponent, first seed).  Dominance/maximin are skipped,
    not faked, when any cell failed.
    """
    action_set = action_set or ActionSet()
    turns = config.turns if turns is None else turns
    seeds = tuple(int(s) for s in seeds)
    if not seeds:
        raise ValueError("at least one seed is required")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    matrix = enumerate_payoffs(
        config, action_set=action_set, turns=turns, seeds=seeds, workers=workers
    )

    paths: dict[str, Path] = {"payoff_matrix": out_dir / "payoff_matrix.csv"}
    write_payoff_csv(matrix, paths["payoff_matrix"])

    paths["failures"] = out_dir / "failures.json"
    _write_json(
        paths["failures"],
        [
            {
                "blue": _strategy_label(f.blue),
                "red": _strategy_label(f.red),
                "seed": f.seed,
                "error": f.error,
            }
            for f in matrix.failures
        ],
    )

    dominance = None
    maximin = None
    if matrix.complete:
        paths.update(write_analysis_files(matrix, out_dir))
        dominance = dominance_analysis(matrix)
        maximin = maximin_solve(matrix)

    if densities:
        baseline = (action_set.values[0],) * turns
        for phi in action_set.values:
            strategy = (phi,) * turns
            result = play_game(
                config, strategy, baseline, seed=seeds[0], keep_trajectory=True
            )
            traj = result.trajectory
            token = _phi_token(phi)
            for population in (Population.BLUE, Population.RED):
                grid = density_grid(traj, population)
                key = f"density_{population.value}_{token}"
                paths[key] = out_dir / f"{key}.csv"
                _write_density_csv(grid, paths[key])
            series = score_timeseries(
                traj, config.hill_radius, result.turn_boundaries
            )
            cell = f"{token}_vs_{_phi_token(action_set.values[0])}"
            key = f"scores_{cell}"
            paths[key] = out_dir / f"{key}.csv"
            _write_scores_csv(series, paths[key])

    paths["provenance"] = out_dir / "provenance.json"
    _write_json(
        paths["provenance"],
        {
            "format_version": 1,
            "code_version": __version__,
            "config_hash": sweep_fingerprint(config, action_set, turns, seeds),
            "seeds": list(seeds),
            "turns": turns,
            "actions": [float(v) for v in action_set.values],
            "n_strategies": len(action_set.strategies(turns)),
            "n_cells": len(action_set.strategies(turns)) ** 2,
            "n_failures": len(matrix.failures),
            "config": _canonical(config),
        },
    )

    return SweepArtifacts(
        matrix=matrix,
        dominance=dominance,
        maximin=maximin,
        out_dir=out_dir,
        paths=paths,
    )
