"""Time integration of the coupled system and hill-occupancy scoring.

Segments are advanced with an adaptive embedded Runge-Kutta 4(5) pair
(`scipy.integrate.solve_ivp`) and sampled onto a uniform output grid via the
solver's dense interpolant.  Occupancy integrates the count of a population's
swarm agents inside the goal disk with a left-rectangle rule on that grid,
which makes scores exactly additive across consecutive segments.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import solve_ivp

from .network import C2Network, Population

__all__ = [
    "IntegratorConfig",
    "Trajectory",
    "IntegrationError",
    "integrate_segment",
    "accumulate_occupancy",
]


@dataclass(frozen=True)
class IntegratorConfig:
    rtol: float = 1e-6
    atol: float = 1e-8
    dt_out: float = 0.01
    max_step: float = np.inf
    first_step: float | None = None

    def validate(self) -> None:
        if self.rtol <= 0 or self.atol <= 0:
            raise ValueError("integrator tolerances must be > 0")
        if self.dt_out <= 0:
            raise ValueError("integrator.dt_out must be > 0")
        if self.max_step <= 0:
            raise ValueError("integrator.max_step must be > 0")
        if self.first_step is not None and self.first_step <= 0:
            raise ValueError("integrator.first_step must be > 0")


class IntegrationError(RuntimeError):
    """Integration failure, annotated with the first offending time/agent."""

    def __init__(self, message: str, t: float | None = None, agent: int | None = None):
        detail = message
        if t is not None:
            detail += f" at t={t:.6g}"
        if agent is not None:
            detail += f" (agent {agent})"
        super().__init__(detail)
        self.t = t
        self.agent = agent


@dataclass(frozen=True)
class Trajectory:
    """Uniformly sampled states over one time segment.

    ``phases`` is (n_samples, n_agents), ``positions`` (n_samples, n_swarm, 2)
    with rows aligned to ``swarm_ids``.  ``swarm_populations`` tags each
    position row with its force, when known.
    """

    times: np.ndarray
    phases: np.ndarray
    positions: np.ndarray
    swarm_ids: np.ndarray
    swarm_populations: tuple[Population, ...] | None = None

    def __len__(self) -> int:
        return len(self.times)

    @property
    def t0(self) -> float:
        return float(self.times[0])

    @property
    def t1(self) -> float:
        return float(self.times[-1])

    @property
    def dt(self) -> float:
        if len(self.times) < 2:
            return 0.0
        return float(self.times[1] - self.times[0])

    def state_at(self, k: int):
        from .dynamics import SimState

        return SimState(
            phases=self.phases[k].copy(),
            positions=self.positions[k].copy(),
            swarm_ids=self.swarm_ids,
            t=float(self.times[k]),
        )

    @property
    def final_state(self):
        return self.state_at(len(self.times) - 1)

    def population_rows(self, population: Population) -> np.ndarray:
        if self.swarm_populations is None:
            raise ValueError("trajectory carries no population tags")
        return np.array(
            [k for k, pop in enumerate(self.swarm_populations) if pop is population],
            dtype=int,
        )

    def concat(self, other: "Trajectory") -> "Trajectory":
        """Join a consecutive segment, dropping its duplicated first sample."""
        if not np.isclose(self.t1, other.t0):
            raise ValueError("segments are not consecutive")
        return Trajectory(
            times=np.concatenate([self.times, other.times[1:]]),
            phases=np.concatenate([self.phases, other.phases[1:]]),
            positions=np.concatenate([self.positions, other.positions[1:]]),
            swarm_ids=self.swarm_ids,
            swarm_populations=self.swarm_populations,
        )

    def write_csv(self, path: str | Path) -> None:
        """Long-format export: one row per (sample, agent); x/y blank for HQ."""
        n_agents = self.phases.shape[1]
        row_of = {int(a): k for k, a in enumerate(self.swarm_ids)}
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["t", "agent_id", "theta", "x", "y"])
            for s, t in enumerate(self.times):
                for a in range(n_agents):
                    if a in row_of:
                        x, y = self.positions[s, row_of[a]]
                        writer.writerow([repr(float(t)), a, repr(float(self.phases[s, a])), repr(float(x)), repr(float(y))])
                    else:
                        writer.writerow([repr(float(t)), a, repr(float(self.phases[s, a])), "", ""])


def _output_grid(t0: float, t1: float, dt_out: float) -> np.ndarray:
    n = max(1, int(round((t1 - t0) / dt_out)))
    return np.linspace(t0, t1, n + 1)


def integrate_segment(
    rhs: Callable[[float, np.ndarray], np.ndarray],
    state0,
    t0: float,
    t1: float,
    config: IntegratorConfig,
    network: C2Network | None = None,
) -> Trajectory:
    """Advance the packed system over [t0, t1] and sample it uniformly.

    ``rhs`` maps (t, y) to dy/dt with y packed as phases followed by
    flattened swarm positions.  The final sample is exactly at ``t1`` and is
    usable as the next segment's initial state.  Passing the network tags the
    trajectory's position rows with their populations.
    """
    config.validate()
    if not t1 > t0:
        raise ValueError("segment must satisfy t1 > t0")
    y0 = np.concatenate([state0.phases, state0.positions.ravel()])
    if not np.all(np.isfinite(y0)):
        raise IntegrationError("non-finite initial state", t=t0)

    n_agents = len(state0.phases)
    bad: dict[str, float | int] = {}

    def guarded(t: float, y: np.ndarray) -> np.ndarray:
        dy = rhs(t, y)
        if not np.all(np.isfinite(dy)):
            if not bad:
                idx = int(np.nonzero(~np.isfinite(dy))[0][0])
                bad["t"] = float(t)
                bad["idx"] = idx
            raise FloatingPointError("non-finite derivative")
        return dy

    grid = _output_grid(t0, t1, config.dt_out)
    try:
        sol = solve_ivp(
            guarded,
            (t0, t1),
            y0,
            method="RK45",
            t_eval=grid,
            rtol=config.rtol,
            atol=config.atol,
            max_step=config.max_step,
            first_step=config.first_step,
        )
    except FloatingPointError:
        idx = int(bad.get("idx", 0))
        agent = idx if idx < n_agents else n_agents + (idx - n_agents) // 2
        raise IntegrationError(
            "non-finite derivative", t=float(bad.get("t", t0)), agent=agent
        ) from None
    if not sol.success:
        t_fail = float(sol.t[-1]) if len(sol.t) else t0
        raise IntegrationError(f"solver failed: {sol.message}", t=t_fail)

    ys = sol.y.T
    n_swarm = len(state0.swarm_ids)
    populations = None
    if network is not None:
        populations = network.swarm_populations
    return Trajectory(
        times=grid,
        phases=ys[:, :n_agents].copy(),
        positions=ys[:, n_agents:].reshape(len(grid), n_swarm, 2).copy(),
        swarm_ids=np.asarray(state0.swarm_ids, dtype=int),
        swarm_populations=populations,
    )


def accumulate_occupancy(
    trajectory: Trajectory, population: Population, hill_radius: float
) -> float:
    """Integrated agent-time a population's swarm spends inside the goal disk.

    One point per agent per unit time inside ``|x| <= hill_radius`` (boundary
    inclusive), accumulated with a left-rectangle rule on the sample grid.
    """
    if not isinstance(population, Population):
        raise ValueError(f"unknown population: {population!r}")
    if len(trajectory) == 0:
        raise ValueError("empty trajectory")
    rows = trajectory.population_rows(population)
    if len(trajectory) < 2 or len(rows) == 0:
        return 0.0
    radius = np.linalg.norm(trajectory.positions[:, rows, :], axis=2)
    counts = (radius <= hill_radius).sum(axis=1).astype(float)
    dt = np.diff(trajectory.times)
    return float(np.dot(counts[:-1], dt))
