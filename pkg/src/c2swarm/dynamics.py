"""Coupled decision-phase and position dynamics for the two-force system.

Every agent carries a decision phase advancing Kuramoto-style; swarm agents
additionally move in the plane under three forces:

* attraction toward other swarm agents, gated by the sender swarm's own
  synchronization and by how far ahead (in phase) the agent is of its target,
* short-range pairwise repulsion,
* a restoring field toward the goal disk ("the hill"), gated by the agent's
  headquarters synchronization and active only outside the disk.

Phase coupling strength per link comes from a per-link-class table, divided
by static degree powers: a human receiver is inhibited by both endpoint
degrees, an autonomous receiver only by its own.  Swarm-to-swarm links are
attenuated with distance.  Machine phases couple to human phases at an n:m
frequency ratio ``nu``.

Frustration is each player's chosen phase offset on adversarial links.  In
the phase dynamics the two choices enter as their difference, so a pair with
equal frequencies locks with the frustrated agent leading by exactly its
offset when the opponent plays zero.  In the attraction term each agent uses
its own offset: engagement is fully effective when the agent actually leads
its target by the intended amount.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping

import numpy as np

from .network import (
    ADVERSARIAL_CLASSES,
    C2Network,
    Echelon,
    LinkClass,
    Population,
)

__all__ = [
    "DEFAULT_SIGMA",
    "ModelParams",
    "FrustrationAssignment",
    "SimState",
    "OodaState",
    "CoupledDynamics",
    "order_parameter",
    "effective_adjacency",
    "phase_rhs",
    "attraction_force",
    "repulsion_force",
    "field_force",
    "spatial_rhs",
    "full_rhs",
    "ooda_state",
]

# Per-link-class coupling strengths.  Intra-headquarters coupling is weak,
# intra-swarm strong (blue stronger than red), the controller-to-swarm links
# are the strongest cross-echelon channel.
DEFAULT_SIGMA: Mapping[LinkClass, float] = {
    LinkClass.INTRA_HQ_BLUE: 0.5,
    LinkClass.INTRA_HQ_RED: 0.5,
    LinkClass.INTRA_SWARM_BLUE: 8.0,
    LinkClass.INTRA_SWARM_RED: 4.0,
    LinkClass.HQ_ADVERSARIAL: 2.0,
    LinkClass.SWARM_ADVERSARIAL: 0.5,
    LinkClass.CONTROLLER_TO_SWARM_BLUE: 5.0,
    LinkClass.CONTROLLER_TO_SWARM_RED: 5.0,
}


@dataclass(frozen=True)
class ModelParams:
    """All model constants.

    ``c1`` attenuates swarm-to-swarm communication with distance, ``c2``
    (applied squared) scales the restoring field toward the hill, ``c3``
    suppresses engagement against targets outside the hill, ``rho`` scales
    repulsion and ``alpha`` is the base engagement coupling on swarm pairs.
    ``nu`` is the machine:human decision-speed ratio.  ``beta1`` is the
    degree exponent on the receiver, ``beta2_hq``/``beta2_swarm`` the
    exponent on the sender degree depending on the receiver's echelon.
    """

    sigma: Mapping[LinkClass, float] = field(
        default_factory=lambda: dict(DEFAULT_SIGMA)
    )
    # The spatial gains are calibrated jointly: rho must exceed 1 + alpha or
    # contact between phase-aligned agents is not repulsive and synced swarms
    # collapse to a point; at rho = 2.2, alpha = 0.5 the default 45 swarm
    # agents pack densely enough to fit inside the unit goal disk, so an
    # evenly-matched engagement is decided by swarm size while a frustration
    # edge still dislodges the disadvantaged side.  c2 = 4 makes the
    # headquarters-gated restoring field strong enough to confine both
    # swarms despite weakly synchronized headquarters.
    c1: float = 0.0
    c2: float = 4.0
    c3: float = 1.0
    rho: float = 2.2
    alpha: float = 0.5
    nu: float = 4.0
    hill_radius: float = 1.0
    beta1: float = 1.0
    beta2_hq: float = 1.0
    beta2_swarm: float = 0.0
    pair_epsilon: float = 1e-9

    def validate(self) -> None:
        for name in ("c1", "c2", "c3", "rho", "alpha"):
            if getattr(self, name) < 0:
                raise ValueError(f"params.{name} must be >= 0")
        if self.nu <= 1:
            raise ValueError("params.nu must be > 1")
        if self.hill_radius <= 0:
            raise ValueError("params.hill_radius must be > 0")
        if self.pair_epsilon <= 0:
            raise ValueError("params.pair_epsilon must be > 0")
        missing = [cls for cls in LinkClass if cls not in self.sigma]
        if missing:
            raise ValueError(f"params.sigma missing classes: {missing}")
        for cls, value in self.sigma.items():
            if value < 0:
                raise ValueError(f"params.sigma[{cls.value}] must be >= 0")


@dataclass(frozen=True)
class FrustrationAssignment:
    """Per-player phase offsets, applied on adversarial links only."""

    phi_blue: float = 0.0
    phi_red: float = 0.0

    def phi(self, population: Population) -> float:
        return self.phi_blue if population is Population.BLUE else self.phi_red

    def phase_offset(self, acting: Population) -> float:
        """Offset entering the phase coupling for an agent of ``acting``."""
        return self.phi(acting) - self.phi(acting.opponent)

    def spatial_offset(self, acting: Population) -> float:
        """Offset entering the attraction term for an agent of ``acting``."""
        return self.phi(acting)


@dataclass(frozen=True)
class SimState:
    """Phases for every agent plus planar positions for the swarm agents.

    ``positions`` has one row per entry of ``swarm_ids`` (ascending agent
    ids); headquarters agents carry no position.  Phases are unwrapped.
    """

    phases: np.ndarray
    positions: np.ndarray
    swarm_ids: np.ndarray
    t: float = 0.0

    def __post_init__(self):
        if self.positions.shape != (len(self.swarm_ids), 2):
            raise ValueError("positions must be (n_swarm, 2) aligned with swarm_ids")
        if not np.all(np.isfinite(self.phases)):
            raise ValueError("phases must be finite")

    def position_row(self, agent_id: int) -> int:
        rows = np.nonzero(self.swarm_ids == agent_id)[0]
        if len(rows) == 0:
            raise ValueError(f"agent {agent_id} is not a swarm agent")
        return int(rows[0])


class OodaState(Enum):
    OBSERVE = 0
    ORIENT = 1
    DECIDE = 2
    ACT = 3


def ooda_state(theta: float) -> OodaState:
    """Decision-cycle stage of a phase: the quadrant of theta mod 2*pi.

    Quadrant boundaries are lower-inclusive, so 0 observes and pi decides.
    """
    if not np.isfinite(theta):
        raise ValueError("phase must be finite")
    quadrant = int((theta % (2 * np.pi)) / (np.pi / 2))
    return OodaState(min(quadrant, 3))


def order_parameter(phases: np.ndarray, subset: np.ndarray | None = None) -> float:
    """Magnitude of the mean unit phasor over a subset of phases (1 = consensus)."""
    phases = np.asarray(phases, dtype=float)
    if subset is not None:
        phases = phases[np.asarray(subset)]
    if phases.size == 0:
        raise ValueError("order parameter of an empty subset is undefined")
    return float(np.abs(np.mean(np.exp(1j * phases))))


def effective_adjacency(
    network: C2Network,
    positions: np.ndarray,
    c1: float,
    i: int,
    j: int,
) -> float:
    """Link weight after distance attenuation.

    Swarm-to-swarm links decay as 1/(1 + c1*distance); links with at least
    one headquarters endpoint keep their static weight.  Absent edges are 0.
    """
    if network.link_class(i, j) is None:
        return 0.0
    weight = float(network.adjacency[i, j])
    ech_i = network.agents[i].echelon
    ech_j = network.agents[j].echelon
    if ech_i is Echelon.SWARM and ech_j is Echelon.SWARM:
        swarm_ids = network.swarm_ids
        ri = int(np.nonzero(swarm_ids == i)[0][0])
        rj = int(np.nonzero(swarm_ids == j)[0][0])
        dist = float(np.linalg.norm(positions[rj] - positions[ri]))
        weight /= 1.0 + c1 * dist
    return weight


class CoupledDynamics:
    """Vectorized right-hand side for one (network, params, frustration) triple.

    Precomputes every static pairwise matrix so repeated evaluations during
    integration only touch state-dependent terms.  Instances are read-only
    after construction and safe to share across threads; summations run in
    fixed agent-id order, so outputs are bitwise reproducible.
    """

    def __init__(
        self,
        network: C2Network,
        params: ModelParams,
        frustration: FrustrationAssignment | None = None,
    ):
        frustration = frustration or FrustrationAssignment()
        self.network = network
        self.params = params
        self.frustration = frustration

        n = len(network)
        self.n_agents = n
        self.omega = network.omegas
        self.swarm_ids = network.swarm_ids
        self.n_swarm = len(self.swarm_ids)

        pops = np.array([a.population is Population.BLUE for a in network.agents])
        is_swarm = np.array([a.echelon is Echelon.SWARM for a in network.agents])
        self._is_swarm = is_swarm

        # Static coupling weights sigma * A / (d_i^beta1 * d_j^beta2(i)).
        degrees = network.degrees.astype(float)
        weight = np.zeros((n, n))
        phi_phase = np.zeros((n, n))
        for (i, j), cls in network.link_classes.items():
            sig = params.sigma[cls] * network.adjacency[i, j]
            weight[i, j] = weight[j, i] = sig
            if cls in ADVERSARIAL_CLASSES:
                pop_i = network.agents[i].population
                pop_j = network.agents[j].population
                phi_phase[i, j] = frustration.phase_offset(pop_i)
                phi_phase[j, i] = frustration.phase_offset(pop_j)
        beta2 = np.where(is_swarm, params.beta2_swarm, params.beta2_hq)
        denom = (degrees[None, :] ** beta2[:, None]) * (
            degrees[:, None] ** params.beta1
        )
        self._weight = weight / denom
        self._phi_phase = phi_phase

        # Fold weights and offsets into complex gains so an evaluation is a
        # handful of block matvecs on unit phasors instead of trig over the
        # full pair matrix.  sin(N_ij th_j - N_ji th_i + Phi) splits into four
        # receiver/sender echelon blocks; nu sits only on the mixed ones.
        sw = self.swarm_ids
        hq = np.nonzero(~is_swarm)[0]
        self._hq_ids = hq
        coupling = self._weight * np.exp(1j * phi_phase)
        self._chh = coupling[np.ix_(hq, hq)]
        self._chs = coupling[np.ix_(hq, sw)]
        self._csh = coupling[np.ix_(sw, hq)]
        self._css0 = coupling[np.ix_(sw, sw)]

        swarm_pops = pops[sw]
        self._blue_rows = np.nonzero(swarm_pops)[0]
        self._red_rows = np.nonzero(~swarm_pops)[0]
        self._hq_cols = {
            Population.BLUE: network.member_ids(Population.BLUE, Echelon.HEADQUARTERS),
            Population.RED: network.member_ids(Population.RED, Echelon.HEADQUARTERS),
        }

        # Spatial engagement offsets over swarm pairs, as unit phasors.
        cross = swarm_pops[:, None] != swarm_pops[None, :]
        phi_s = np.zeros((self.n_swarm, self.n_swarm))
        phi_s[cross & swarm_pops[:, None]] = frustration.spatial_offset(Population.BLUE)
        phi_s[cross & ~swarm_pops[:, None]] = frustration.spatial_offset(Population.RED)
        self._phi_spatial = phi_s
        self._p_spatial = np.exp(1j * phi_s)
        self._swarm_is_blue = swarm_pops

    # -- state-dependent pieces -------------------------------------------------

    def _pair_geometry(self, positions: np.ndarray):
        """Componentwise dx[i, j] = x_j - x_i plus squared, plain and
        guarded-inverse pair distances (inverse is 0 on the diagonal and
        inside the guard)."""
        x = positions[:, 0]
        y = positions[:, 1]
        dx = x[None, :] - x[:, None]
        dy = y[None, :] - y[:, None]
        dist_sq = dx * dx + dy * dy
        dist = np.sqrt(dist_sq)
        inv = np.zeros_like(dist)
        np.divide(1.0, dist, out=inv, where=dist > self.params.pair_epsilon)
        return dx, dy, dist_sq, dist, inv

    def swarm_order_parameters(self, phases: np.ndarray) -> dict[Population, float]:
        sw_phases = phases[self.swarm_ids]
        return {
            Population.BLUE: order_parameter(sw_phases, self._blue_rows),
            Population.RED: order_parameter(sw_phases, self._red_rows),
        }

    def hq_order_parameters(self, phases: np.ndarray) -> dict[Population, float]:
        return {
            pop: order_parameter(phases, cols) for pop, cols in self._hq_cols.items()
        }

    def phase_rhs(
        self,
        phases: np.ndarray,
        positions: np.ndarray,
        _dist: np.ndarray | None = None,
    ) -> np.ndarray:
        u = np.exp(1j * phases)
        u_h = u[self._hq_ids]
        u_s = u[self.swarm_ids]
        w_h = np.exp(1j * (self.params.nu * phases[self._hq_ids]))

        css = self._css0
        if self.params.c1 != 0.0 and self.n_swarm > 1:
            if _dist is None:
                _dist = self._pair_geometry(positions)[3]
            css = css / (1.0 + self.params.c1 * _dist)

        coupling_h = np.conj(u_h) * (self._chh @ u_h) + np.conj(w_h) * (
            self._chs @ u_s
        )
        coupling_s = np.conj(u_s) * (self._csh @ w_h + css @ u_s)
        out = np.empty(self.n_agents)
        out[self._hq_ids] = coupling_h.imag
        out[self.swarm_ids] = coupling_s.imag
        return self.omega + out

    def forces(
        self,
        phases: np.ndarray,
        positions: np.ndarray,
        _geometry=None,
    ) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Attraction, repulsion and field terms for every swarm agent.

        Pairs closer than the guard radius (and the diagonal) drop out via
        the zeroed inverse distance.
        """
        p = self.params
        dx, dy, dist_sq, dist, inv = (
            _geometry if _geometry is not None else self._pair_geometry(positions)
        )

        u = np.exp(1j * phases)
        u_s = u[self.swarm_ids]
        radius = np.hypot(positions[:, 0], positions[:, 1])
        inside = radius < p.hill_radius
        outside = radius > p.hill_radius

        suppression = 1.0 - np.where(
            outside, p.c3 * radius / (1.0 + p.c3 * radius), 0.0
        )
        alpha_eff = (p.alpha * inside)[:, None] * suppression[None, :]
        cos_term = (np.conj(u_s)[:, None] * (u_s[None, :] * self._p_spatial)).real

        # Kernels carry 1/dist so summing against dx, dy applies unit vectors.
        one_plus = 1.0 + dist_sq
        att_kernel = (1.0 + alpha_eff * cos_term) / np.sqrt(one_plus) * inv

        order_blue = np.abs(np.mean(u_s[self._blue_rows])) if len(self._blue_rows) else 0.0
        order_red = np.abs(np.mean(u_s[self._red_rows])) if len(self._red_rows) else 0.0
        own_order = np.where(self._swarm_is_blue, order_blue, order_red)
        f_att = np.empty_like(positions)
        f_att[:, 0] = own_order * (att_kernel * dx).sum(axis=1)
        f_att[:, 1] = own_order * (att_kernel * dy).sum(axis=1)

        rep_kernel = (p.rho / (one_plus * one_plus)) * inv
        f_rep = np.empty_like(positions)
        f_rep[:, 0] = (rep_kernel * dx).sum(axis=1)
        f_rep[:, 1] = (rep_kernel * dy).sum(axis=1)

        hq_ids_b = self._hq_cols[Population.BLUE]
        hq_ids_r = self._hq_cols[Population.RED]
        hq_blue = np.abs(np.mean(u[hq_ids_b])) if len(hq_ids_b) else 0.0
        hq_red = np.abs(np.mean(u[hq_ids_r])) if len(hq_ids_r) else 0.0
        own_hq = np.where(self._swarm_is_blue, hq_blue, hq_red)
        f_field = -(p.c2**2) * (own_hq * outside)[:, None] * positions

        return f_att, f_rep, f_field

    def spatial_rhs(
        self, phases: np.ndarray, positions: np.ndarray, _geometry=None
    ) -> np.ndarray:
        f_att, f_rep, f_field = self.forces(phases, positions, _geometry)
        return f_att - f_rep + f_field

    # -- packed form for the integrator ------------------------------------------

    def pack(self, state: SimState) -> np.ndarray:
        return np.concatenate([state.phases, state.positions.ravel()])

    def unpack(self, y: np.ndarray, t: float = 0.0) -> SimState:
        n = self.n_agents
        return SimState(
            phases=y[:n].copy(),
            positions=y[n:].reshape(self.n_swarm, 2).copy(),
            swarm_ids=self.swarm_ids,
            t=t,
        )

    def full_rhs(self, t: float, y: np.ndarray) -> np.ndarray:
        phases = y[: self.n_agents]
        positions = y[self.n_agents :].reshape(self.n_swarm, 2)
        geometry = self._pair_geometry(positions)
        return np.concatenate(
            [
                self.phase_rhs(phases, positions, _dist=geometry[3]),
                self.spatial_rhs(phases, positions, _geometry=geometry).ravel(),
            ]
        )


# -- functional wrappers over CoupledDynamics ------------------------------------


def _require_match(state: SimState, network: C2Network) -> None:
    if len(state.phases) != len(network):
        raise ValueError("state phase vector does not match network size")
    if len(state.swarm_ids) != len(network.swarm_ids) or np.any(
        state.swarm_ids != network.swarm_ids
    ):
        raise ValueError("state swarm ids do not match network")


def phase_rhs(
    state: SimState,
    network: C2Network,
    params: ModelParams,
    frustration: FrustrationAssignment | None = None,
) -> np.ndarray:
    """Time derivative of every agent's decision phase."""
    _require_match(state, network)
    return CoupledDynamics(network, params, frustration).phase_rhs(
        state.phases, state.positions
    )


def attraction_force(
    i: int,
    state: SimState,
    network: C2Network,
    params: ModelParams,
    frustration: FrustrationAssignment | None = None,
) -> np.ndarray:
    """Synchronization-gated attraction on swarm agent ``i``."""
    _require_match(state, network)
    row = state.position_row(i)
    dyn = CoupledDynamics(network, params, frustration)
    f_att, _, _ = dyn.forces(state.phases, state.positions)
    return f_att[row]


def repulsion_force(i: int, state: SimState, params: ModelParams) -> np.ndarray:
    """Short-range repulsion on swarm agent ``i`` (subtracted in the motion law)."""
    row = state.position_row(i)
    diff = state.positions - state.positions[row]
    dist = np.linalg.norm(diff, axis=1)
    valid = dist > params.pair_epsilon
    force = np.zeros(2)
    for j in np.nonzero(valid)[0]:
        force += params.rho / (1.0 + dist[j] ** 2) ** 2 * diff[j] / dist[j]
    return force


def field_force(
    i: int,
    state: SimState,
    network: C2Network,
    params: ModelParams,
) -> np.ndarray:
    """Restoring pull toward the hill, gated by headquarters synchronization."""
    _require_match(state, network)
    row = state.position_row(i)
    dyn = CoupledDynamics(network, params)
    _, _, f_field = dyn.forces(state.phases, state.positions)
    return f_field[row]


def spatial_rhs(
    state: SimState,
    network: C2Network,
    params: ModelParams,
    frustration: FrustrationAssignment | None = None,
) -> np.ndarray:
    """Velocities of all swarm agents, one row per entry of ``state.swarm_ids``."""
    _require_match(state, network)
    return CoupledDynamics(network, params, frustration).spatial_rhs(
        state.phases, state.positions
    )


def full_rhs(
    state: SimState,
    network: C2Network,
    params: ModelParams,
    frustration: FrustrationAssignment | None = None,
) -> np.ndarray:
    """Packed derivative: all phase rates, then swarm velocities row-major."""
    _require_match(state, network)
    dyn = CoupledDynamics(network, params, frustration)
    return dyn.full_rhs(state.t, dyn.pack(state))
