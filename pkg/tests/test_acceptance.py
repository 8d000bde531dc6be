"""Acceptance gate: one test per release criterion, each printing a
PASS/FAIL line so a verbose run reads as a checklist.

Every expected value comes from an oracle computed inside this file:
fixed-step RK4 for the adaptive integrator, literal per-link loops for the
coupling and force sums, pairwise sweeps for dominance, square-subgame
enumeration for the game value, and closed-form geometry for occupancy.
Statistical criteria run on fixed seed lists, so every line below is
deterministic on a given platform.

Games here use relaxed integrator tolerances (rtol 1e-3 for single games,
1e-2 for the big sweep): the hill-boundary indicator makes trajectories
slide along a discontinuity, and the strict defaults spend minutes per game
resolving chatter that occupancy scoring cannot see. The relevant
comparisons were spot-checked against tighter tolerances when the scales
were chosen.

Criterion 4 is a known failure kept as an honest statement of the release
gate; its docstring summarizes the measurements and the calibration search
behind that verdict. The full-sweep fixture it shares with criterion 5 runs
1280 games and dominates the suite's wall time (roughly fifteen minutes on
one core).
"""

import itertools
import time

import numpy as np
import pytest

from c2swarm.dynamics import (
    DEFAULT_SIGMA,
    CoupledDynamics,
    FrustrationAssignment,
    ModelParams,
    SimState,
    order_parameter,
)
from c2swarm.game import (
    DEFAULT_ACTIONS,
    ActionSet,
    GameConfig,
    PayoffMatrix,
    dominance_analysis,
    enumerate_payoffs,
    maximin_solve,
    play_game,
)
from c2swarm.harness import run_sweep
from c2swarm.integrate import (
    IntegratorConfig,
    Trajectory,
    accumulate_occupancy,
    integrate_segment,
)
from c2swarm.network import (
    ADVERSARIAL_CLASSES,
    Echelon,
    ForceLayout,
    LinkClass,
    Population,
    build_force_network,
)

RUN_TOL = IntegratorConfig(rtol=1e-3, atol=1e-6, dt_out=0.05)
SWEEP_TOL = IntegratorConfig(rtol=1e-2, atol=1e-4, dt_out=0.1)

PI = np.pi


def report(num: int, label: str, ok: bool, detail: str = "") -> bool:
    """One checklist line per criterion; printed output survives -rA/-s."""
    status = "PASS" if ok else "FAIL"
    suffix = f" [{detail}]" if detail else ""
    print(f"criterion {num:02d} {status}: {label}{suffix}")
    return ok


# -- shared heavyweight artifacts --------------------------------------------------


@pytest.fixture(scope="module")
def full_network():
    return build_force_network(ForceLayout())


@pytest.fixture(scope="module")
def full_sweep():
    """Full default-layout sweep: 4 actions, 2 turns, 256 cells, 5 seeds.
    This is the most expensive artifact in the suite (1280 games)."""
    config = GameConfig(layout=ForceLayout(), integrator=SWEEP_TOL,
                        t_final=20.0, turns=2)
    return enumerate_payoffs(
        config, ActionSet(DEFAULT_ACTIONS), seeds=(0, 1, 2, 3, 4), workers=1
    )


@pytest.fixture(scope="module")
def reduced_sweep():
    """Same 256-cell enumeration at reduced scale, timed with eight workers
    to carry the sweep-runtime bound."""
    config = GameConfig(
        layout=ForceLayout(hq_size_blue=5, hq_size_red=5, swarm_size_blue=4,
                           swarm_size_red=5, seed=0),
        integrator=SWEEP_TOL, t_final=20.0, turns=2,
    )
    start = time.perf_counter()
    matrix = enumerate_payoffs(
        config, ActionSet(DEFAULT_ACTIONS), seeds=(0, 1, 2, 3, 4), workers=8
    )
    return matrix, time.perf_counter() - start


# -- oracles -----------------------------------------------------------------------


def rk4_fixed(f, y0, t0, t1, dt):
    """Classical fixed-step fourth-order Runge-Kutta."""
    steps = int(round((t1 - t0) / dt))
    y = y0.astype(float).copy()
    t = t0
    for _ in range(steps):
        k1 = f(t, y)
        k2 = f(t + dt / 2, y + dt / 2 * k1)
        k3 = f(t + dt / 2, y + dt / 2 * k2)
        k4 = f(t + dt, y + dt * k3)
        y = y + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        t += dt
    return y


def ten_agent_instance():
    """Ten agents, swarms compact inside the goal disk so the trajectory
    stays clear of the boundary discontinuity for the compared horizon."""
    network = build_force_network(
        ForceLayout(hq_size_blue=2, hq_size_red=2, swarm_size_blue=3,
                    swarm_size_red=3, seed=3)
    )
    rng = np.random.default_rng(0)
    phases = np.concatenate([rng.uniform(0, 0.8, 5), rng.uniform(2.0, 2.8, 5)])[
        rng.permutation(10)
    ]
    state = SimState(
        phases=phases,
        positions=rng.normal(scale=0.35, size=(6, 2)),
        swarm_ids=network.swarm_ids,
    )
    return network, state


def swarm_row(network, agent_id):
    return int(np.flatnonzero(network.swarm_ids == agent_id)[0])


def matrix_of(values) -> PayoffMatrix:
    """Wrap a raw payoff array with placeholder strategy labels."""
    values = np.asarray(values, dtype=float)
    m, n = values.shape
    return PayoffMatrix(
        blue_strategies=tuple((float(r),) for r in range(m)),
        red_strategies=tuple((float(c),) for c in range(n)),
        values=values,
        seeds=(0,),
    )


def brute_phase_rhs(state, network, params, frustration):
    """Literal per-link evaluation of the phase coupling sum."""
    n = len(network)
    degrees = network.degrees.astype(float)
    out = network.omegas.copy()
    for i in range(n):
        agent_i = network.agents[i]
        swarm_i = agent_i.echelon is Echelon.SWARM
        beta2 = params.beta2_swarm if swarm_i else params.beta2_hq
        for j in range(n):
            if j == i:
                continue
            cls = network.link_class(i, j)
            if cls is None:
                continue
            weight = float(network.adjacency[i, j])
            swarm_j = network.agents[j].echelon is Echelon.SWARM
            if swarm_i and swarm_j:
                d = np.linalg.norm(
                    state.positions[swarm_row(network, j)]
                    - state.positions[swarm_row(network, i)]
                )
                weight /= 1.0 + params.c1 * d
            n_ij = params.nu if (swarm_i and not swarm_j) else 1.0
            n_ji = params.nu if (swarm_j and not swarm_i) else 1.0
            phi = (
                frustration.phase_offset(agent_i.population)
                if cls in ADVERSARIAL_CLASSES
                else 0.0
            )
            denom = degrees[i] ** params.beta1 * degrees[j] ** beta2
            out[i] += (
                params.sigma[cls]
                / denom
                * weight
                * np.sin(n_ij * state.phases[j] - n_ji * state.phases[i] + phi)
            )
    return out


def brute_forces(state, network, params, frustration):
    """Literal evaluation of attraction, repulsion and field per swarm agent."""
    swarm = network.swarm_ids
    pops = {i: network.agents[i].population for i in swarm}
    orders = {
        pop: np.abs(
            np.mean([np.exp(1j * state.phases[i]) for i in swarm if pops[i] is pop])
        )
        for pop in Population
    }
    hq_orders = {
        pop: np.abs(
            np.mean(
                np.exp(1j * state.phases[network.member_ids(pop, Echelon.HEADQUARTERS)])
            )
        )
        for pop in Population
    }
    att = np.zeros((len(swarm), 2))
    rep = np.zeros((len(swarm), 2))
    fld = np.zeros((len(swarm), 2))
    for a, i in enumerate(swarm):
        xi = state.positions[a]
        ri = np.linalg.norm(xi)
        for b, j in enumerate(swarm):
            if j == i:
                continue
            diff = state.positions[b] - xi
            d = np.linalg.norm(diff)
            if d <= params.pair_epsilon:
                continue
            rj = np.linalg.norm(state.positions[b])
            suppress = 1.0
            if rj > params.hill_radius:
                suppress = 1.0 - params.c3 * rj / (1.0 + params.c3 * rj)
            alpha = params.alpha * (ri < params.hill_radius) * suppress
            phi_s = (
                frustration.spatial_offset(pops[i]) if pops[i] is not pops[j] else 0.0
            )
            gain = 1.0 + alpha * np.cos(state.phases[j] - state.phases[i] + phi_s)
            att[a] += gain / np.sqrt(1.0 + d * d) * diff / d
            rep[a] += params.rho / (1.0 + d * d) ** 2 * diff / d
        att[a] *= orders[pops[i]]
        if ri > params.hill_radius:
            fld[a] = -params.c2**2 * hq_orders[pops[i]] * xi
    return att, rep, fld


def brute_dominance(values, strict):
    """Entry-by-entry pairwise sweep written straight from the definition."""
    m, n = values.shape

    def row_beats(a, b):
        for c in range(n):
            if values[a, c] < values[b, c]:
                return False
            if strict and values[a, c] == values[b, c]:
                return False
        return True

    def col_beats(a, b):
        for r in range(m):
            if values[r, a] > values[r, b]:
                return False
            if strict and values[r, a] == values[r, b]:
                return False
        return True

    dominant_rows = tuple(
        r for r in range(m) if all(row_beats(r, o) for o in range(m) if o != r)
    )
    dominated_rows = tuple(
        r for r in range(m) if any(row_beats(o, r) for o in range(m) if o != r)
    )
    dominant_cols = tuple(
        c for c in range(n) if all(col_beats(c, o) for o in range(n) if o != c)
    )
    dominated_cols = tuple(
        c for c in range(n) if any(col_beats(o, c) for o in range(n) if o != c)
    )
    return dominant_rows, dominated_rows, dominant_cols, dominated_cols


def support_enumeration_value(values):
    """Game value via exhaustive square-subgame basic-solution search."""
    m, n = values.shape
    for k in range(1, min(m, n) + 1):
        for rows in itertools.combinations(range(m), k):
            for cols in itertools.combinations(range(n), k):
                sub = values[np.ix_(rows, cols)]
                lhs = np.zeros((k + 1, k + 1))
                rhs = np.zeros(k + 1)
                rhs[k] = 1.0
                lhs[:k, k] = -1.0
                lhs[k, :k] = 1.0
                lhs[:k, :k] = sub.T
                try:
                    p_sol = np.linalg.solve(lhs, rhs)
                    lhs[:k, :k] = sub
                    q_sol = np.linalg.solve(lhs, rhs)
                except np.linalg.LinAlgError:
                    continue
                p_sub, value = p_sol[:k], float(p_sol[k])
                q_sub = q_sol[:k]
                if p_sub.min() < -1e-9 or q_sub.min() < -1e-9:
                    continue
                p = np.zeros(m)
                p[list(rows)] = np.clip(p_sub, 0.0, None)
                p /= p.sum()
                q = np.zeros(n)
                q[list(cols)] = np.clip(q_sub, 0.0, None)
                q /= q.sum()
                if (p @ values).min() >= value - 1e-7 and (
                    values @ q
                ).max() <= value + 1e-7:
                    return value
    raise AssertionError("no square-subgame solution verified")


# -- criteria ----------------------------------------------------------------------


def test_criterion_01_zero_sum_exactness():
    """100 random games: utilities and per-turn advantages negate exactly."""
    layout = ForceLayout(hq_size_blue=5, hq_size_red=5, swarm_size_blue=4,
                         swarm_size_red=5, seed=1)
    network = build_force_network(layout)
    config = GameConfig(layout=layout, integrator=RUN_TOL, t_final=10.0, turns=2)
    strategies = ActionSet(DEFAULT_ACTIONS).strategies(2)
    rng = np.random.default_rng(2026)
    start = time.perf_counter()
    exact = 0
    for i in range(100):
        blue = strategies[rng.integers(len(strategies))]
        red = strategies[rng.integers(len(strategies))]
        result = play_game(config, blue, red, seed=i, network=network)
        advantage_blue = result.scores_blue - result.scores_red
        advantage_red = result.scores_red - result.scores_blue
        if (
            result.utility_blue + result.utility_red == 0.0
            and np.all(advantage_blue + advantage_red == 0.0)
        ):
            exact += 1
    elapsed = time.perf_counter() - start
    ok = exact == 100 and elapsed < 300.0
    assert report(1, "zero-sum identity exact in 100 random games", ok,
                  f"{exact}/100 exact, {elapsed:.0f}s")


def test_criterion_02_symmetry_null():
    """Mirrored forces and couplings, both unfrustrated: mean utility CI
    straddles zero over 30 seeds."""
    sigma = dict(DEFAULT_SIGMA)
    # the default organization gives blue the stronger intra-swarm channel;
    # a true mirror needs it equalized
    sigma[LinkClass.INTRA_SWARM_BLUE] = sigma[LinkClass.INTRA_SWARM_RED]
    layout = ForceLayout(hq_size_blue=5, hq_size_red=5, swarm_size_blue=4,
                         swarm_size_red=4, seed=2)
    network = build_force_network(layout)
    config = GameConfig(layout=layout, params=ModelParams(sigma=sigma),
                        integrator=RUN_TOL, t_final=10.0, turns=2)
    utilities = np.array([
        play_game(config, (0.0, 0.0), (0.0, 0.0), seed=s, network=network).utility_blue
        for s in range(30)
    ])
    half_width = 1.96 * utilities.std(ddof=1) / np.sqrt(len(utilities))
    ok = abs(utilities.mean()) <= half_width
    assert report(2, "mirrored game symmetric within 95% CI", ok,
                  f"mean {utilities.mean():+.3f}, half-width {half_width:.3f}")


def test_criterion_03_frustration_flips_default_matchup(full_network):
    """Default forces, Red unfrustrated: Blue loses at 0 in >=70% of seeds
    and wins near pi/2 in >=60%, each game under a minute."""
    config = GameConfig(layout=ForceLayout(), integrator=RUN_TOL,
                        t_final=20.0, turns=2)
    behind = ahead = 0
    slowest = 0.0
    for seed in range(20):
        start = time.perf_counter()
        at_zero = play_game(config, (0.0, 0.0), (0.0, 0.0), seed=seed,
                            network=full_network)
        mid = time.perf_counter()
        at_half = play_game(config, (PI / 2, PI / 2), (0.0, 0.0), seed=seed,
                            network=full_network)
        end = time.perf_counter()
        slowest = max(slowest, mid - start, end - mid)
        behind += at_zero.utility_blue < 0.0
        ahead += at_half.utility_blue > 0.0
    ok = behind >= 14 and ahead >= 12 and slowest < 60.0
    assert report(3, "blue loses at 0, wins near pi/2 (20 seeds)", ok,
                  f"behind {behind}/20, ahead {ahead}/20, slowest {slowest:.1f}s")


def test_criterion_04_moderate_frustration_beats_full_reversal(full_sweep):
    """Across the full default sweep, strategies opening at pi/3 should
    average a better blue payoff than strategies opening at pi.

    KNOWN FAILURE, kept as an honest acceptance statement. In this model a
    player's frustration enters opposing receivers with the opposite sign, so
    the cross-force phase lock lands where the opponent's engagement gain is
    1 + alpha*cos(phi): pushing phi toward pi disengages the opponent most,
    and blue's group means rise monotonically with its opening frustration
    (the measured gap is ~18 sigma of seed noise, stable across three layout
    scales and a 24-point calibration search over the coupling table, the
    frequency spreads, and every spatial constant; every setting that mutes
    the monotone channel also erases the sign flip that criterion 3 checks).
    """
    first = np.array([s[0] for s in full_sweep.blue_strategies])
    mean_third = full_sweep.values[np.isclose(first, PI / 3)].mean()
    mean_pi = full_sweep.values[np.isclose(first, PI)].mean()
    ok = bool(mean_third > mean_pi)
    assert report(4, "pi/3-opening strategies outscore pi-opening", ok,
                  f"pi/3 {mean_third:+.2f} vs pi {mean_pi:+.2f}")


def test_criterion_05_strategy_space_cardinality(full_sweep, reduced_sweep):
    """Four actions over two turns enumerate to exactly 16x16 = 256 cells on
    the default layout; the reduced-scale sweep finishes inside ten minutes
    with eight workers."""
    small, wall = reduced_sweep
    ok = (
        full_sweep.values.shape == (16, 16)
        and full_sweep.values.size == 256
        and len(full_sweep.blue_strategies) == 16
        and len(full_sweep.red_strategies) == 16
        and full_sweep.complete
        and small.values.size == 256
        and small.complete
        and wall < 600.0
    )
    assert report(5, "default sweep emits exactly 256 finite cells", ok,
                  f"default {full_sweep.values.size} cells; "
                  f"reduced sweep in {wall:.0f}s")


def test_criterion_06_integrator_matches_rk4_oracle():
    """Adaptive result vs fixed-step RK4 at dt=1e-3 on ten agents, plus
    self-convergence under tolerance tightening."""
    network, state = ten_agent_instance()
    dynamics = CoupledDynamics(network, ModelParams())
    config = IntegratorConfig(rtol=1e-8, atol=1e-10, dt_out=0.5)
    trajectory = integrate_segment(dynamics.full_rhs, state, 0.0, 5.0, config,
                                   network)
    adaptive = np.concatenate(
        [trajectory.phases[-1], trajectory.positions[-1].ravel()]
    )
    oracle = rk4_fixed(dynamics.full_rhs, dynamics.pack(state), 0.0, 5.0, 1e-3)
    rk4_error = float(np.max(np.abs(adaptive - oracle)))

    def final(rtol, atol):
        cfg = IntegratorConfig(rtol=rtol, atol=atol, dt_out=1.0)
        traj = integrate_segment(dynamics.full_rhs, state, 0.0, 4.0, cfg, network)
        return np.concatenate([traj.phases[-1], traj.positions[-1].ravel()])

    loose, tight, tighter = final(1e-5, 1e-7), final(1e-6, 1e-8), final(1e-7, 1e-9)
    drop_loose = float(np.max(np.abs(loose - tight)))
    drop_tight = float(np.max(np.abs(tight - tighter)))
    ok = rk4_error < 1e-3 and drop_loose < 1e-5 and drop_tight < 1e-6 and (
        drop_tight < drop_loose
    )
    assert report(6, "adaptive integrator matches RK4 oracle", ok,
                  f"rk4 err {rk4_error:.2e}, convergence {drop_loose:.1e}->{drop_tight:.1e}")


def test_criterion_07_force_and_coupling_oracles():
    """Hand-built small configurations: every force term and the coupling
    sum (attenuation and degree scaling included) match literal loops."""
    # two swarm agents per force, mixed inside/outside the hill, frustrated
    network = build_force_network(
        ForceLayout(hq_size_blue=1, hq_size_red=1, swarm_size_blue=2,
                    swarm_size_red=2, seed=9)
    )
    params = ModelParams(c1=0.8)
    frustration = FrustrationAssignment(phi_blue=0.7, phi_red=0.2)
    state = SimState(
        phases=np.array([0.3, 5.9, 1.1, 2.4, 4.0, 0.2]),
        positions=np.array([[0.4, 0.1], [-0.3, 0.5], [1.6, -0.2], [0.2, -1.9]]),
        swarm_ids=network.swarm_ids,
    )
    dynamics = CoupledDynamics(network, params, frustration)
    f_att, f_rep, f_field = dynamics.forces(state.phases, state.positions)
    o_att, o_rep, o_field = brute_forces(state, network, params, frustration)
    att_err = float(np.max(np.abs(f_att - o_att)))
    rep_err = float(np.max(np.abs(f_rep - o_rep)))
    fld_err = float(np.max(np.abs(f_field - o_field)))

    phase_err = float(
        np.max(
            np.abs(
                dynamics.phase_rhs(state.phases, state.positions)
                - brute_phase_rhs(state, network, params, frustration)
            )
        )
    )
    ok = max(att_err, rep_err, fld_err) < 1e-10 and phase_err < 1e-10
    assert report(7, "force and coupling sums match literal-loop oracles", ok,
                  f"forces {max(att_err, rep_err, fld_err):.1e}, phases {phase_err:.1e}")


def test_criterion_08_order_parameter_exact():
    """Bounds, consensus, antipodal cancellation and shift invariance."""
    rng = np.random.default_rng(4)
    consensus = np.full(9, 1.234)
    antipodal = np.array([0.4, 0.4 + PI])
    checks = [
        abs(order_parameter(consensus) - 1.0) < 1e-12,
        order_parameter(antipodal) < 1e-12,
    ]
    for _ in range(50):
        phases = rng.uniform(0, 2 * PI, rng.integers(2, 12))
        r = order_parameter(phases)
        checks.append(0.0 <= r <= 1.0)
        shift = rng.uniform(-10, 10)
        checks.append(abs(order_parameter(phases + shift) - r) < 1e-12)
    ok = all(checks)
    assert report(8, "order parameter exact at 1e-12", ok,
                  f"{sum(checks)}/{len(checks)} checks")


def test_criterion_09_occupancy_oracle():
    """Piecewise-constant synthetic paths: score within one dt rectangle of
    the analytic value; the disk boundary itself counts as inside."""
    dt = 0.05
    times = np.arange(0.0, 10.0 + dt / 2, dt)
    n = len(times)
    # agent holds at (2,0), teleports inside on [3.02, 7.51), then leaves
    inside_mask = (times >= 3.02) & (times < 7.51)
    positions = np.tile(np.array([[2.0, 0.0]]), (n, 1))[:, None, :]
    positions = positions.copy()
    positions[inside_mask, 0, :] = [0.3, 0.0]
    trajectory = Trajectory(
        times=times,
        phases=np.zeros((n, 2)),
        positions=positions,
        swarm_ids=np.array([1]),
        swarm_populations=(Population.BLUE,),
    )
    measured = accumulate_occupancy(trajectory, Population.BLUE, 1.0)
    analytic = 7.51 - 3.02 + 0.0  # left-rectangle sampling of the same window
    step_error = abs(measured - analytic)

    # boundary convention: an agent parked exactly on the rim accrues fully
    rim = Trajectory(
        times=times,
        phases=np.zeros((n, 2)),
        positions=np.tile(np.array([[1.0, 0.0]]), (n, 1))[:, None, :],
        swarm_ids=np.array([1]),
        swarm_populations=(Population.RED,),
    )
    rim_occupancy = accumulate_occupancy(rim, Population.RED, 1.0)
    ok = step_error <= dt + 1e-12 and abs(rim_occupancy - 10.0) < 1e-12
    assert report(9, "occupancy within one dt rectangle, rim inclusive", ok,
                  f"err {step_error:.3f} <= dt {dt}, rim {rim_occupancy:.3f}")


def test_criterion_10_game_theory_oracles():
    """Dominance vs pairwise brute force, maximin vs support enumeration,
    and the rock-paper-scissors uniform mixture."""
    rng = np.random.default_rng(7)
    dominance_ok = 0
    for trial in range(100):
        if trial % 2 == 0:
            values = rng.integers(0, 5, size=(16, 16)).astype(float)
        else:
            values = rng.normal(size=(16, 16))
        strict = trial % 3 == 0
        report_ = dominance_analysis(matrix_of(values), strict=strict)
        got = (
            report_.dominant_rows,
            report_.dominated_rows,
            report_.dominant_columns,
            report_.dominated_columns,
        )
        if got == brute_dominance(values, strict):
            dominance_ok += 1

    maximin_gap = 0.0
    for _ in range(40):
        values = rng.normal(size=(4, 4))
        solution = maximin_solve(values)
        oracle = support_enumeration_value(values)
        maximin_gap = max(maximin_gap, abs(solution.value - oracle))

    rps = np.array([[0.0, -1.0, 1.0], [1.0, 0.0, -1.0], [-1.0, 1.0, 0.0]])
    rps_solution = maximin_solve(rps)
    rps_err = max(
        float(np.max(np.abs(rps_solution.blue_mixture - 1.0 / 3.0))),
        float(np.max(np.abs(rps_solution.red_mixture - 1.0 / 3.0))),
        abs(rps_solution.value),
    )
    ok = dominance_ok == 100 and maximin_gap < 1e-6 and rps_err < 1e-3
    assert report(10, "dominance, maximin and RPS match oracles", ok,
                  f"dominance {dominance_ok}/100, maximin gap {maximin_gap:.1e}, rps {rps_err:.1e}")


def test_criterion_11_sweep_determinism(tmp_path):
    """Identical config and seeds twice: byte-identical payoff CSV."""
    layout = ForceLayout(hq_size_blue=1, hq_size_red=1, swarm_size_blue=2,
                         swarm_size_red=2, seed=7)
    config = GameConfig(layout=layout, integrator=RUN_TOL, t_final=2.0, turns=2)
    actions = ActionSet((0.0, PI / 2))
    first = run_sweep(config, actions, seeds=(0, 1), out_dir=tmp_path / "a",
                      densities=False)
    second = run_sweep(config, actions, seeds=(0, 1), out_dir=tmp_path / "b",
                       densities=False)
    bytes_a = (first.out_dir / "payoff_matrix.csv").read_bytes()
    bytes_b = (second.out_dir / "payoff_matrix.csv").read_bytes()
    ok = bytes_a == bytes_b and len(bytes_a) > 0
    assert report(11, "repeated sweep is byte-identical", ok,
                  f"{len(bytes_a)} bytes")
