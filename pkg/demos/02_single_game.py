"""Play one full two-turn game and look inside it.

Blue leads the adversary's decision cycle (frustrations pi/3 then 2*pi/3);
Red stays unfrustrated. The script plots the swarm paths around the hill,
the cumulative relative score, and the per-population synchrony, then
prints the per-turn ledger. Outputs land in demos/out/.

Runtime is a few seconds at the relaxed tolerances used here; the strict
defaults resolve the hill-boundary crossings much more finely and are
overkill for a demo.
"""

from collections import Counter
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from c2swarm import (
    Echelon,
    ForceLayout,
    GameConfig,
    IntegratorConfig,
    Population,
    build_force_network,
    ooda_state,
    order_parameter,
    play_game,
    score_timeseries,
)

OUT = Path(__file__).resolve().parent / "out"

RUN_TOL = IntegratorConfig(rtol=1e-3, atol=1e-6, dt_out=0.05)
BLUE_STRATEGY = (np.pi / 3, 2 * np.pi / 3)
RED_STRATEGY = (0.0, 0.0)
SEED = 0


def main():
    OUT.mkdir(exist_ok=True)
    layout = ForceLayout()
    network = build_force_network(layout)
    config = GameConfig(layout=layout, integrator=RUN_TOL, t_final=20.0, turns=2)

    result = play_game(config, BLUE_STRATEGY, RED_STRATEGY, seed=SEED,
                       keep_trajectory=True, network=network)
    traj = result.trajectory

    print(f"blue {BLUE_STRATEGY} vs red {RED_STRATEGY}, seed {SEED}")
    for k, (qb, qr) in enumerate(zip(result.scores_blue, result.scores_red)):
        print(f"  turn {k + 1}: blue {qb:+9.3f}  red {qr:+9.3f}")
    print(f"  utility: blue {result.utility_blue:+9.3f}  red {result.utility_red:+9.3f}")

    final = traj.final_state
    for pop in Population:
        ids = network.member_ids(pop, Echelon.HEADQUARTERS)
        stages = Counter(ooda_state(t).name for t in final.phases[ids])
        print(f"  {pop.name.lower()} HQ decision stages at t_final: {dict(stages)}")

    fig, axes = plt.subplots(1, 3, figsize=(15, 4.5))

    # swarm paths; the unit circle is the scored hill
    ax = axes[0]
    rows = {pop: traj.population_rows(pop) for pop in Population}
    for pop, color in ((Population.BLUE, "tab:blue"), (Population.RED, "tab:red")):
        xy = traj.positions[:, rows[pop], :]
        ax.plot(xy[:, :, 0], xy[:, :, 1], color=color, lw=0.4, alpha=0.5)
        ax.scatter(xy[-1, :, 0], xy[-1, :, 1], color=color, s=12, zorder=3)
    ax.add_patch(plt.Circle((0, 0), config.hill_radius, fill=False, color="k", lw=1.5))
    ax.set_aspect("equal")
    ax.set_title("swarm trajectories")
    ax.set_xlim(-3, 3), ax.set_ylim(-3, 3)

    # cumulative relative score; vertical line marks the turn boundary
    ax = axes[1]
    series = score_timeseries(traj, config.hill_radius, result.turn_boundaries)
    ax.plot(series.times, series.cumulative_blue, color="tab:blue", label="blue")
    ax.plot(series.times, series.cumulative_red, color="tab:red", label="red")
    for tb in result.turn_boundaries[1:-1]:
        ax.axvline(tb, color="gray", lw=0.8, ls="--")
    ax.axhline(0.0, color="k", lw=0.5)
    ax.set_xlabel("t"), ax.set_title("cumulative relative score")
    ax.legend()

    # synchrony of each subpopulation over time
    ax = axes[2]
    groups = {
        "blue swarm": network.member_ids(Population.BLUE, Echelon.SWARM),
        "red swarm": network.member_ids(Population.RED, Echelon.SWARM),
        "blue HQ": network.member_ids(Population.BLUE, Echelon.HEADQUARTERS),
        "red HQ": network.member_ids(Population.RED, Echelon.HEADQUARTERS),
    }
    for (label, ids), style in zip(groups.items(), ("-", "-", "--", "--")):
        color = "tab:blue" if "blue" in label else "tab:red"
        r = [order_parameter(row, subset=ids) for row in traj.phases]
        ax.plot(traj.times, r, style, color=color, lw=1.0, label=label)
    ax.set_xlabel("t"), ax.set_ylim(0, 1.05)
    ax.set_title("order parameter")
    ax.legend(fontsize=8)

    fig.savefig(OUT / "single_game.png", dpi=150, bbox_inches="tight")
    traj.write_csv(OUT / "single_game_trajectory.csv")
    print(f"wrote {OUT / 'single_game.png'}")


if __name__ == "__main__":
    main()
