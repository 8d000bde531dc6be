"""Why frustration matters: Blue at 0 versus Blue near pi/2.

Against an unfrustrated Red, an unfrustrated Blue loses on force size alone
(20 versus 25 swarm agents). Inserting a quarter-cycle lead into the
adversarial coupling detunes Red's engagement and flips the outcome in most
seeds. The script replays both matchups over a handful of seeds, prints the
utility table, and renders where each swarm spent its time.

Runtime is a minute or two: each arm is a full 87-agent, two-turn game.
Outputs land in demos/out/.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from c2swarm import (
    ForceLayout,
    GameConfig,
    IntegratorConfig,
    Population,
    build_force_network,
    density_grid,
    play_game,
)

OUT = Path(__file__).resolve().parent / "out"

RUN_TOL = IntegratorConfig(rtol=1e-3, atol=1e-6, dt_out=0.05)
SEEDS = range(5)
ARMS = {"phi=0": 0.0, "phi=pi/2": np.pi / 2}


def main():
    OUT.mkdir(exist_ok=True)
    layout = ForceLayout()
    network = build_force_network(layout)
    config = GameConfig(layout=layout, integrator=RUN_TOL, t_final=20.0, turns=2)

    trajectories = {}
    utilities = {}
    for label, phi in ARMS.items():
        blue = (phi, phi)
        results = [
            play_game(config, blue, (0.0, 0.0), seed=s, keep_trajectory=True,
                      network=network)
            for s in SEEDS
        ]
        trajectories[label] = [r.trajectory for r in results]
        utilities[label] = np.array([r.utility_blue for r in results])

    print(f"{'seed':>4s}  {'U_B at phi=0':>14s}  {'U_B at phi=pi/2':>16s}")
    for i, s in enumerate(SEEDS):
        print(f"{s:4d}  {utilities['phi=0'][i]:+14.2f}  {utilities['phi=pi/2'][i]:+16.2f}")
    for label, u in utilities.items():
        wins = int((u > 0).sum())
        print(f"{label}: mean U_B = {u.mean():+8.2f}, blue ahead in {wins}/{len(u)} seeds")

    fig, axes = plt.subplots(2, 2, figsize=(10, 9))
    for col, label in enumerate(ARMS):
        for row, pop in enumerate((Population.BLUE, Population.RED)):
            grid = density_grid(trajectories[label], pop, window=(-3, 3),
                                resolution=120)
            ax = axes[row][col]
            ax.imshow(grid.density.T, origin="lower", cmap="magma",
                      extent=(-3, 3, -3, 3))
            ax.add_patch(plt.Circle((0, 0), config.hill_radius, fill=False,
                                    color="w", lw=1.0))
            ax.set_title(f"{pop.name.lower()} density, blue {label}")
    fig.savefig(OUT / "frustration_densities.png", dpi=150, bbox_inches="tight")
    print(f"wrote {OUT / 'frustration_densities.png'}")


if __name__ == "__main__":
    main()
