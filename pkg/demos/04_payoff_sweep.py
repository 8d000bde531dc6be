"""Enumerate the full strategy space of a reduced-scale game and solve it.

Both players pick one frustration per turn from {0, pi/3, 2*pi/3, pi}; two
turns give 16 strategies each, 256 payoff cells. Full-size games make that
an expensive grid, so this demo shrinks the forces (Blue 4 vs Red 5 swarm
agents, single-agent headquarters) while keeping the action set, turn count
and the Blue-outnumbered setup. It runs the sweep harness end to end (CSV
and JSON artifacts included), then draws the payoff heatmap with the
dominance and maximin analyses annotated.

Runtime is a minute or two (256 games). Outputs land in demos/out/sweep/.
"""

import json
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from c2swarm import ForceLayout, GameConfig, IntegratorConfig, run_sweep

OUT = Path(__file__).resolve().parent / "out" / "sweep"

# Coarse tolerance: payoff cells are per-turn occupancy integrals, so the
# heatmap is insensitive to local truncation error and the sweep stays fast.
SWEEP_TOL = IntegratorConfig(rtol=1e-2, atol=1e-4, dt_out=0.1)
LAYOUT = ForceLayout(hq_size_blue=5, hq_size_red=5,
                     swarm_size_blue=4, swarm_size_red=5, seed=0)


def label(strategy):
    names = {0.0: "0", np.pi / 3: "pi/3", 2 * np.pi / 3: "2pi/3", np.pi: "pi"}
    return ",".join(names[min(names, key=lambda k: abs(k - a))] for a in strategy)


def main():
    config = GameConfig(layout=LAYOUT, integrator=SWEEP_TOL, t_final=10.0, turns=2)
    artifacts = run_sweep(config, seeds=(0,), out_dir=OUT, workers=4,
                          densities=False)
    matrix = artifacts.matrix
    print(f"cells={matrix.values.size} failures={len(matrix.failures)}")

    dom = json.loads((OUT / "dominance.json").read_text())
    sol = json.loads((OUT / "maximin.json").read_text())
    print(f"game value (blue) = {sol['value']:+.3f}, LP gap = {sol['gap']:.2e}")
    print(f"weakly dominated blue strategies: {len(dom['dominated_rows'])}/16")
    print(f"weakly dominated red strategies:  {len(dom['dominated_columns'])}/16")

    fig, ax = plt.subplots(figsize=(9, 8))
    im = ax.imshow(matrix.values, cmap="RdBu", vmin=-np.abs(matrix.values).max(),
                   vmax=np.abs(matrix.values).max())
    ticks = range(len(matrix.blue_strategies))
    ax.set_xticks(ticks, [label(s) for s in matrix.red_strategies], rotation=90,
                  fontsize=7)
    ax.set_yticks(ticks, [label(s) for s in matrix.blue_strategies], fontsize=7)
    ax.set_xlabel("red strategy (turn 1, turn 2)")
    ax.set_ylabel("blue strategy (turn 1, turn 2)")
    ax.set_title("blue utility; hatched rows/cols are weakly dominated")
    for r in dom["dominated_rows"]:
        ax.axhspan(r - 0.5, r + 0.5, fill=False, hatch="///", lw=0)
    for c in dom["dominated_columns"]:
        ax.axvspan(c - 0.5, c + 0.5, fill=False, hatch="\\\\\\", lw=0)
    # maximin supports as markers on the margins
    pb = np.array(sol["blue_mixture"])
    pr = np.array(sol["red_mixture"])
    for i in np.flatnonzero(pb > 1e-6):
        ax.plot(-0.9, i, ">", color="tab:blue", clip_on=False)
    for j in np.flatnonzero(pr > 1e-6):
        ax.plot(j, -0.9, "v", color="tab:red", clip_on=False)
    fig.colorbar(im, ax=ax, shrink=0.8)
    fig.savefig(OUT / "payoff_heatmap.png", dpi=150, bbox_inches="tight")
    print(f"wrote {OUT / 'payoff_heatmap.png'}")


if __name__ == "__main__":
    main()
