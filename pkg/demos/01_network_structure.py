"""Walk through the command network: two headquarters trees, their swarms,
and the single adversarial edge between the commanders.

Builds the default 87-agent organization (1331 static links once the dense
intra-swarm and adversarial blocks are counted), prints a composition
summary, exports the edge list and roster, and draws the layered graph with
the dense blocks faded so the command structure stays readable.
Outputs land in demos/out/.
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
    LinkClass,
    Population,
    Role,
    build_force_network,
    default_branching,
)

OUT = Path(__file__).resolve().parent / "out"

POP_COLOR = {Population.BLUE: "tab:blue", Population.RED: "tab:red"}
# color, linewidth, style, alpha per class; dense blocks almost transparent
EDGE_STYLE = {
    LinkClass.INTRA_HQ_BLUE: ("tab:blue", 1.2, "-", 0.9),
    LinkClass.INTRA_HQ_RED: ("tab:red", 1.2, "-", 0.9),
    LinkClass.INTRA_SWARM_BLUE: ("tab:blue", 0.3, "-", 0.05),
    LinkClass.INTRA_SWARM_RED: ("tab:red", 0.3, "-", 0.05),
    LinkClass.CONTROLLER_TO_SWARM_BLUE: ("tab:blue", 0.5, "-", 0.5),
    LinkClass.CONTROLLER_TO_SWARM_RED: ("tab:red", 0.5, "-", 0.5),
    LinkClass.HQ_ADVERSARIAL: ("black", 0.4, "--", 0.15),
    LinkClass.SWARM_ADVERSARIAL: ("gray", 0.2, ":", 0.03),
}


def layered_positions(network, layout):
    """Assign drawing coordinates: HQ levels stacked top-down per force,
    swarm agents fanned out below their controller."""
    pos = np.zeros((len(network), 2))
    for pop, x_sign in ((Population.BLUE, -1.0), (Population.RED, 1.0)):
        hq_ids = np.sort(network.member_ids(pop, Echelon.HEADQUARTERS))
        size = len(hq_ids)
        branching = default_branching(size)
        local = 0
        for level, width in enumerate(branching):
            xs = np.linspace(-0.45, 0.45, width) if width > 1 else np.array([0.0])
            for k in range(width):
                pos[hq_ids[local]] = (x_sign * 1.2 + xs[k], 2.0 - level)
                local += 1
        swarm_ids = np.sort(network.member_ids(pop, Echelon.SWARM))
        angles = np.linspace(0, np.pi, len(swarm_ids))
        pos[swarm_ids, 0] = x_sign * 1.2 + 0.7 * np.cos(angles)
        pos[swarm_ids, 1] = (2.0 - len(branching)) - 0.6 - 0.5 * np.sin(angles)
    return pos


def main():
    OUT.mkdir(exist_ok=True)
    layout = ForceLayout()
    network = build_force_network(layout)

    print(f"agents: {len(network)}")
    for pop in Population:
        for ech in Echelon:
            n = len(network.member_ids(pop, ech))
            print(f"  {pop.name.lower():4s} {ech.name.lower():12s} {n}")
    by_class = Counter(network.link_classes.values())
    print(f"links: {len(network.link_classes)}")
    for cls, n in sorted(by_class.items(), key=lambda kv: kv[0].name):
        print(f"  {cls.name.lower():28s} {n}")
    roots = [a.id for a in network.agents if a.role is Role.COMMANDER]
    ctrl = [a.id for a in network.agents if a.role is Role.CONTROLLER]
    print(f"commanders: {roots}  controllers: {ctrl}")

    network.write_edge_list(OUT / "network_edges.csv")
    network.write_roster(OUT / "network_roster.csv")

    pos = layered_positions(network, layout)
    fig, ax = plt.subplots(figsize=(9, 6))
    for (i, j), cls in network.link_classes.items():
        color, lw, ls, alpha = EDGE_STYLE.get(cls, ("gray", 0.3, ":", 0.2))
        ax.plot(*zip(pos[i], pos[j]), color=color, lw=lw, ls=ls, alpha=alpha,
                zorder=1)
    for agent in network.agents:
        marker = {"commander": "s", "controller": "D"}.get(agent.role.value, "o")
        size = 60 if agent.echelon is Echelon.HEADQUARTERS else 18
        ax.scatter(*pos[agent.id], c=POP_COLOR[agent.population], marker=marker,
                   s=size, zorder=2, edgecolors="k", linewidths=0.3)
    ax.set_title("Command network: HQ trees, swarms, adversarial edge")
    ax.set_axis_off()
    fig.savefig(OUT / "network_structure.png", dpi=150, bbox_inches="tight")
    print(f"wrote {OUT / 'network_structure.png'}")


if __name__ == "__main__":
    main()
