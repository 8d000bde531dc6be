"""Static two-force command-and-control network.

Each force (blue and red) fields a hierarchical headquarters tree of human
decision makers and a flat swarm of autonomous agents.  The graph wires:

* each headquarters internally as a tree (commander at the root),
* the two headquarters against each other, complete-bipartite across their
  lowest echelons,
* one designated lowest-echelon agent per force (the swarm controller) in a
  star to every swarm agent of its own force,
* each swarm internally all-to-all,
* the two swarms against each other, complete-bipartite.

The network is built once, is immutable afterwards, and carries the static
degrees used by the coupling-strength scaling in the phase dynamics.
"""
from __future__ import annotations

import csv
import dataclasses
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

import numpy as np

__all__ = [
    "Population",
    "Echelon",
    "Role",
    "LinkClass",
    "AgentSpec",
    "ForceLayout",
    "HqTree",
    "C2Network",
    "default_branching",
    "build_headquarters",
    "build_force_network",
    "link_class",
]


class Population(Enum):
    BLUE = "blue"
    RED = "red"

    @property
    def opponent(self) -> "Population":
        return Population.RED if self is Population.BLUE else Population.BLUE


class Echelon(Enum):
    HEADQUARTERS = "headquarters"
    SWARM = "swarm"


class Role(Enum):
    COMMANDER = "commander"
    STAFF = "staff"
    CONTROLLER = "controller"
    SWARM_AGENT = "swarm_agent"


class LinkClass(Enum):
    """Symmetric label carried by every edge; selects the coupling strength."""

    INTRA_HQ_BLUE = "intra_hq_blue"
    INTRA_HQ_RED = "intra_hq_red"
    INTRA_SWARM_BLUE = "intra_swarm_blue"
    INTRA_SWARM_RED = "intra_swarm_red"
    HQ_ADVERSARIAL = "hq_adversarial"
    SWARM_ADVERSARIAL = "swarm_adversarial"
    CONTROLLER_TO_SWARM_BLUE = "controller_to_swarm_blue"
    CONTROLLER_TO_SWARM_RED = "controller_to_swarm_red"


ADVERSARIAL_CLASSES = frozenset(
    {LinkClass.HQ_ADVERSARIAL, LinkClass.SWARM_ADVERSARIAL}
)


@dataclass(frozen=True)
class AgentSpec:
    id: int
    population: Population
    echelon: Echelon
    role: Role
    natural_frequency: float


@dataclass(frozen=True)
class ForceLayout:
    """Sizes, tree profiles and frequency distributions for both forces.

    ``hq_branching_*`` is the number of agents per tree level, root first
    (``None`` picks :func:`default_branching`).  Natural decision frequencies
    are drawn uniformly from the per-echelon ranges.
    """

    hq_size_blue: int = 21
    hq_size_red: int = 21
    swarm_size_blue: int = 20
    swarm_size_red: int = 25
    hq_branching_blue: tuple[int, ...] | None = None
    hq_branching_red: tuple[int, ...] | None = None
    hq_omega_range: tuple[float, float] = (0.25, 0.5)
    swarm_omega_range: tuple[float, float] = (1.0, 2.0)
    seed: int = 0

    def validate(self) -> None:
        for name in ("hq_size_blue", "hq_size_red", "swarm_size_blue", "swarm_size_red"):
            if getattr(self, name) < 1:
                raise ValueError(f"layout.{name} must be >= 1")
        for name in ("hq_omega_range", "swarm_omega_range"):
            lo, hi = getattr(self, name)
            if not (0 <= lo <= hi):
                raise ValueError(f"layout.{name} must satisfy 0 <= low <= high")
        # Branching profiles are validated against their size at build time.

    @property
    def total_agents(self) -> int:
        return (
            self.hq_size_blue
            + self.hq_size_red
            + self.swarm_size_blue
            + self.swarm_size_red
        )

    def branching(self, population: Population) -> tuple[int, ...]:
        size = self.hq_size_blue if population is Population.BLUE else self.hq_size_red
        profile = (
            self.hq_branching_blue
            if population is Population.BLUE
            else self.hq_branching_red
        )
        return tuple(profile) if profile is not None else default_branching(size)

    def omega_range(self, echelon: Echelon) -> tuple[float, float]:
        if echelon is Echelon.HEADQUARTERS:
            return self.hq_omega_range
        return self.swarm_omega_range


def default_branching(size: int) -> tuple[int, ...]:
    """Default headquarters tree profile for a given size.

    The canonical 21-agent headquarters is a three-level (1, 4, 16) tree;
    other sizes fall back to a root-plus-leaves star.
    """
    if size < 1:
        raise ValueError("headquarters size must be >= 1")
    if size == 21:
        return (1, 4, 16)
    if size == 1:
        return (1,)
    return (1, size - 1)


@dataclass(frozen=True)
class HqTree:
    """One headquarters hierarchy in local indices [0, size).

    ``levels`` lists the member indices per level, root first.  Exactly one
    lowest-echelon agent is the swarm controller; in the degenerate one-agent
    tree the same agent is commander and controller at once.
    """

    levels: tuple[tuple[int, ...], ...]
    edges: tuple[tuple[int, int], ...]
    roles: tuple[Role, ...]
    commander: int
    controller: int

    @property
    def size(self) -> int:
        return len(self.roles)

    @property
    def lowest_echelon(self) -> tuple[int, ...]:
        return self.levels[-1]


def build_headquarters(
    population: Population, size: int, branching_profile: tuple[int, ...]
) -> HqTree:
    """Build one headquarters tree with roles assigned.

    The profile gives the node count per level, root first; each node attaches
    to a parent in the previous level, children spread evenly over parents.
    The first lowest-level agent is designated swarm controller.
    """
    profile = tuple(int(n) for n in branching_profile)
    if size < 1:
        raise ValueError(f"{population.value} headquarters size must be >= 1")
    if not profile or any(n < 1 for n in profile):
        raise ValueError("branching profile levels must all be >= 1")
    if profile[0] != 1:
        raise ValueError("branching profile must start with a single root")
    if sum(profile) != size:
        raise ValueError(
            f"branching profile {profile} sums to {sum(profile)}, expected {size}"
        )

    levels: list[tuple[int, ...]] = []
    next_id = 0
    for count in profile:
        levels.append(tuple(range(next_id, next_id + count)))
        next_id += count

    edges: list[tuple[int, int]] = []
    for parents, children in zip(levels, levels[1:]):
        for k, child in enumerate(children):
            parent = parents[k * len(parents) // len(children)]
            edges.append((parent, child))

    controller = levels[-1][0]
    roles = [Role.STAFF] * size
    roles[0] = Role.COMMANDER
    roles[controller] = Role.CONTROLLER  # wins over commander in the 1-agent tree
    return HqTree(
        levels=tuple(levels),
        edges=tuple(edges),
        roles=tuple(roles),
        commander=0,
        controller=controller,
    )


@dataclass(frozen=True)
class C2Network:
    """Agent roster plus the static weighted interaction graph.

    ``adjacency`` is symmetric with zero diagonal; ``link_classes`` maps each
    present edge ``(i, j)`` with ``i < j`` to its class; ``degrees`` counts
    incident edges in the static graph (attenuation never changes them).
    """

    agents: tuple[AgentSpec, ...]
    adjacency: np.ndarray
    link_classes: dict[tuple[int, int], LinkClass]
    degrees: np.ndarray

    def __len__(self) -> int:
        return len(self.agents)

    @property
    def omegas(self) -> np.ndarray:
        return np.array([a.natural_frequency for a in self.agents])

    @property
    def swarm_ids(self) -> np.ndarray:
        return np.array(
            [a.id for a in self.agents if a.echelon is Echelon.SWARM], dtype=int
        )

    @property
    def swarm_populations(self) -> tuple[Population, ...]:
        return tuple(a.population for a in self.agents if a.echelon is Echelon.SWARM)

    def member_ids(self, population: Population, echelon: Echelon) -> np.ndarray:
        return np.array(
            [
                a.id
                for a in self.agents
                if a.population is population and a.echelon is echelon
            ],
            dtype=int,
        )

    def controller_id(self, population: Population) -> int:
        for a in self.agents:
            if a.population is population and a.role is Role.CONTROLLER:
                return a.id
        raise ValueError(f"no controller found for {population.value}")

    def link_class(self, i: int, j: int) -> LinkClass | None:
        n = len(self.agents)
        if not (0 <= i < n and 0 <= j < n):
            raise IndexError(f"agent id out of range: ({i}, {j})")
        if i == j:
            raise ValueError("no self links")
        return self.link_classes.get((min(i, j), max(i, j)))

    def with_frequencies(self, omegas: np.ndarray) -> "C2Network":
        """Copy of the network with replaced natural frequencies."""
        if len(omegas) != len(self.agents):
            raise ValueError("frequency vector length does not match agent count")
        agents = tuple(
            dataclasses.replace(a, natural_frequency=float(w))
            for a, w in zip(self.agents, omegas)
        )
        return C2Network(agents, self.adjacency, self.link_classes, self.degrees)

    def write_edge_list(self, path: str | Path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["i", "j", "weight", "class"])
            for (i, j), cls in sorted(self.link_classes.items()):
                writer.writerow([i, j, repr(float(self.adjacency[i, j])), cls.value])

    def write_roster(self, path: str | Path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["id", "population", "echelon", "role", "omega"])
            for a in self.agents:
                writer.writerow(
                    [
                        a.id,
                        a.population.value,
                        a.echelon.value,
                        a.role.value,
                        repr(a.natural_frequency),
                    ]
                )


def link_class(network: C2Network, i: int, j: int) -> LinkClass | None:
    """Class of edge (i, j), or ``None`` when the agents are not linked."""
    return network.link_class(i, j)


def build_force_network(layout: ForceLayout) -> C2Network:
    """Assemble the full two-force graph from a layout.

    Agent ids run blue HQ, red HQ, blue swarm, red swarm, in tree/level order.
    Identical layouts (including seed) produce identical networks.
    """
    layout.validate()
    trees = {
        Population.BLUE: build_headquarters(
            Population.BLUE, layout.hq_size_blue, layout.branching(Population.BLUE)
        ),
        Population.RED: build_headquarters(
            Population.RED, layout.hq_size_red, layout.branching(Population.RED)
        ),
    }

    hq_offset = {
        Population.BLUE: 0,
        Population.RED: layout.hq_size_blue,
    }
    swarm_offset = {
        Population.BLUE: layout.hq_size_blue + layout.hq_size_red,
        Population.RED: layout.hq_size_blue + layout.hq_size_red + layout.swarm_size_blue,
    }
    swarm_size = {
        Population.BLUE: layout.swarm_size_blue,
        Population.RED: layout.swarm_size_red,
    }
    total = layout.total_agents

    entries: list[tuple[Population, Echelon, Role]] = []
    for pop in (Population.BLUE, Population.RED):
        for role in trees[pop].roles:
            entries.append((pop, Echelon.HEADQUARTERS, role))
    for pop in (Population.BLUE, Population.RED):
        entries.extend(
            (pop, Echelon.SWARM, Role.SWARM_AGENT) for _ in range(swarm_size[pop])
        )

    adjacency = np.zeros((total, total))
    classes: dict[tuple[int, int], LinkClass] = {}

    def add_edge(i: int, j: int, cls: LinkClass) -> None:
        a, b = min(i, j), max(i, j)
        adjacency[a, b] = adjacency[b, a] = 1.0
        classes[(a, b)] = cls

    intra_hq = {
        Population.BLUE: LinkClass.INTRA_HQ_BLUE,
        Population.RED: LinkClass.INTRA_HQ_RED,
    }
    intra_swarm = {
        Population.BLUE: LinkClass.INTRA_SWARM_BLUE,
        Population.RED: LinkClass.INTRA_SWARM_RED,
    }
    ctrl_class = {
        Population.BLUE: LinkClass.CONTROLLER_TO_SWARM_BLUE,
        Population.RED: LinkClass.CONTROLLER_TO_SWARM_RED,
    }

    for pop in (Population.BLUE, Population.RED):
        off = hq_offset[pop]
        for a, b in trees[pop].edges:
            add_edge(off + a, off + b, intra_hq[pop])

    # Headquarters contest each other only across their lowest echelons.
    blue_low = [hq_offset[Population.BLUE] + k for k in trees[Population.BLUE].lowest_echelon]
    red_low = [hq_offset[Population.RED] + k for k in trees[Population.RED].lowest_echelon]
    for i in blue_low:
        for j in red_low:
            add_edge(i, j, LinkClass.HQ_ADVERSARIAL)

    for pop in (Population.BLUE, Population.RED):
        ctrl = hq_offset[pop] + trees[pop].controller
        members = range(swarm_offset[pop], swarm_offset[pop] + swarm_size[pop])
        for m in members:
            add_edge(ctrl, m, ctrl_class[pop])
        for a in members:
            for b in members:
                if a < b:
                    add_edge(a, b, intra_swarm[pop])

    for a in range(swarm_offset[Population.BLUE], swarm_offset[Population.BLUE] + swarm_size[Population.BLUE]):
        for b in range(swarm_offset[Population.RED], swarm_offset[Population.RED] + swarm_size[Population.RED]):
            add_edge(a, b, LinkClass.SWARM_ADVERSARIAL)

    degrees = (adjacency > 0).sum(axis=1).astype(int)

    rng = np.random.default_rng(layout.seed)
    draws = rng.uniform(size=total)
    agents = []
    for idx, (pop, echelon, role) in enumerate(entries):
        lo, hi = layout.omega_range(echelon)
        agents.append(
            AgentSpec(
                id=idx,
                population=pop,
                echelon=echelon,
                role=role,
                natural_frequency=float(lo + draws[idx] * (hi - lo)),
            )
        )

    return C2Network(
        agents=tuple(agents),
        adjacency=adjacency,
        link_classes=classes,
        degrees=degrees,
    )
