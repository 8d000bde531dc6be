"""Command-line entry point: simulate / sweep / analyze / network.

All subcommands accept --config (YAML run config), --seed and --out; the
output directory resolves as --out, then the C2SWARM_OUT environment
variable, then the config's output_dir.  Failures print a diagnostic and
exit nonzero; nothing is written on argument errors.
"""
from __future__ import annotations

import argparse
import os
import re
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from .config import ConfigError, RunConfig, config_hash, load_config
from .dynamics import CoupledDynamics, FrustrationAssignment
from .game import ActionSet, play_game
from .harness import (
    _write_json,
    _write_scores_csv,
    read_payoff_csv,
    run_sweep,
    score_timeseries,
    write_analysis_files,
)
from .integrate import IntegrationError
from .network import build_force_network

__all__ = ["main", "parse_frustration", "parse_strategy_arg"]

ENV_OUT = "C2SWARM_OUT"

_PI_FORM = re.compile(r"^\s*(\d+(?:\.\d*)?)?\s*\*?\s*pi\s*(?:/\s*(\d+(?:\.\d*)?))?\s*$")


def parse_frustration(token: str) -> float:
    """One frustration value: a float, or 'pi', '2pi/3', 'pi/3' style."""
    match = _PI_FORM.match(token.lower())
    if match:
        coef = float(match.group(1)) if match.group(1) else 1.0
        div = float(match.group(2)) if match.group(2) else 1.0
        return coef * np.pi / div
    try:
        return float(token)
    except ValueError:
        raise ValueError(f"cannot parse frustration {token!r}") from None


def parse_strategy_arg(arg: str, turns: int) -> tuple[float, ...]:
    """Comma-separated per-turn frustrations; one value repeats for all turns."""
    values = [parse_frustration(tok) for tok in arg.split(",") if tok.strip()]
    if not values:
        raise ValueError("empty strategy")
    if len(values) == 1:
        values = values * turns
    if len(values) != turns:
        raise ValueError(f"strategy has {len(values)} entries, game has {turns} turns")
    return tuple(values)


def _load(args) -> RunConfig:
    if args.config:
        return load_config(args.config)
    return RunConfig()


def _resolve_out(args, config: RunConfig) -> Path:
    if args.out:
        out = Path(args.out)
    elif os.environ.get(ENV_OUT):
        out = Path(os.environ[ENV_OUT])
    else:
        out = Path(config.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _dump_forces(result, config: RunConfig, path: Path) -> None:
    """Per-sample force decomposition along a played trajectory."""
    traj = result.trajectory
    network = build_force_network(config.game.layout)
    boundaries = result.turn_boundaries
    dyn_per_turn = []
    for k in range(config.game.turns):
        frustration = FrustrationAssignment(
            phi_blue=result.strategy_blue[k], phi_red=result.strategy_red[k]
        )
        dyn_per_turn.append(
            CoupledDynamics(network, config.game.params, frustration)
        )
    # The networks above carry layout-seeded frequencies; forces do not read
    # omega, so the game-seeded redraw is irrelevant here.
    lines = ["t,agent_id,f_att_x,f_att_y,f_rep_x,f_rep_y,f_field_x,f_field_y"]
    for k, t in enumerate(traj.times):
        turn = min(
            max(int(np.searchsorted(boundaries, t, side="right")) - 1, 0),
            config.game.turns - 1,
        )
        f_att, f_rep, f_field = dyn_per_turn[turn].forces(
            traj.phases[k], traj.positions[k]
        )
        for row, agent_id in enumerate(traj.swarm_ids):
            lines.append(
                f"{repr(float(t))},{agent_id},"
                f"{repr(float(f_att[row, 0]))},{repr(float(f_att[row, 1]))},"
                f"{repr(float(f_rep[row, 0]))},{repr(float(f_rep[row, 1]))},"
                f"{repr(float(f_field[row, 0]))},{repr(float(f_field[row, 1]))}"
            )
    path.write_text("\n".join(lines) + "\n")


def _cmd_simulate(args) -> int:
    config = _load(args)
    out = _resolve_out(args, config)
    game = config.game
    if args.seed is not None:
        game = replace(game, seed=args.seed)
    turns = game.turns
    blue = parse_strategy_arg(args.blue, turns)
    red = parse_strategy_arg(args.red, turns)

    result = play_game(game, blue, red, keep_trajectory=True)
    traj = result.trajectory

    traj_path = out / "trajectory.csv"
    traj.write_csv(traj_path)
    series = score_timeseries(traj, game.hill_radius, result.turn_boundaries)
    scores_path = out / "scores.csv"
    _write_scores_csv(series, scores_path)
    _write_json(
        out / "result.json",
        {
            "seed": result.seed,
            "strategy_blue": [float(v) for v in result.strategy_blue],
            "strategy_red": [float(v) for v in result.strategy_red],
            "scores_blue": [float(v) for v in result.scores_blue],
            "scores_red": [float(v) for v in result.scores_red],
            "utility_blue": result.utility_blue,
            "utility_red": result.utility_red,
            "turn_boundaries": [float(b) for b in result.turn_boundaries],
            "config_hash": config_hash(replace(config, game=game)),
        },
    )
    written = [traj_path, scores_path, out / "result.json"]
    if args.dump_forces:
        forces_path = out / "forces.csv"
        _dump_forces(result, replace(config, game=game), forces_path)
        written.append(forces_path)
    for p in written:
        print(f"wrote {p}")
    print(
        f"utility_blue={result.utility_blue:.6f} "
        f"scores_blue={np.round(result.scores_blue, 4).tolist()} "
        f"scores_red={np.round(result.scores_red, 4).tolist()}"
    )
    return 0


def _cmd_sweep(args) -> int:
    config = _load(args)
    out = _resolve_out(args, config)
    seeds = (args.seed,) if args.seed is not None else config.seeds
    workers = args.threads if args.threads else config.workers
    artifacts = run_sweep(
        config.game,
        action_set=config.actions,
        seeds=seeds,
        out_dir=out,
        workers=workers,
        densities=not args.no_densities,
    )
    for p in sorted(artifacts.paths.values()):
        print(f"wrote {p}")
    matrix = artifacts.matrix
    print(f"cells={matrix.values.size} failures={len(matrix.failures)}")
    if artifacts.maximin is not None:
        print(f"game_value={artifacts.maximin.value:.6f}")
    return 0 if matrix.complete else 1


def _cmd_analyze(args) -> int:
    config = _load(args)
    out = _resolve_out(args, config)
    matrix = read_payoff_csv(Path(args.matrix))
    paths = write_analysis_files(matrix, out)
    for p in sorted(paths.values()):
        print(f"wrote {p}")
    return 0


def _cmd_network(args) -> int:
    config = _load(args)
    out = _resolve_out(args, config)
    layout = config.game.layout
    if args.seed is not None:
        layout = replace(layout, seed=args.seed)
    network = build_force_network(layout)
    edges_path = out / "network_edges.csv"
    roster_path = out / "network_roster.csv"
    network.write_edge_list(edges_path)
    network.write_roster(roster_path)
    print(f"wrote {edges_path}")
    print(f"wrote {roster_path}")
    print(f"agents={len(network)} links={len(network.link_classes)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="c2swarm",
        description="Two-force swarm contest: simulate games, sweep strategies, "
        "analyze payoff matrices, export the command network.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="YAML run config (defaults if omitted)")
        p.add_argument("--seed", type=int, help="override the configured seed")
        p.add_argument("--out", help=f"output directory (or ${ENV_OUT})")

    p_sim = sub.add_parser("simulate", help="play one game, write trajectory and scores")
    common(p_sim)
    p_sim.add_argument("--blue", default="0", help="per-turn frustrations, e.g. 'pi/3,pi/3'")
    p_sim.add_argument("--red", default="0", help="per-turn frustrations for Red")
    p_sim.add_argument("--dump-forces", action="store_true",
                       help="also write the per-sample force decomposition")
    p_sim.set_defaults(func=_cmd_simulate)

    p_sweep = sub.add_parser("sweep", help="enumerate the payoff matrix and analyses")
    common(p_sweep)
    p_sweep.add_argument("--threads", type=int, default=0,
                         help="worker processes for cell evaluation")
    p_sweep.add_argument("--no-densities", action="store_true",
                         help="skip the per-frustration density/score exports")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_an = sub.add_parser("analyze", help="dominance/maximin/utility from a matrix file")
    common(p_an)
    p_an.add_argument("--matrix", required=True, help="payoff_matrix.csv from a sweep")
    p_an.set_defaults(func=_cmd_analyze)

    p_net = sub.add_parser("network", help="export the constructed command network")
    common(p_net)
    p_net.set_defaults(func=_cmd_network)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, IntegrationError, ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
