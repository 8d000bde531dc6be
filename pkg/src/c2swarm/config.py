"""Human-editable run configuration: one YAML schema for everything.

A config file fully describes a run: force layout, model parameters,
integrator tolerances, game shape, action set, seed list and output
directory.  Loading is strict: the schema is versioned, unknown keys are
rejected at any depth (typo safety), and validation failures name the
offending field.  An empty file means "all defaults".  Save/load round-trips
are lossless, so a written config is an exact reproduction recipe.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

import yaml

from .dynamics import DEFAULT_SIGMA, ModelParams
from .game import ActionSet, GameConfig
from .harness import _canonical
from .integrate import IntegratorConfig
from .network import ForceLayout, LinkClass

__all__ = [
    "SCHEMA_VERSION",
    "ConfigError",
    "RunConfig",
    "load_config",
    "save_config",
    "config_to_dict",
    "config_from_dict",
    "config_hash",
]

SCHEMA_VERSION = 1


class ConfigError(ValueError):
    """Config file problem; the message names the offending key."""


@dataclass(frozen=True)
class RunConfig:
    """Complete serializable record of one run."""

    game: GameConfig = field(default_factory=GameConfig)
    actions: ActionSet = field(default_factory=ActionSet)
    seeds: tuple[int, ...] = (0,)
    output_dir: str = "out"
    workers: int = 1

    def validate(self) -> None:
        try:
            self.game.validate()
        except ValueError as err:
            raise ConfigError(str(err)) from err
        if not self.seeds:
            raise ConfigError("seeds must not be empty")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")


def _require_mapping(value, path: str) -> dict:
    if value is None:
        return {}
    if not isinstance(value, dict):
        raise ConfigError(f"{path} must be a mapping, got {type(value).__name__}")
    return value


def _check_keys(data: dict, allowed: set[str], path: str) -> None:
    unknown = sorted(set(data) - allowed)
    if unknown:
        where = f"{path}." if path else ""
        raise ConfigError(
            f"unknown key '{where}{unknown[0]}' (valid: {', '.join(sorted(allowed))})"
        )


def _get_float(data: dict, key: str, default: float, path: str) -> float:
    value = data.get(key, default)
    if value is None or isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{path}.{key} must be a number")
    return float(value)


def _get_int(data: dict, key: str, default: int, path: str) -> int:
    value = data.get(key, default)
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{path}.{key} must be an integer")
    return int(value)


def _get_pair(data: dict, key: str, default: tuple, path: str) -> tuple[float, float]:
    value = data.get(key)
    if value is None:
        return tuple(float(v) for v in default)
    ok = (
        isinstance(value, (list, tuple))
        and len(value) == 2
        and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value)
    )
    if not ok:
        raise ConfigError(f"{path}.{key} must be a pair of numbers")
    return (float(value[0]), float(value[1]))


_LAYOUT_KEYS = {
    "hq_size_blue", "hq_size_red", "swarm_size_blue", "swarm_size_red",
    "hq_branching_blue", "hq_branching_red",
    "hq_omega_range", "swarm_omega_range", "seed",
}
_PARAM_KEYS = {
    "c1", "c2", "c3", "rho", "alpha", "nu", "hill_radius",
    "beta1", "beta2_hq", "beta2_swarm", "pair_epsilon", "sigma",
}
_INTEGRATOR_KEYS = {"rtol", "atol", "dt_out", "max_step", "first_step"}
_GAME_KEYS = {"t_final", "turns", "seed", "spawn_radius", "spawn_blue", "spawn_red"}
_TOP_KEYS = {
    "schema_version", "layout", "params", "integrator", "game",
    "actions", "seeds", "output_dir", "workers",
}


def _parse_branching(data: dict, key: str, path: str) -> tuple[int, ...] | None:
    value = data.get(key)
    if value is None:
        return None
    if not isinstance(value, (list, tuple)) or not value:
        raise ConfigError(f"{path}.{key} must be a nonempty list of integers")
    out = []
    for v in value:
        if isinstance(v, bool) or not isinstance(v, int):
            raise ConfigError(f"{path}.{key} must contain only integers")
        out.append(int(v))
    return tuple(out)


def _parse_layout(data: dict) -> ForceLayout:
    data = _require_mapping(data, "layout")
    _check_keys(data, _LAYOUT_KEYS, "layout")
    d = ForceLayout()
    return ForceLayout(
        hq_size_blue=_get_int(data, "hq_size_blue", d.hq_size_blue, "layout"),
        hq_size_red=_get_int(data, "hq_size_red", d.hq_size_red, "layout"),
        swarm_size_blue=_get_int(data, "swarm_size_blue", d.swarm_size_blue, "layout"),
        swarm_size_red=_get_int(data, "swarm_size_red", d.swarm_size_red, "layout"),
        hq_branching_blue=_parse_branching(data, "hq_branching_blue", "layout"),
        hq_branching_red=_parse_branching(data, "hq_branching_red", "layout"),
        hq_omega_range=_get_pair(data, "hq_omega_range", d.hq_omega_range, "layout"),
        swarm_omega_range=_get_pair(
            data, "swarm_omega_range", d.swarm_omega_range, "layout"
        ),
        seed=_get_int(data, "seed", d.seed, "layout"),
    )


def _parse_sigma(data) -> dict[LinkClass, float]:
    sigma = dict(DEFAULT_SIGMA)
    if data is None:
        return sigma
    if not isinstance(data, dict):
        raise ConfigError("params.sigma must be a mapping of link class to gain")
    valid = {lc.value: lc for lc in LinkClass}
    for key, value in data.items():
        if key not in valid:
            raise ConfigError(
                f"unknown key 'params.sigma.{key}' (valid: {', '.join(sorted(valid))})"
            )
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"params.sigma.{key} must be a number")
        sigma[valid[key]] = float(value)
    return sigma


def _parse_params(data: dict) -> ModelParams:
    data = _require_mapping(data, "params")
    _check_keys(data, _PARAM_KEYS, "params")
    d = ModelParams()
    return ModelParams(
        sigma=_parse_sigma(data.get("sigma")),
        c1=_get_float(data, "c1", d.c1, "params"),
        c2=_get_float(data, "c2", d.c2, "params"),
        c3=_get_float(data, "c3", d.c3, "params"),
        rho=_get_float(data, "rho", d.rho, "params"),
        alpha=_get_float(data, "alpha", d.alpha, "params"),
        nu=_get_float(data, "nu", d.nu, "params"),
        hill_radius=_get_float(data, "hill_radius", d.hill_radius, "params"),
        beta1=_get_float(data, "beta1", d.beta1, "params"),
        beta2_hq=_get_float(data, "beta2_hq", d.beta2_hq, "params"),
        beta2_swarm=_get_float(data, "beta2_swarm", d.beta2_swarm, "params"),
        pair_epsilon=_get_float(data, "pair_epsilon", d.pair_epsilon, "params"),
    )


def _parse_integrator(data: dict) -> IntegratorConfig:
    data = _require_mapping(data, "integrator")
    _check_keys(data, _INTEGRATOR_KEYS, "integrator")
    d = IntegratorConfig()
    max_step = data.get("max_step")
    if max_step is not None and (
        isinstance(max_step, bool) or not isinstance(max_step, (int, float))
    ):
        raise ConfigError("integrator.max_step must be a number or null")
    first_step = data.get("first_step")
    if first_step is not None and (
        isinstance(first_step, bool) or not isinstance(first_step, (int, float))
    ):
        raise ConfigError("integrator.first_step must be a number or null")
    return IntegratorConfig(
        rtol=_get_float(data, "rtol", d.rtol, "integrator"),
        atol=_get_float(data, "atol", d.atol, "integrator"),
        dt_out=_get_float(data, "dt_out", d.dt_out, "integrator"),
        max_step=float("inf") if max_step is None else float(max_step),
        first_step=None if first_step is None else float(first_step),
    )


def _parse_game(data: dict, layout, params, integrator) -> GameConfig:
    data = _require_mapping(data, "game")
    _check_keys(data, _GAME_KEYS, "game")
    d = GameConfig()
    return GameConfig(
        layout=layout,
        params=params,
        integrator=integrator,
        t_final=_get_float(data, "t_final", d.t_final, "game"),
        turns=_get_int(data, "turns", d.turns, "game"),
        seed=_get_int(data, "seed", d.seed, "game"),
        spawn_radius=_get_float(data, "spawn_radius", d.spawn_radius, "game"),
        spawn_blue=_get_pair(data, "spawn_blue", d.spawn_blue, "game"),
        spawn_red=_get_pair(data, "spawn_red", d.spawn_red, "game"),
    )


def config_from_dict(data: dict | None) -> RunConfig:
    """Build and validate a RunConfig from parsed file content."""
    data = _require_mapping(data, "<top level>")
    _check_keys(data, _TOP_KEYS, "")

    version = data.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise ConfigError(
            f"schema_version {version!r} not supported (this build reads {SCHEMA_VERSION})"
        )

    layout = _parse_layout(data.get("layout"))
    params = _parse_params(data.get("params"))
    integrator = _parse_integrator(data.get("integrator"))
    game = _parse_game(data.get("game"), layout, params, integrator)

    actions_raw = data.get("actions")
    if actions_raw is None:
        actions = ActionSet()
    else:
        if not isinstance(actions_raw, (list, tuple)) or not actions_raw:
            raise ConfigError("actions must be a nonempty list of numbers")
        for v in actions_raw:
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise ConfigError("actions must contain only numbers")
        try:
            actions = ActionSet(tuple(float(v) for v in actions_raw))
        except ValueError as err:
            raise ConfigError(f"actions: {err}") from err

    seeds_raw = data.get("seeds", [0])
    if not isinstance(seeds_raw, (list, tuple)) or not seeds_raw:
        raise ConfigError("seeds must be a nonempty list of integers")
    seeds = []
    for v in seeds_raw:
        if isinstance(v, bool) or not isinstance(v, int):
            raise ConfigError("seeds must contain only integers")
        seeds.append(int(v))

    output_dir = data.get("output_dir", "out")
    if not isinstance(output_dir, str) or not output_dir:
        raise ConfigError("output_dir must be a nonempty string")

    workers = data.get("workers", 1)
    if isinstance(workers, bool) or not isinstance(workers, int):
        raise ConfigError("workers must be an integer")

    config = RunConfig(
        game=game,
        actions=actions,
        seeds=tuple(seeds),
        output_dir=output_dir,
        workers=workers,
    )
    config.validate()
    return config


def config_to_dict(config: RunConfig) -> dict:
    """Plain-type mirror of a RunConfig, suitable for YAML."""
    game = config.game
    layout = game.layout
    params = game.params
    integ = game.integrator
    return {
        "schema_version": SCHEMA_VERSION,
        "layout": {
            "hq_size_blue": layout.hq_size_blue,
            "hq_size_red": layout.hq_size_red,
            "swarm_size_blue": layout.swarm_size_blue,
            "swarm_size_red": layout.swarm_size_red,
            "hq_branching_blue": (
                None if layout.hq_branching_blue is None
                else list(layout.hq_branching_blue)
            ),
            "hq_branching_red": (
                None if layout.hq_branching_red is None
                else list(layout.hq_branching_red)
            ),
            "hq_omega_range": list(layout.hq_omega_range),
            "swarm_omega_range": list(layout.swarm_omega_range),
            "seed": layout.seed,
        },
        "params": {
            "sigma": {lc.value: params.sigma[lc] for lc in LinkClass},
            "c1": params.c1,
            "c2": params.c2,
            "c3": params.c3,
            "rho": params.rho,
            "alpha": params.alpha,
            "nu": params.nu,
            "hill_radius": params.hill_radius,
            "beta1": params.beta1,
            "beta2_hq": params.beta2_hq,
            "beta2_swarm": params.beta2_swarm,
            "pair_epsilon": params.pair_epsilon,
        },
        "integrator": {
            "rtol": integ.rtol,
            "atol": integ.atol,
            "dt_out": integ.dt_out,
            "max_step": None if integ.max_step == float("inf") else integ.max_step,
            "first_step": integ.first_step,
        },
        "game": {
            "t_final": game.t_final,
            "turns": game.turns,
            "seed": game.seed,
            "spawn_radius": game.spawn_radius,
            "spawn_blue": list(game.spawn_blue),
            "spawn_red": list(game.spawn_red),
        },
        "actions": [float(v) for v in config.actions.values],
        "seeds": list(config.seeds),
        "output_dir": config.output_dir,
        "workers": config.workers,
    }


def load_config(path: Path | str) -> RunConfig:
    """Parse, schema-check and validate a YAML config file."""
    text = Path(path).read_text()
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as err:
        raise ConfigError(f"{path}: parse error: {err}") from err
    try:
        return config_from_dict(data)
    except ConfigError as err:
        raise ConfigError(f"{path}: {err}") from err


def save_config(config: RunConfig, path: Path | str) -> None:
    config.validate()
    Path(path).write_text(
        yaml.safe_dump(config_to_dict(config), sort_keys=True, default_flow_style=False)
    )


def config_hash(config: RunConfig) -> str:
    """Stable digest of the full config; equal configs hash equal."""
    blob = json.dumps(_canonical(config_to_dict(config)),
                      sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()
