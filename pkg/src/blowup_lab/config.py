"""Strict TOML experiment configuration.

Tables: [model], [domain], [initial], [time], [policy], [output];
top-level keys: id, expect, monitors, checks. Unknown keys are rejected
with the offending table and key named.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .grids import Grid1D
from .models import ModelSpec
from .operators import BoundaryCondition


class ConfigError(ValueError):
    pass


_BC_NAMES = {
    "periodic": BoundaryCondition.Periodic,
    "dirichlet": BoundaryCondition.Dirichlet,
    "neumann": BoundaryCondition.Neumann,
    "neumann_ks": BoundaryCondition.NeumannKS,
    "pokhozhaev_ks": BoundaryCondition.PokhozhaevKS,
}

_PROFILES = {"sin_mode", "cos_mode", "scaled_phi1", "log_profile", "steep_tanh"}
_MONITORS = {"mass", "l2", "sup", "grad_sup", "ks_energy",
             "analyticity_radius", "weighted_phi1"}
_CHECKS = {
    "max_principle", "max_principle_violated", "grad_max_principle",
    "riccati_bound", "ks_mass", "vhj_z", "titi_energy",
    "mass_increasing", "z_nondecreasing", "cole_hopf_error",
    "analyticity_radius_positive",
}

_SCHEMAS = {
    "model": {"family", "bc", "nu", "p", "kappa", "alpha", "dealias"},
    "domain": {"a", "b", "n", "layout"},
    "initial": {"profile", "k", "amplitude", "c", "width", "z0_over_K"},
    "time": {"t_end", "dt", "dt_min", "dt_max", "rtol", "atol", "adaptive", "safety"},
    "policy": {"sup_threshold", "functional_threshold", "watch"},
    "output": {"out_dir"},
}
_TOP_KEYS = {"id", "expect", "monitors", "checks"} | set(_SCHEMAS)


@dataclass
class ExperimentConfig:
    id: str
    model: ModelSpec
    domain: Grid1D
    initial: dict
    time: dict
    policy: dict
    monitors: list
    checks: list
    expect: str
    out_dir: str = "out"
    description: str = ""


def _reject_unknown(table: str, data: dict, allowed: set):
    for key in data:
        if key not in allowed:
            raise ConfigError(f"unknown key {key!r} in [{table}]")


def _require(data: dict, table: str, key: str):
    if key not in data:
        raise ConfigError(f"missing required key {key!r} in [{table}]")
    return data[key]


def _normalize_check(entry) -> dict:
    if isinstance(entry, str):
        entry = {"name": entry}
    elif isinstance(entry, dict):
        entry = dict(entry)
    else:
        raise ConfigError(f"bad check entry {entry!r}")
    if entry.get("name") not in _CHECKS:
        raise ConfigError(f"unknown check {entry.get('name')!r}")
    return entry


def build_config(raw: dict, cfg_id: str | None = None) -> ExperimentConfig:
    """Validate a raw mapping (parsed TOML or registry literal)."""
    for key in raw:
        if key not in _TOP_KEYS and key != "description":
            raise ConfigError(f"unknown top-level key {key!r}")

    model_raw = dict(_require(raw, "top level", "model"))
    _reject_unknown("model", model_raw, _SCHEMAS["model"])
    bc_name = str(_require(model_raw, "model", "bc")).lower()
    if bc_name not in _BC_NAMES:
        raise ConfigError(f"unknown boundary condition {bc_name!r}")
    family = _require(model_raw, "model", "family")
    try:
        model = ModelSpec(
            family=family,
            bc=_BC_NAMES[bc_name],
            nu=float(model_raw.get("nu", 0.0)),
            p=float(model_raw.get("p", 4.0)),
            kappa=float(model_raw.get("kappa", 0.0)),
            alpha=float(model_raw.get("alpha", 2.0)),
            dealias=bool(model_raw.get("dealias", False)),
        )
    except ValueError as exc:
        raise ConfigError(f"[model]: {exc}") from exc

    dom = dict(_require(raw, "top level", "domain"))
    _reject_unknown("domain", dom, _SCHEMAS["domain"])
    n = int(_require(dom, "domain", "n"))
    if n <= 0:
        raise ConfigError("[domain]: n must be positive")
    layout = dom.get("layout", "periodic" if model.bc.is_periodic else "bounded")
    try:
        grid = Grid1D(float(_require(dom, "domain", "a")),
                      float(_require(dom, "domain", "b")), n, layout)
    except ValueError as exc:
        raise ConfigError(f"[domain]: {exc}") from exc
    if model.bc.is_periodic != (grid.layout == "periodic"):
        raise ConfigError(
            f"[domain]: layout {grid.layout!r} incompatible with bc {bc_name!r}"
        )

    initial = dict(_require(raw, "top level", "initial"))
    _reject_unknown("initial", initial, _SCHEMAS["initial"])
    if _require(initial, "initial", "profile") not in _PROFILES:
        raise ConfigError(f"unknown initial profile {initial['profile']!r}")

    time_tbl = dict(_require(raw, "top level", "time"))
    _reject_unknown("time", time_tbl, _SCHEMAS["time"])
    if "t_end" not in time_tbl or "dt" not in time_tbl:
        raise ConfigError("[time]: t_end and dt are required")

    policy = dict(raw.get("policy", {}))
    _reject_unknown("policy", policy, _SCHEMAS["policy"])

    output = dict(raw.get("output", {}))
    _reject_unknown("output", output, _SCHEMAS["output"])

    monitors = list(raw.get("monitors", ["sup"]))
    for m in monitors:
        if m not in _MONITORS:
            raise ConfigError(f"unknown monitor {m!r}")
    checks = [_normalize_check(c) for c in raw.get("checks", [])]

    expect = raw.get("expect", "completed")
    if expect not in ("completed", "blowup"):
        raise ConfigError(f"expect must be 'completed' or 'blowup', got {expect!r}")

    return ExperimentConfig(
        id=str(raw.get("id", cfg_id or "unnamed")),
        model=model,
        domain=grid,
        initial=initial,
        time=time_tbl,
        policy=policy,
        monitors=monitors,
        checks=checks,
        expect=expect,
        out_dir=str(output.get("out_dir", "out")),
        description=str(raw.get("description", "")),
    )


def parse_config(text: str, cfg_id: str | None = None) -> ExperimentConfig:
    try:
        raw = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"malformed TOML: {exc}") from exc
    return build_config(raw, cfg_id)
