"""Run configuration parsing and serialization for the CLI.

Configs are INI-style documents with sections ``[system]``,
``[initial_state]``, ``[grid]`` and ``[output]``.  System keys carry the
laboratory quoting in their names (``v12_mhz`` is a plain frequency,
``gamma1_mhz_over_2pi`` the 2*pi-divided rate figure), so the two MHz
conventions can never be confused.  Unknown keys are rejected unless
``strict=False``.
"""

from __future__ import annotations

import configparser
import math
from dataclasses import dataclass, field

from .errors import ConfigError, InvalidParameterError, UnknownPresetError
from .model import DimerParams
from .scenarios import FAMILIES, PARAM_AXES, preset

SYSTEM_KEYS = (
    "gamma1_mhz_over_2pi", "gamma2_mhz_over_2pi", "gamma12_mhz_over_2pi",
    "v12_mhz", "delta_minus_mhz", "delta_plus_mhz", "delta_e_mhz",
    "ell1_mhz", "ell2_mhz",
)

GRID_FLOAT_KEYS = (
    "detuning_start_mhz", "detuning_stop_mhz", "detuning_step_mhz",
    "t_final_us", "axis_start", "axis_stop", "tol",
)
GRID_INT_KEYS = ("samples", "axis_points")
GRID_STR_KEYS = ("axis",)
OUTPUT_KEYS = ("path", "events_path")

_SECTIONS = ("system", "initial_state", "grid", "output")


@dataclass
class RunConfig:
    """Validated run configuration in laboratory (MHz) units."""

    system_mhz: dict
    preset_name: str | None = None
    family: str | None = None
    initial: dict = field(default_factory=dict)
    grid: dict = field(default_factory=dict)
    output: dict = field(default_factory=dict)

    def params(self) -> DimerParams:
        return DimerParams.from_mhz(**self.system_mhz)


def _parse_float(section, key, raw):
    try:
        value = float(raw)
    except ValueError:
        raise ConfigError(f"expected a number, got {raw!r}", key=f"{section}.{key}") from None
    if not math.isfinite(value):
        raise ConfigError(f"value must be finite, got {raw!r}", key=f"{section}.{key}")
    return value


def _parse_int(section, key, raw):
    try:
        return int(raw, 10)
    except ValueError:
        raise ConfigError(f"expected an integer, got {raw!r}", key=f"{section}.{key}") from None


def parse_config(text, strict=True):
    """Parse and validate a config document into a :class:`RunConfig`.

    Raises :class:`ConfigError` with the offending key path on unknown
    keys (strict mode), missing required keys, type errors, and physical
    constraint violations (e.g. |gamma12| > sqrt(gamma1 gamma2)).
    """
    cp = configparser.ConfigParser(interpolation=None, delimiters=("=",))
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"malformed document: {exc}") from None

    for section in cp.sections():
        if section not in _SECTIONS:
            if strict:
                raise ConfigError("unknown section", key=section)

    preset_name = None
    system_mhz = {}
    if cp.has_section("system"):
        sys_items = dict(cp.items("system"))
        if "preset" in sys_items:
            preset_name = sys_items.pop("preset")
            try:
                system_mhz.update(preset(preset_name).system_mhz)
            except UnknownPresetError as exc:
                raise ConfigError(str(exc), key="system.preset") from None
        for key, raw in sys_items.items():
            if key not in SYSTEM_KEYS:
                if strict:
                    raise ConfigError("unknown key", key=f"system.{key}")
                continue
            system_mhz[key] = _parse_float("system", key, raw)
    missing = [k for k in SYSTEM_KEYS if k not in system_mhz]
    if missing:
        raise ConfigError(
            "missing required keys: " + ", ".join(f"system.{k}" for k in missing))
    try:
        DimerParams.from_mhz(**system_mhz)
    except InvalidParameterError as exc:
        raise ConfigError(f"constraint violation: {exc}", key="system") from None

    family = None
    initial = {}
    if preset_name is not None and not cp.has_section("initial_state"):
        # inherit the preset's initial-state family when none is spelled out
        pre = preset(preset_name)
        if pre.family is not None:
            family = pre.family
            initial = {**FAMILIES[family][1], **dict(pre.family_defaults)}
    if cp.has_section("initial_state"):
        items = dict(cp.items("initial_state"))
        if "family" not in items:
            raise ConfigError("missing required key", key="initial_state.family")
        family = items.pop("family")
        if family not in FAMILIES:
            raise ConfigError(
                f"unknown family {family!r}; known: {', '.join(sorted(FAMILIES))}",
                key="initial_state.family")
        names, defaults, _ = FAMILIES[family]
        initial = dict(defaults)
        for key, raw in items.items():
            if key not in names:
                if strict:
                    raise ConfigError(f"not a parameter of family {family!r}",
                                      key=f"initial_state.{key}")
                continue
            initial[key] = _parse_float("initial_state", key, raw)

    grid = {}
    if cp.has_section("grid"):
        for key, raw in cp.items("grid"):
            if key in GRID_FLOAT_KEYS:
                grid[key] = _parse_float("grid", key, raw)
            elif key in GRID_INT_KEYS:
                grid[key] = _parse_int("grid", key, raw)
            elif key in GRID_STR_KEYS:
                if key == "axis" and raw not in PARAM_AXES and not any(
                        raw in FAMILIES[f][0] for f in FAMILIES):
                    raise ConfigError(f"unknown sweep axis {raw!r}", key="grid.axis")
                grid[key] = raw
            elif strict:
                raise ConfigError("unknown key", key=f"grid.{key}")

    output = {}
    if cp.has_section("output"):
        for key, raw in cp.items("output"):
            if key in OUTPUT_KEYS:
                output[key] = raw
            elif strict:
                raise ConfigError("unknown key", key=f"output.{key}")

    return RunConfig(system_mhz=system_mhz, preset_name=preset_name,
                     family=family, initial=initial, grid=grid, output=output)


def _fmt(value):
    if isinstance(value, float):
        return repr(value)
    return str(value)


def serialize_config(cfg):
    """Render a :class:`RunConfig` back to config text.

    ``parse_config(serialize_config(cfg)) == cfg`` exactly: floats are
    written with full round-trip precision and resolved values (presets,
    family defaults) are written out explicitly.
    """
    lines = ["[system]"]
    if cfg.preset_name is not None:
        lines.append(f"preset = {cfg.preset_name}")
    for key in SYSTEM_KEYS:
        lines.append(f"{key} = {_fmt(cfg.system_mhz[key])}")
    if cfg.family is not None:
        lines.append("")
        lines.append("[initial_state]")
        lines.append(f"family = {cfg.family}")
        for key in FAMILIES[cfg.family][0]:
            if key in cfg.initial:
                lines.append(f"{key} = {_fmt(cfg.initial[key])}")
    if cfg.grid:
        lines.append("")
        lines.append("[grid]")
        for key in (*GRID_STR_KEYS, *GRID_FLOAT_KEYS, *GRID_INT_KEYS):
            if key in cfg.grid:
                lines.append(f"{key} = {_fmt(cfg.grid[key])}")
    if cfg.output:
        lines.append("")
        lines.append("[output]")
        for key in OUTPUT_KEYS:
            if key in cfg.output:
                lines.append(f"{key} = {cfg.output[key]}")
    return "\n".join(lines) + "\n"
