"""Flat ``key = value`` configuration files and ``--set`` overrides.

Parameter keys are the :class:`~magnomech.model.SystemParams` field names
in SI units, or the same names with a unit suffix:

=========================  ======================================
``<rate>_mhz_over_2pi``    rate quoted as f/2pi in MHz
``temperature_mk``         temperature in mK
``theta_over_pi``          squeezing phase in units of pi
``chi_over_omega_b``       squeezing strength in units of omega_b
=========================  ======================================

Sweep keys: ``sweep_axis`` (any parameter key above; its unit applies to
the sweep values), either ``sweep_values`` or ``sweep_start`` /
``sweep_stop`` / ``sweep_points``, and optionally ``curve_axis`` /
``curve_values``. ``label`` is a free-form tag. A JSON file holding a flat
object, or a previous JSON output with a ``meta`` block, is accepted too.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .exceptions import ConfigError, DomainError
from .model import FREQUENCY_FIELDS, PARAM_FIELDS, SystemParams, mhz, reference_parameters
from .sweep import SweepSpec

SWEEP_KEYS = ("sweep_axis", "sweep_values", "sweep_start", "sweep_stop", "sweep_points", "curve_axis", "curve_values")
OTHER_KEYS = ("label",)


def resolve_key(key):
    """Map a parameter key to ``(field, unit)``; ``unit`` names the conversion."""
    if key in PARAM_FIELDS:
        return key, "si"
    if key.endswith("_mhz_over_2pi") and key[: -len("_mhz_over_2pi")] in FREQUENCY_FIELDS:
        return key[: -len("_mhz_over_2pi")], "mhz"
    if key == "temperature_mk":
        return "temperature", "mk"
    if key == "theta_over_pi":
        return "theta", "pi"
    if key == "chi_over_omega_b":
        return "chi", "omega_b"
    raise ConfigError(f"unknown configuration key {key!r}")


def to_si(unit, value, omega_b):
    if unit == "si":
        return value
    if unit == "mhz":
        return mhz(value)
    if unit == "mk":
        return value * 1e-3
    if unit == "pi":
        return value * math.pi
    if unit == "omega_b":
        return value * omega_b
    raise AssertionError(unit)


def parse_text(text, source="<config>") -> dict:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {raw.strip()!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            raise ConfigError(f"{source}:{lineno}: empty key")
        out[key] = value
    return out


def load(path) -> dict:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: invalid JSON: {exc}") from exc
        if isinstance(data, dict) and isinstance(data.get("meta"), dict):
            data = data["meta"]
        if not isinstance(data, dict):
            raise ConfigError(f"{path}: JSON config must be an object")
        return dict(data)
    return parse_text(text, source=str(path))


def parse_overrides(items) -> dict:
    out = {}
    for item in items or ():
        if "=" not in item:
            raise ConfigError(f"override must look like key=value, got {item!r}")
        key, value = item.split("=", 1)
        out[key.strip()] = value.strip()
    return out


def _number(key, value):
    if isinstance(value, bool):
        raise ConfigError(f"{key}: expected a number, got {value!r}")
    if isinstance(value, (int, float)):
        return float(value)
    try:
        return float(value)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{key}: expected a number, got {value!r}") from exc


def _number_list(key, value):
    if isinstance(value, (list, tuple)):
        return [_number(key, v) for v in value]
    if isinstance(value, str):
        text = value.strip()
        if text.startswith("["):
            try:
                return [_number(key, v) for v in json.loads(text)]
            except json.JSONDecodeError as exc:
                raise ConfigError(f"{key}: invalid list {value!r}") from exc
        return [_number(key, v) for v in text.split(",") if v.strip()]
    return [_number(key, value)]


def _string(key, value):
    if not isinstance(value, str):
        raise ConfigError(f"{key}: expected a name, got {value!r}")
    return value.strip()


def check_keys(config):
    for key in config:
        if key in SWEEP_KEYS or key in OTHER_KEYS:
            continue
        resolve_key(key)


def build_params(config) -> SystemParams:
    """Reference parameters updated by every parameter key, in order."""
    check_keys(config)
    settings = []
    for key, value in config.items():
        if key in SWEEP_KEYS or key in OTHER_KEYS:
            continue
        field, unit = resolve_key(key)
        if value is None and field in ("gamma_gain", "omega_b_abs"):
            settings.append((field, "si", None))
            continue
        settings.append((field, unit, _number(key, value)))

    values = {f: getattr(reference_parameters(), f) for f in PARAM_FIELDS}
    explicit = set()
    for field, unit, v in settings:
        if unit != "omega_b":
            values[field] = to_si(unit, v, None) if v is not None else None
            explicit.add(field)
    if "gamma_gain" not in explicit and "kappa_a" in explicit:
        values["gamma_gain"] = None
    if "omega_b_abs" not in explicit and "omega_b" in explicit:
        values["omega_b_abs"] = None
    for field, unit, v in settings:
        if unit == "omega_b":
            values[field] = to_si(unit, v, values["omega_b"])
    try:
        return SystemParams(**values)
    except DomainError as exc:
        raise ConfigError(str(exc)) from exc


def has_sweep(config):
    return "sweep_axis" in config


def build_sweep(config) -> SweepSpec:
    base = build_params(config)
    if "sweep_axis" not in config:
        raise ConfigError("sweep configuration needs 'sweep_axis'")
    field, unit = resolve_key(_string("sweep_axis", config["sweep_axis"]))
    if "sweep_values" in config:
        raw = _number_list("sweep_values", config["sweep_values"])
    else:
        missing = [k for k in ("sweep_start", "sweep_stop", "sweep_points") if k not in config]
        if missing:
            raise ConfigError(f"sweep configuration is missing {', '.join(missing)}")
        n = _number("sweep_points", config["sweep_points"])
        if n != int(n) or n < 1:
            raise ConfigError(f"sweep_points must be a positive integer, got {config['sweep_points']!r}")
        raw = list(
            np.linspace(
                _number("sweep_start", config["sweep_start"]),
                _number("sweep_stop", config["sweep_stop"]),
                int(n),
            )
        )
    grid = [to_si(unit, v, base.omega_b) for v in raw]

    curve_axis = None
    curve_values = ()
    if "curve_axis" in config:
        curve_axis, cunit = resolve_key(_string("curve_axis", config["curve_axis"]))
        if "curve_values" not in config:
            raise ConfigError("curve_axis given without curve_values")
        curve_values = tuple(to_si(cunit, v, base.omega_b) for v in _number_list("curve_values", config["curve_values"]))
    elif "curve_values" in config:
        raise ConfigError("curve_values given without curve_axis")
    label = config.get("label")
    return SweepSpec(
        base=base,
        axis=field,
        grid=tuple(grid),
        curve_axis=curve_axis,
        curve_values=curve_values,
        label=_string("label", label) if label is not None else None,
    )
