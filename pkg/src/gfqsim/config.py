"""Run configuration: INI-style file parsing, flag overrides, canonical echo.

Keys are kebab-case in files and on the command line and snake_case on the
RunConfig record.  Section headers group related keys but carry no meaning;
every key name is globally unique and unknown keys are rejected.
"""

from __future__ import annotations

import configparser
import dataclasses
import io
import math
import os
from dataclasses import dataclass

from .circuit import (CircuitParams, FluxBias, InductanceSet,
                      JunctionEnergies, WindingNumbers)
from .errors import ConfigurationError
from .observables import PhysicalConstants

ENV_VAR = "GFQ_CONFIG"


@dataclass(frozen=True)
class RunConfig:
    # inductances (common arbitrary unit)
    l_k: float = 0.5
    l_g: float = 0.5
    lp_k: float = 0.5
    lp_g: float = 0.5
    lt_k: float = 0.5
    lt_g: float = 0.5
    l_m: float = 0.4
    lp_m: float = 0.2
    # flux biases (Phi0 units)
    f1: float = 0.0
    f2: float = 0.0
    f_alpha: float = 0.2
    # winding integers
    n1: int = -1
    n2: int = -1
    n: int = 1
    # energy scales (E_J = 1)
    ej_ratio: float = 2.0
    ej_over_ec: float = 40.0
    stiffness_loop: float = 1000.0
    stiffness_alpha: float = 3000.0
    # drive
    beta0: float = 0.0
    beta_branch: float = 0.0
    # physical constants
    l_eff_ph: float = 15.0          # pH
    ej_over_h_ghz: float = 200.0    # GHz
    # resonator / dynamics
    omega2: float = 1.0
    g_over_omega2: float = 0.01
    rabi_periods: float = 3.0
    tq_omega1: float = 1.0
    tq_delta: float = 1.2
    tq_g: float = 0.01
    # solver settings
    grid_resolution: int = 201
    cut_points: int = 801
    gap_points: int = 2001
    fock_cutoff: int = 10
    steps_per_period: int = 200
    # output
    format: str = "json"

    def __post_init__(self):
        if self.format not in ("json", "csv"):
            raise ConfigurationError("format must be 'json' or 'csv'")
        for name in ("grid_resolution", "cut_points", "gap_points",
                     "fock_cutoff", "steps_per_period"):
            if getattr(self, name) < 1:
                raise ConfigurationError(f"{name} must be positive")

    def circuit_params(self) -> CircuitParams:
        return CircuitParams(
            inductances=InductanceSet(L_K=self.l_k, L_g=self.l_g,
                                      Lp_K=self.lp_k, Lp_g=self.lp_g,
                                      Lt_K=self.lt_k, Lt_g=self.lt_g,
                                      L_M=self.l_m, Lp_M=self.lp_m),
            flux=FluxBias(f1=self.f1, f2=self.f2, f_alpha=self.f_alpha),
            winding=WindingNumbers(n1=self.n1, n2=self.n2, n=self.n),
            energies=JunctionEnergies(E_J=1.0, Et_J=self.ej_ratio,
                                      E_C=1.0 / self.ej_over_ec,
                                      stiffness_loop=self.stiffness_loop,
                                      stiffness_alpha=self.stiffness_alpha))

    def physical_constants(self) -> PhysicalConstants:
        return PhysicalConstants(L_eff=self.l_eff_ph * 1e-12,
                                 ej_over_h=self.ej_over_h_ghz * 1e9)


_FIELDS = {f.name: f for f in dataclasses.fields(RunConfig)}


def _to_key(name: str) -> str:
    return name.replace("_", "-")


def _from_key(key: str) -> str:
    return key.replace("-", "_")


def _coerce(name: str, raw):
    f = _FIELDS[name]
    try:
        if f.type in (int, "int"):
            value = int(str(raw))
        elif f.type in (float, "float"):
            value = float(str(raw))
        else:
            value = str(raw)
    except ValueError as exc:
        raise ConfigurationError(f"bad value for {_to_key(name)}: {raw!r}") from exc
    return value


def parse_config_text(text: str) -> dict:
    """Parse INI text to a {field_name: value} dict, rejecting unknown keys."""
    cp = configparser.ConfigParser()
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigurationError(f"config parse error: {exc}") from exc
    values = {}
    for section in cp.sections():
        for key, raw in cp.items(section):
            name = _from_key(key)
            if name not in _FIELDS:
                raise ConfigurationError(f"unknown config key: {key}")
            if name in values:
                raise ConfigurationError(f"duplicate config key: {key}")
            values[name] = _coerce(name, raw)
    return values


def load_config(path: str = None, overrides: dict = None) -> RunConfig:
    """Build a RunConfig from defaults, an optional file (explicit path or
    the GFQ_CONFIG environment variable), and flag overrides."""
    values = {}
    if path is None:
        path = os.environ.get(ENV_VAR) or None
    if path is not None:
        try:
            with open(path, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ConfigurationError(f"cannot read config {path}: {exc}") from exc
        values.update(parse_config_text(text))
    for key, raw in (overrides or {}).items():
        name = _from_key(key)
        if name not in _FIELDS:
            raise ConfigurationError(f"unknown config key: {key}")
        values[name] = _coerce(name, raw)
    try:
        return RunConfig(**values)
    except (ValueError, TypeError) as exc:
        raise ConfigurationError(str(exc)) from exc


def _format_value(v) -> str:
    if isinstance(v, float):
        return repr(v)
    return str(v)


def canonical_echo(cfg: RunConfig) -> str:
    """Deterministic INI serialization of the effective configuration;
    parsing it back reproduces the run exactly."""
    out = io.StringIO()
    out.write("[run]\n")
    for name in sorted(_FIELDS):
        out.write(f"{_to_key(name)} = {_format_value(getattr(cfg, name))}\n")
    return out.getvalue()


def config_dict(cfg: RunConfig) -> dict:
    return {_to_key(name): getattr(cfg, name) for name in sorted(_FIELDS)}
