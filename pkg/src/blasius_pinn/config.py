"""Flat `key = value` run configuration with dotted section prefixes.

Example:

    mode = train
    network.depth = 2
    network.width = 100
    adam.decay = 0.96
    grid.eta_m = 8
    paths.checkpoint_out = checkpoint.txt

Unknown keys are rejected so typos fail loudly before any compute starts.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields

from .loss import BOUNDARY_DERIVATIVE, BOUNDARY_LITERAL, CollocationGrid
from .network import NetworkConfig
from .optim import AdamConfig, LbfgsConfig

MODES = ("train", "solve-oracle", "compare", "probe-negative", "export")


class ConfigError(ValueError):
    pass


@dataclass
class GridSpec:
    eta0: float = 0.0
    eta_m: float = 8.0
    n: int = 100

    def build(self) -> CollocationGrid:
        return CollocationGrid(self.eta0, self.eta_m, self.n)


@dataclass
class ProbeSpec:
    eta0: float = -5.69
    eta_m: float = 7.0
    n: int = 100

    def build(self) -> CollocationGrid:
        return CollocationGrid(self.eta0, self.eta_m, self.n)


@dataclass
class OracleSpec:
    h: float = 1e-4
    eta_max: float = 8.0
    blowup_h: float = 1e-5


@dataclass
class PathsSpec:
    checkpoint_in: str = ""
    checkpoint_out: str = "checkpoint.txt"
    csv_out: str = "solution.csv"
    plot_out: str = ""
    report_out: str = "report.txt"
    curve_out: str = "loss_curve.csv"


@dataclass
class RunConfig:
    mode: str = ""
    network: dict = field(default_factory=dict)   # raw overrides for NetworkConfig
    adam: dict = field(default_factory=dict)
    lbfgs: dict = field(default_factory=dict)
    grid: GridSpec = field(default_factory=GridSpec)
    probe: ProbeSpec = field(default_factory=ProbeSpec)
    oracle: OracleSpec = field(default_factory=OracleSpec)
    paths: PathsSpec = field(default_factory=PathsSpec)
    boundary_variant: str = BOUNDARY_DERIVATIVE

    def network_config(self, seed_override: int | None = None) -> NetworkConfig:
        kw = dict(self.network)
        if seed_override is not None:
            kw["seed"] = seed_override
        try:
            return NetworkConfig(**kw)
        except (TypeError, ValueError) as err:
            raise ConfigError(f"network config: {err}") from err

    def adam_config(self) -> AdamConfig:
        try:
            return AdamConfig(**self.adam)
        except (TypeError, ValueError) as err:
            raise ConfigError(f"adam config: {err}") from err

    def lbfgs_config(self) -> LbfgsConfig:
        try:
            return LbfgsConfig(**self.lbfgs)
        except (TypeError, ValueError) as err:
            raise ConfigError(f"lbfgs config: {err}") from err


_INT_KEYS = {
    "network.depth", "network.width", "network.seed",
    "adam.max_steps", "adam.decay_every",
    "lbfgs.memory", "lbfgs.max_iters", "lbfgs.max_line_evals",
    "grid.n", "probe.n",
}
_FLOAT_KEYS = {
    "adam.base_lr", "adam.decay", "adam.beta1", "adam.beta2", "adam.eps", "adam.switch_tol",
    "lbfgs.grad_tol", "lbfgs.c1", "lbfgs.c2",
    "grid.eta0", "grid.eta_m", "probe.eta0", "probe.eta_m",
    "oracle.h", "oracle.eta_max", "oracle.blowup_h",
}
_STR_KEYS = {
    "mode", "boundary_variant",
    "paths.checkpoint_in", "paths.checkpoint_out", "paths.csv_out",
    "paths.plot_out", "paths.report_out", "paths.curve_out",
}


def parse_config(text: str) -> RunConfig:
    cfg = RunConfig()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key in _INT_KEYS:
            try:
                val = int(value)
            except ValueError:
                raise ConfigError(f"line {lineno}: {key} expects an integer, got {value!r}")
        elif key in _FLOAT_KEYS:
            try:
                val = float(value)
            except ValueError:
                raise ConfigError(f"line {lineno}: {key} expects a number, got {value!r}")
        elif key in _STR_KEYS:
            val = value
        else:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")

        if "." in key:
            section, attr = key.split(".", 1)
            target = getattr(cfg, section)
            if isinstance(target, dict):
                target[attr] = val
            else:
                setattr(target, attr, val)
        else:
            setattr(cfg, key, val)

    if cfg.mode and cfg.mode not in MODES:
        raise ConfigError(f"unknown mode {cfg.mode!r}; expected one of {', '.join(MODES)}")
    if cfg.boundary_variant not in (BOUNDARY_DERIVATIVE, BOUNDARY_LITERAL):
        raise ConfigError(
            f"boundary_variant must be '{BOUNDARY_DERIVATIVE}' or '{BOUNDARY_LITERAL}'"
        )
    return cfg


def load_config(path) -> RunConfig:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as err:
        raise ConfigError(f"cannot read config {path}: {err}") from err
    return parse_config(text)
