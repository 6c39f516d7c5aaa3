"""Experiment configuration: strict YAML parsing with documented defaults.

Every key is optional except ``experiment-kind``. Unknown keys are errors.
Defaults that depend on the experiment kind are listed in ``KIND_DEFAULTS``.
"""
import math
import os
from dataclasses import asdict, dataclass, field
from typing import Optional

import yaml

from .exceptions import ConfigError

KINDS = ("trajectory-compare", "noise-sensitivity", "encoding-scatter", "stability-plot", "equicontinuity")
SYSTEM_KINDS = ("reservoir", "identity", "input-only")
INPUT_KINDS = ("uniform", "sinusoid")
OUTDIR_ENV = "ESPLAB_OUTDIR"

KIND_DEFAULTS = {
    "trajectory-compare": {"input.kind": "sinusoid", "input.length": 5000, "alphas": [1.02, 1.05]},
    "noise-sensitivity": {"input.kind": "sinusoid", "input.length": 1000, "alphas": [0.7, 0.8, 0.9]},
    "encoding-scatter": {"system.N": 2, "M": 1000, "mode": "boundary", "grid.spacing": 0.01},
    "stability-plot": {},
    "equicontinuity": {},
}


@dataclass(frozen=True)
class SystemSpec:
    kind: str = "reservoir"
    N: int = 50
    d: int = 1
    seed: int = 0
    A_path: Optional[str] = None
    B_path: Optional[str] = None
    param_range: tuple = (0.05, 2.0)


@dataclass(frozen=True)
class InputSpec:
    kind: str = "uniform"
    length: int = 500
    amplitude: Optional[float] = None  # 0.5 for sinusoid, 1.0 for uniform
    period: float = 50.0
    seed: int = 1

    @property
    def resolved_amplitude(self):
        if self.amplitude is not None:
            return self.amplitude
        return 0.5 if self.kind == "sinusoid" else 1.0


@dataclass(frozen=True)
class GridSpec:
    a: float = 0.7
    b: float = 1.5
    spacing: float = 0.005


@dataclass(frozen=True)
class Tolerances:
    eps_esp: float = 1e-6
    tau_abs: float = 1e-4
    kappa: float = 20.0
    window: int = 3


@dataclass(frozen=True)
class ExperimentConfig:
    experiment_kind: str
    name: Optional[str] = None
    output_dir: Optional[str] = None
    workers: int = 1
    seed: int = 2
    system: SystemSpec = field(default_factory=SystemSpec)
    input: InputSpec = field(default_factory=InputSpec)
    grid: GridSpec = field(default_factory=GridSpec)
    alphas: tuple = (1.02, 1.05)
    alpha: float = 0.3
    M: int = 50
    n: Optional[int] = None
    mode: str = "interior"
    shifts: tuple = (0,)
    noise: float = 1e-3
    coords: tuple = (0, 1)
    horizons: tuple = (25, 50, 100, 200, 300, 400, 500)
    deltas: tuple = (0.0, 0.001, 0.005, 0.01)
    p: float = 2.0
    log_scale: bool = False
    tolerances: Tolerances = field(default_factory=Tolerances)

    @property
    def run_name(self):
        return self.name or self.experiment_kind

    @property
    def horizon(self):
        return self.input.length if self.n is None else self.n

    def resolved_output_dir(self):
        return self.output_dir or os.environ.get(OUTDIR_ENV) or "runs"

    def to_dict(self):
        """Plain nested dict with hyphenated keys, accepted back by ``validate_config``."""
        return _hyphenate(asdict(self))


def _hyphenate(obj):
    if isinstance(obj, dict):
        return {k.replace("_", "-"): _hyphenate(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_hyphenate(v) for v in obj]
    return obj


# --- field checkers -------------------------------------------------------

def _int(v, key, errors, minimum=None):
    if isinstance(v, bool) or not isinstance(v, int):
        errors.append(f"{key}: must be an integer, got {v!r}")
        return None
    if minimum is not None and v < minimum:
        errors.append(f"{key}: must be >= {minimum}, got {v}")
        return None
    return v


def _float(v, key, errors):
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
        errors.append(f"{key}: must be a finite number, got {v!r}")
        return None
    return float(v)


def _choice(v, key, options, errors):
    if v not in options:
        errors.append(f"{key}: must be one of {', '.join(options)}, got {v!r}")
        return None
    return v


def _list(v, key, errors, item, min_len=1):
    if not isinstance(v, (list, tuple)) or len(v) < min_len:
        errors.append(f"{key}: must be a list with at least {min_len} element(s), got {v!r}")
        return None
    out = [item(x, f"{key}[{i}]", errors) for i, x in enumerate(v)]
    return None if any(x is None for x in out) else tuple(out)


def _section(raw, key, allowed, errors):
    if raw is None:
        return {}
    if not isinstance(raw, dict):
        errors.append(f"{key}: must be a mapping")
        return {}
    for k in raw:
        if k not in allowed:
            errors.append(f"{key}.{k}: unknown key (allowed: {', '.join(sorted(allowed))})")
    return raw


_TOP_KEYS = {
    "experiment-kind", "name", "output-dir", "workers", "seed", "system", "input", "grid", "alphas",
    "alpha", "M", "n", "mode", "shifts", "noise", "coords", "horizons", "deltas", "p", "log-scale",
    "tolerances",
}
_SYSTEM_KEYS = {"kind", "N", "d", "seed", "A-path", "B-path", "param-range"}
_INPUT_KEYS = {"kind", "length", "amplitude", "period", "seed"}
_GRID_KEYS = {"a", "b", "spacing"}
_TOL_KEYS = {"eps-esp", "tau-abs", "kappa", "window"}


def _parse(raw):
    errors = []
    if raw is None or raw == {}:
        raise ConfigError(["experiment-kind required"])
    if not isinstance(raw, dict):
        raise ConfigError(["config must be a mapping of keys to values"])
    top = _section(raw, "config", _TOP_KEYS, errors)
    errors[:] = [e.replace("config.", "", 1) for e in errors]
    if "experiment-kind" not in top:
        errors.insert(0, "experiment-kind required")
        raise ConfigError(errors)
    kind = _choice(top["experiment-kind"], "experiment-kind", KINDS, errors)
    if kind is None:
        raise ConfigError(errors)

    defaults = KIND_DEFAULTS[kind]

    def get(section, key, fallback):
        dotted = f"{section}.{key}" if section else key
        src = top if not section else top.get(section) or {}
        if isinstance(src, dict) and key in src:
            return src[key]
        return defaults.get(dotted, fallback)

    sys_raw = _section(top.get("system"), "system", _SYSTEM_KEYS, errors)
    in_raw = _section(top.get("input"), "input", _INPUT_KEYS, errors)
    _section(top.get("grid"), "grid", _GRID_KEYS, errors)
    _section(top.get("tolerances"), "tolerances", _TOL_KEYS, errors)

    sd = SystemSpec()
    system = SystemSpec(
        kind=_choice(get("system", "kind", sd.kind), "system.kind", SYSTEM_KINDS, errors),
        N=_int(get("system", "N", sd.N), "system.N", errors, 1),
        d=_int(get("system", "d", sd.d), "system.d", errors, 1),
        seed=_int(get("system", "seed", sd.seed), "system.seed", errors, 0),
        A_path=sys_raw.get("A-path"),
        B_path=sys_raw.get("B-path"),
        param_range=_list(get("system", "param-range", list(sd.param_range)), "system.param-range", errors,
                          _float, 2),
    )
    if system.param_range is not None:
        if len(system.param_range) != 2 or not system.param_range[0] < system.param_range[1]:
            errors.append("system.param-range: must be [low, high] with low < high")
    for key in ("A-path", "B-path"):
        v = sys_raw.get(key)
        if v is not None and not isinstance(v, str):
            errors.append(f"system.{key}: must be a file path string")
    if (sys_raw.get("A-path") is None) != (sys_raw.get("B-path") is None):
        errors.append("system.A-path / system.B-path: give both matrix files or neither")

    idf = InputSpec()
    inp = InputSpec(
        kind=_choice(get("input", "kind", idf.kind), "input.kind", INPUT_KINDS, errors),
        length=_int(get("input", "length", idf.length), "input.length", errors, 1),
        amplitude=None if in_raw.get("amplitude") is None else _float(in_raw["amplitude"], "input.amplitude", errors),
        period=_float(get("input", "period", idf.period), "input.period", errors),
        seed=_int(get("input", "seed", idf.seed), "input.seed", errors, 0),
    )
    if inp.period is not None and not inp.period > 0:
        errors.append("input.period: sinusoid period must be > 0")

    gd = GridSpec()
    grid = GridSpec(
        a=_float(get("grid", "a", gd.a), "grid.a", errors),
        b=_float(get("grid", "b", gd.b), "grid.b", errors),
        spacing=_float(get("grid", "spacing", gd.spacing), "grid.spacing", errors),
    )
    if grid.spacing is not None and not grid.spacing > 0:
        errors.append("grid.spacing: grid spacing must be > 0")
    if grid.a is not None and grid.b is not None and not grid.a < grid.b:
        errors.append("grid.a / grid.b: grid needs a < b")

    td = Tolerances()
    tol = Tolerances(
        eps_esp=_float(get("tolerances", "eps-esp", td.eps_esp), "tolerances.eps-esp", errors),
        tau_abs=_float(get("tolerances", "tau-abs", td.tau_abs), "tolerances.tau-abs", errors),
        kappa=_float(get("tolerances", "kappa", td.kappa), "tolerances.kappa", errors),
        window=_int(get("tolerances", "window", td.window), "tolerances.window", errors, 0),
    )
    for key, v in (("eps-esp", tol.eps_esp), ("tau-abs", tol.tau_abs)):
        if v is not None and not v > 0:
            errors.append(f"tolerances.{key}: must be > 0")

    cd = ExperimentConfig(kind)
    name = get(None, "name", None)
    if name is not None and (not isinstance(name, str) or not name or "/" in name):
        errors.append("name: must be a non-empty string without '/'")
    outdir = get(None, "output-dir", None)
    if outdir is not None and not isinstance(outdir, str):
        errors.append("output-dir: must be a path string")
    n = get(None, "n", None)
    if n is not None:
        n = _int(n, "n", errors, 1)
    cfg = ExperimentConfig(
        experiment_kind=kind,
        name=name,
        output_dir=outdir,
        workers=_int(get(None, "workers", cd.workers), "workers", errors, 1),
        seed=_int(get(None, "seed", cd.seed), "seed", errors, 0),
        system=system,
        input=inp,
        grid=grid,
        alphas=_list(get(None, "alphas", list(cd.alphas)), "alphas", errors, _float),
        alpha=_float(get(None, "alpha", cd.alpha), "alpha", errors),
        M=_int(get(None, "M", cd.M), "M", errors, 1),
        n=n,
        mode=_choice(get(None, "mode", cd.mode), "mode", ("interior", "boundary"), errors),
        shifts=_list(get(None, "shifts", list(cd.shifts)), "shifts", errors,
                     lambda v, k, e: _int(v, k, e, 0)),
        noise=_float(get(None, "noise", cd.noise), "noise", errors),
        coords=_list(get(None, "coords", list(cd.coords)), "coords", errors,
                     lambda v, k, e: _int(v, k, e, 0), 2),
        horizons=_list(get(None, "horizons", list(cd.horizons)), "horizons", errors,
                       lambda v, k, e: _int(v, k, e, 1)),
        deltas=_list(get(None, "deltas", list(cd.deltas)), "deltas", errors, _float),
        p=_norm(get(None, "p", cd.p), errors),
        log_scale=_bool(get(None, "log-scale", cd.log_scale), "log-scale", errors),
        tolerances=tol,
    )
    if not errors:
        errors.extend(_cross_checks(cfg))
    if errors:
        raise ConfigError(errors)
    return cfg


def _norm(v, errors):
    if v in ("inf", "infinity"):
        return math.inf
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not v >= 1:
        errors.append(f"p: norm order must be a number >= 1 or 'inf', got {v!r}")
        return None
    return float(v)


def _bool(v, key, errors):
    if not isinstance(v, bool):
        errors.append(f"{key}: must be true or false, got {v!r}")
        return None
    return v


def _cross_checks(cfg):
    errors = []
    lo, hi = cfg.system.param_range
    if cfg.noise < 0:
        errors.append("noise: noise amplitude must be >= 0")
    if cfg.n is not None and cfg.n > cfg.input.length:
        errors.append(f"n: must not exceed input.length ({cfg.input.length})")
    if cfg.experiment_kind in ("stability-plot", "encoding-scatter"):
        if not (lo <= cfg.grid.a and cfg.grid.b <= hi):
            errors.append(f"grid: [{cfg.grid.a}, {cfg.grid.b}] must lie inside system.param-range [{lo}, {hi}]")
        steps = (cfg.grid.b - cfg.grid.a) / cfg.grid.spacing
        if abs(steps - round(steps)) > 1e-9 * max(1.0, steps):
            errors.append("grid.spacing: must divide b - a into a whole number of steps")
    if cfg.experiment_kind == "stability-plot" and cfg.n is not None and cfg.shifts != (0,):
        errors.append("n: a fixed horizon cannot be combined with shifts (each shift j uses n = length - j)")
    if cfg.experiment_kind == "stability-plot" and max(cfg.shifts) >= cfg.input.length:
        errors.append("shifts: every shift must be smaller than input.length")
    if cfg.experiment_kind in ("trajectory-compare", "noise-sensitivity"):
        for a in cfg.alphas:
            if not lo <= a <= hi:
                errors.append(f"alphas: {a} lies outside system.param-range [{lo}, {hi}]")
    if cfg.experiment_kind == "equicontinuity":
        for d in cfg.deltas:
            if not lo <= cfg.alpha + d <= hi:
                errors.append(f"deltas: alpha + {d} lies outside system.param-range [{lo}, {hi}]")
        if max(cfg.horizons) > cfg.input.length:
            errors.append("horizons: must not exceed input.length")
    if cfg.experiment_kind == "encoding-scatter" and max(cfg.coords) >= cfg.system.N:
        errors.append(f"coords: indices must be < system.N ({cfg.system.N})")
    return errors


def validate_config(raw):
    """Parse YAML text (or an already-loaded mapping) into an ``ExperimentConfig``.

    Raises ``ConfigError`` whose ``errors`` attribute lists every problem,
    each message naming the offending key.
    """
    if isinstance(raw, (str, bytes)):
        try:
            raw = yaml.safe_load(raw)
        except yaml.YAMLError as exc:
            raise ConfigError([f"not valid YAML: {exc}"]) from None
    return _parse(raw)


def load_config(path, overrides=None):
    """Read a config file and apply dotted-key overrides such as ``{"grid.spacing": 0.01}``."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        raw = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigError([f"not valid YAML: {exc}"]) from None
    if overrides:
        raw = apply_overrides(raw if isinstance(raw, dict) else {}, overrides)
    return _parse(raw)


def apply_overrides(raw, overrides):
    raw = dict(raw)
    for dotted, value in overrides.items():
        parts = dotted.split(".")
        node = raw
        for part in parts[:-1]:
            child = node.get(part)
            child = dict(child) if isinstance(child, dict) else {}
            node[part] = child
            node = child
        node[parts[-1]] = value
    return raw


def with_overrides(cfg, overrides):
    return _parse(apply_overrides(cfg.to_dict(), overrides))

