"""Run configured experiments and record reproducible manifests.

Output layout: ``<output-dir>/<name>/data/*.csv``, ``plots/*.svg`` and
``manifest.json``. CSV files are byte-identical across reruns of the same
configuration, whatever the worker count.
"""
import json
import os
import time
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .config import validate_config
from .encoding import ensemble_diameter, run_trajectory
from .exceptions import ConfigError
from .inputs import make_sinusoid, make_uniform_random
from .io import file_digest, read_matrix_csv, write_table_csv, write_text_atomic
from .numerics import RngStream, sample_states
from .plotting import line_plot
from .stability import (
    ThresholdRule,
    detect_threshold,
    equicontinuity_diagnostic,
    make_grid,
    noise_sensitivity,
    parameter_encoding,
    shifted_profiles,
    stability_profile,
)
from .systems import IdentitySystem, InputOnlySystem, ReservoirSystem

# stream ids under the run seed
SAMPLES, NOISE, READOUT, X0 = 2, 3, 4, 5


@dataclass
class RunManifest:
    config: dict
    version: str
    duration_s: float
    outputs: list = field(default_factory=list)
    results: dict = field(default_factory=dict)

    def to_json(self):
        return json.dumps(
            {"config": self.config, "version": self.version, "duration_s": self.duration_s,
             "outputs": self.outputs, "results": self.results},
            indent=2, sort_keys=True,
        )

    @classmethod
    def load(cls, path):
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
        return cls(raw["config"], raw["version"], raw["duration_s"], raw["outputs"], raw.get("results", {}))

    def digests(self, suffix=".csv"):
        return {o["path"]: o["sha256"] for o in self.outputs if o["path"].endswith(suffix)}


def build_system(cfg):
    spec = cfg.system
    if spec.kind == "identity":
        return IdentitySystem(spec.N, spec.d, spec.param_range)
    if spec.A_path:
        try:
            A, B = read_matrix_csv(spec.A_path), read_matrix_csv(spec.B_path)
        except (OSError, ValueError) as exc:
            raise ConfigError([f"system.A-path / system.B-path: cannot load matrix: {exc}"]) from None
        if spec.kind == "input-only":
            return InputOnlySystem(A, spec.param_range)
        return ReservoirSystem(A, B, spec.param_range)
    rng = RngStream(spec.seed, 0)
    if spec.kind == "input-only":
        A = rng.generator().uniform(-1.0, 1.0, size=(spec.N, spec.d))
        return InputOnlySystem(A, spec.param_range)
    return ReservoirSystem.random(spec.N, spec.d, rng, spec.param_range)


def build_input(cfg):
    spec = cfg.input
    if spec.kind == "sinusoid":
        return make_sinusoid(spec.length, cfg.system.d, spec.resolved_amplitude, spec.period)
    return make_uniform_random(spec.length, cfg.system.d, spec.resolved_amplitude, RngStream(spec.seed, 1))


def _tag(alpha):
    return f"{alpha:g}"


class _Run:
    def __init__(self, cfg, root):
        self.cfg = cfg
        self.root = root
        self.outputs = []
        self.results = {}

    def csv(self, name, header, rows):
        rel = f"data/{name}"
        write_table_csv(os.path.join(self.root, rel), header, rows)
        self.outputs.append(rel)

    def plot(self, name, series, **kw):
        rel = f"plots/{name}"
        line_plot(os.path.join(self.root, rel), series, **kw)
        self.outputs.append(rel)


def _readout_weights(cfg, N):
    return RngStream(cfg.seed, READOUT).generator().uniform(-1.0, 1.0, size=N)


def _x0(cfg, N):
    return sample_states(1, N, "interior", RngStream(cfg.seed, X0)).points[0]


def _trajectory_compare(run, system, segment):
    cfg = run.cfg
    w = _readout_weights(cfg, system.state_dim)
    x0 = _x0(cfg, system.state_dim)
    n = np.arange(len(segment) + 1)
    u = np.concatenate([[np.nan], segment.values[:, 0]])
    readouts, series = [], [("input", n[1:], segment.values[:, 0])]
    for alpha in cfg.alphas:
        traj = run_trajectory(system, alpha, segment, x0, w)
        header = ["n"] + [f"x{i}" for i in range(system.state_dim)]
        run.csv(f"trajectory_alpha={_tag(alpha)}.csv", header, np.column_stack([n, traj.states]))
        readouts.append(traj.readout)
        series.append((f"x0, alpha={_tag(alpha)}", n, traj.states[:, 0]))
    header = ["n", "u"] + [f"y_alpha={_tag(a)}" for a in cfg.alphas]
    rows = [[int(k), "" if np.isnan(u[k]) else u[k]] + [r[k] for r in readouts] for k in n]
    run.csv("readout.csv", header, rows)
    run.plot("trajectories.svg", series, xlabel="n", ylabel="state coordinate 0")
    run.plot("readout.svg", [(f"alpha={_tag(a)}", n, r) for a, r in zip(cfg.alphas, readouts)],
             xlabel="n", ylabel="read-out y_n")


def _noise_sensitivity(run, system, segment):
    cfg = run.cfg
    w = _readout_weights(cfg, system.state_dim)
    x0 = _x0(cfg, system.state_dim)
    rows, diffs = [], []
    for alpha in cfg.alphas:
        rec = noise_sensitivity(system, alpha, segment, cfg.noise, x0, w, RngStream(cfg.seed, NOISE))
        rows.append([alpha, cfg.noise, rec.sup_state_gap, rec.sup_readout_gap])
        diff = rec.clean.readout - rec.noisy.readout
        n = np.arange(diff.size)
        run.csv(f"noise_alpha={_tag(alpha)}.csv", ["n", "x0_clean", "x0_noisy", "readout_diff"],
                np.column_stack([n, rec.clean.states[:, 0], rec.noisy.states[:, 0], diff]))
        diffs.append((f"alpha={_tag(alpha)}", n, diff))
        run.results[f"alpha={_tag(alpha)}"] = {"sup_state_gap": rec.sup_state_gap,
                                                "sup_readout_gap": rec.sup_readout_gap}
    run.csv("noise_gaps.csv", ["alpha", "eps", "sup_state_gap", "sup_readout_gap"], rows)
    run.plot("readout_difference.svg", diffs, xlabel="n", ylabel="y_n(u) - y_n(v)")


def _encoding_scatter(run, system, segment):
    cfg = run.cfg
    alphas = make_grid(cfg.grid.a, cfg.grid.b, cfg.grid.spacing)
    initial = sample_states(cfg.M, system.state_dim, cfg.mode, RngStream(cfg.seed, SAMPLES))
    ensembles = parameter_encoding(system, segment.last(cfg.horizon), alphas, initial, cfg.workers)
    c0, c1 = cfg.coords
    scatter, diam_rows = [], []
    for alpha, ens in zip(alphas, ensembles):
        for pt in ens.points:
            scatter.append([alpha, pt[c0], pt[c1]])
        d = ensemble_diameter(ens, cfg.p)
        diam_rows.append([alpha, d, "true" if d < cfg.tolerances.eps_esp else "false"])
    run.csv("scatter.csv", ["alpha", f"x{c0}", f"x{c1}"], scatter)
    run.csv("diameters.csv", ["alpha", "diameter", "esp"], diam_rows)
    pts = np.array(scatter)
    run.plot("scatter.svg", [(f"x{c0}", pts[:, 0], pts[:, 1]), (f"x{c1}", pts[:, 0], pts[:, 2])],
             xlabel="alpha", ylabel="state coordinate", scatter=True)
    run.results["diameter_first"] = diam_rows[0][1]
    run.results["diameter_last"] = diam_rows[-1][1]


def _stability_plot(run, system, segment):
    cfg = run.cfg
    tol = cfg.tolerances
    rule = ThresholdRule(tol.tau_abs, tol.kappa, tol.window)
    grid = (cfg.grid.a, cfg.grid.b, cfg.grid.spacing)
    rng = RngStream(cfg.seed, SAMPLES)
    if cfg.n is None:
        profiles = shifted_profiles(system, segment, grid, cfg.M, cfg.shifts, cfg.mode, rng, p=cfg.p,
                                    workers=cfg.workers)
    else:
        profiles = [stability_profile(system, segment, grid, cfg.M, cfg.n, cfg.mode, rng, p=cfg.p,
                                      workers=cfg.workers)]
    rows, thr_rows, series = [], [], []
    for prof in profiles:
        report = detect_threshold(prof, rule)
        for alpha, gamma, decision in zip(prof.gamma_alphas, prof.gammas, report.decisions):
            rows.append([str(prof.shift), str(prof.n), alpha, gamma, decision])
        thr_rows.append([str(prof.shift), str(prof.n),
                         "" if report.threshold is None else report.threshold,
                         report.kind, report.baseline, report.tau])
        series.append((f"j={prof.shift}, n={prof.n}", prof.gamma_alphas, prof.gammas))
        run.results[f"threshold_shift={prof.shift}"] = report.threshold
    run.csv("profiles.csv", ["shift", "n", "alpha", "gamma", "decision"], rows)
    run.csv("thresholds.csv", ["shift", "n", "threshold", "kind", "baseline", "tau"], thr_rows)
    run.plot("stability.svg", series, xlabel="alpha", ylabel="gamma_n(alpha)", log_y=cfg.log_scale)


def _equicontinuity(run, system, segment):
    cfg = run.cfg
    table = equicontinuity_diagnostic(system, segment, cfg.alpha, cfg.horizons, cfg.deltas, cfg.M, cfg.mode,
                                      RngStream(cfg.seed, SAMPLES), p=cfg.p)
    run.csv("equicontinuity.csv", ["n", "delta", "gap"], [[str(n), d, g] for n, d, g in table.rows()])
    series = [(f"delta={_tag(d)}", table.horizons, table.gaps[:, j])
              for j, d in enumerate(table.deltas) if d != 0]
    run.plot("equicontinuity.svg", series, xlabel="n", ylabel="d_H gap", log_y=cfg.log_scale)


_DISPATCH = {
    "trajectory-compare": _trajectory_compare,
    "noise-sensitivity": _noise_sensitivity,
    "encoding-scatter": _encoding_scatter,
    "stability-plot": _stability_plot,
    "equicontinuity": _equicontinuity,
}


def run_experiment(cfg):
    """Run one experiment, write its outputs and return the manifest."""
    if not hasattr(cfg, "experiment_kind"):
        cfg = validate_config(cfg)
    start = time.perf_counter()
    root = os.path.join(cfg.resolved_output_dir(), cfg.run_name)
    system = build_system(cfg)
    segment = build_input(cfg)
    run = _Run(cfg, root)
    _DISPATCH[cfg.experiment_kind](run, system, segment)
    outputs = [{"path": rel, "sha256": file_digest(os.path.join(root, rel))} for rel in run.outputs]
    manifest = RunManifest(cfg.to_dict(), __version__, round(time.perf_counter() - start, 3), outputs,
                           run.results)
    write_text_atomic(os.path.join(root, "manifest.json"), manifest.to_json() + "\n")
    return manifest


def replay(manifest_path, output_dir=None):
    """Re-run a manifest's configuration; return ``(new_manifest, mismatched_csv_paths)``."""
    old = RunManifest.load(manifest_path)
    raw = dict(old.config)
    if output_dir is not None:
        raw["output-dir"] = output_dir
    new = run_experiment(validate_config(raw))
    old_d, new_d = old.digests(), new.digests()
    mismatched = sorted(p for p in set(old_d) | set(new_d) if old_d.get(p) != new_d.get(p))
    return new, mismatched
