"""Parameter-stability profiles and hard-ESP threshold detection.

For a fixed input and a uniform grid ``a = alpha_1 < ... < alpha_l = b`` the
profile records ``gamma_n(alpha_k) = d_H(E_n(alpha_k), E_n(alpha_{k-1}))``,
where each ``E_n`` is approximated by pushing one shared ensemble of ``M``
initial states through the last ``n`` input values. A profile that stays near
zero indicates a continuous parameter-encoding map; the smallest alpha at
which it turns conspicuously positive estimates the edge-of-criticality.
"""
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ._validation import check_vector
from .encoding import propagate_ensemble, run_trajectory
from .exceptions import DomainError, LengthError, ParameterError
from .hausdorff import hausdorff_distance
from .inputs import add_noise, shift_input
from .numerics import sample_states

GRID_TOL = 1e-12


def make_grid(a, b, spacing):
    """Equally spaced grid from ``a`` to ``b`` inclusive."""
    a, b, spacing = float(a), float(b), float(spacing)
    if not spacing > 0:
        raise ParameterError("grid spacing must be > 0")
    if not a < b:
        raise ParameterError(f"grid needs a < b, got a={a}, b={b}")
    steps = (b - a) / spacing
    K = round(steps)
    if K < 1 or abs(steps - K) > 1e-9 * max(1.0, steps):
        raise ParameterError(f"grid spacing {spacing} does not divide [{a}, {b}] evenly")
    return np.round(np.linspace(a, b, K + 1), 12)


@dataclass(frozen=True, eq=False)
class StabilityProfile:
    alphas: np.ndarray
    gammas: np.ndarray
    n: int
    M: int
    seed: Optional[int] = None
    input_id: str = ""
    shift: int = 0
    p: float = 2.0

    def __post_init__(self):
        a = np.asarray(self.alphas, dtype=float)
        g = np.asarray(self.gammas, dtype=float)
        if a.ndim != 1 or a.size < 2 or g.shape != (a.size - 1,):
            raise DomainError("a profile needs l >= 2 grid points and l - 1 gamma values")
        d = np.diff(a)
        if np.any(d <= 0) or np.ptp(d) > GRID_TOL:
            raise DomainError("profile grid must be strictly increasing with constant spacing")
        if np.any(g < 0) or not np.all(np.isfinite(g)):
            raise DomainError("gamma values must be finite and non-negative")
        object.__setattr__(self, "alphas", a)
        object.__setattr__(self, "gammas", g)

    @property
    def spacing(self):
        return float(np.mean(np.diff(self.alphas)))

    @property
    def gamma_alphas(self):
        """The grid points ``alpha_2 .. alpha_l`` that carry a gamma value."""
        return self.alphas[1:]


@dataclass(frozen=True)
class ThresholdRule:
    """When is a profile conspicuously positive?

    The decision level is ``tau = max(tau_abs, kappa * baseline)`` where the
    baseline is the median gamma over the lowest quarter of the grid. An
    onset must be followed by ``window`` further values above ``tau``.
    """

    tau_abs: float = 1e-4
    kappa: float = 20.0
    window: int = 3

    def __post_init__(self):
        if not self.tau_abs > 0 or not self.kappa >= 0 or self.window < 0:
            raise DomainError("need tau_abs > 0, kappa >= 0 and window >= 0")


@dataclass(frozen=True, eq=False)
class ThresholdReport:
    threshold: Optional[float]
    kind: str
    decisions: list = field(default_factory=list)
    baseline: float = 0.0
    tau: float = 0.0

    @property
    def detected(self):
        return self.threshold is not None


def parameter_encoding(system, segment, alphas, initial, workers=1):
    """One propagated ensemble per alpha, all from the same initial states.

    Every alpha is an independent computation, so the result does not depend
    on ``workers``; ensembles come back in grid order.
    """
    for alpha in (alphas[0], alphas[-1]):
        system.check_alpha(alpha)

    def job(alpha):
        return propagate_ensemble(system, alpha, segment, initial)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(job, alphas))
    return [job(alpha) for alpha in alphas]


def stability_profile(system, segment, grid, M=50, n=None, mode="interior", rng=0, *,
                      initial=None, p=2, workers=1):
    """Compute ``gamma_n(alpha_k)`` over the grid ``(a, b, spacing)``.

    ``n`` defaults to the full segment length; only the last ``n`` input values
    are used. Pass ``initial`` to reuse an existing initial ensemble.
    """
    alphas = make_grid(*grid)
    n = len(segment) if n is None else int(n)
    if n > len(segment):
        raise LengthError(f"n={n} exceeds the input length {len(segment)}")
    if initial is None:
        initial = sample_states(M, system.state_dim, mode, rng)
    ensembles = parameter_encoding(system, segment.last(n), alphas, initial, workers)
    gammas = [hausdorff_distance(ensembles[k], ensembles[k - 1], p) for k in range(1, len(ensembles))]
    return StabilityProfile(alphas, np.array(gammas), n=n, M=len(initial),
                            seed=getattr(rng, "seed", rng if isinstance(rng, int) else None),
                            input_id=segment.input_id, p=float(p))


def shifted_profiles(system, segment, grid, M=50, shifts=(0,), mode="interior", rng=0, *,
                     p=2, workers=1):
    """One profile per shift ``j`` using ``n = len(segment) - j`` input values.

    All profiles share a single initial ensemble.
    """
    if max(shifts) >= len(segment):
        raise LengthError(f"largest shift {max(shifts)} must be below the input length {len(segment)}")
    initial = sample_states(M, system.state_dim, mode, rng)
    out = []
    for j in shifts:
        shifted = shift_input(segment, j)
        prof = stability_profile(system, shifted, grid, n=len(shifted), initial=initial, rng=rng,
                                 p=p, workers=workers)
        out.append(_with_shift(prof, j))
    return out


def _with_shift(profile, j):
    return StabilityProfile(profile.alphas, profile.gammas, profile.n, profile.M, profile.seed,
                            profile.input_id, shift=j, p=profile.p)


def detect_threshold(profile, rule=None):
    """Smallest grid alpha where the profile turns persistently positive."""
    rule = rule or ThresholdRule()
    g = profile.gammas
    quarter = max(1, math.ceil(g.size / 4))
    baseline = float(np.median(g[:quarter]))
    tau = max(rule.tau_abs, rule.kappa * baseline)
    above = g > tau
    onset = None
    for k in range(g.size - rule.window):
        if above[k : k + rule.window + 1].all():
            onset = k
            break
    decisions = []
    for k, flag in enumerate(above):
        if k == onset:
            decisions.append("threshold")
        else:
            decisions.append("above" if flag else "below")
    if onset is None:
        return ThresholdReport(None, "none-detected", decisions, baseline, tau)
    return ThresholdReport(float(profile.gamma_alphas[onset]), "hard", decisions, baseline, tau)


@dataclass(frozen=True, eq=False)
class NoiseRecord:
    alpha: float
    eps: float
    sup_state_gap: float
    sup_readout_gap: float
    clean: object
    noisy: object


def noise_sensitivity(system, alpha, segment, eps, x0, readout_w, rng=0):
    """Compare the responses to ``segment`` and to a noisy copy of it."""
    if eps < 0:
        raise DomainError("noise amplitude must be >= 0")
    readout_w = check_vector(readout_w, system.state_dim, name="readout_w")
    clean = run_trajectory(system, alpha, segment, x0, readout_w)
    noisy = run_trajectory(system, alpha, add_noise(segment, eps, rng), x0, readout_w)
    state_gap = float(np.max(np.linalg.norm(clean.states - noisy.states, axis=1)))
    readout_gap = float(np.max(np.abs(clean.readout - noisy.readout)))
    return NoiseRecord(float(alpha), float(eps), state_gap, readout_gap, clean, noisy)


@dataclass(frozen=True, eq=False)
class EquicontinuityTable:
    """``gaps[i, j] = d_H(E_{n_i}(alpha + delta_j), E_{n_i}(alpha))``."""

    alpha: float
    horizons: tuple
    deltas: tuple
    gaps: np.ndarray

    def rows(self):
        for i, n in enumerate(self.horizons):
            for j, delta in enumerate(self.deltas):
                yield n, delta, float(self.gaps[i, j])


def equicontinuity_diagnostic(system, segment, alpha, horizons, deltas, M=50, mode="interior", rng=0, *,
                              p=2, initial=None):
    """Hausdorff gaps between finite-time encodings at ``alpha`` and ``alpha + delta``.

    At a point of equicontinuity the gaps shrink uniformly in ``n`` as delta
    goes to zero; at a hard threshold a small fixed delta keeps the gap away
    from zero however large ``n`` becomes.
    """
    alpha = system.check_alpha(alpha)
    for delta in deltas:
        system.check_alpha(alpha + delta)
    if max(horizons) > len(segment):
        raise LengthError(f"largest horizon {max(horizons)} exceeds the input length {len(segment)}")
    if initial is None:
        initial = sample_states(M, system.state_dim, mode, rng)
    gaps = np.zeros((len(horizons), len(deltas)))
    for i, n in enumerate(horizons):
        seg = segment.last(n)
        base = propagate_ensemble(system, alpha, seg, initial)
        for j, delta in enumerate(deltas):
            moved = propagate_ensemble(system, alpha + delta, seg, initial)
            gaps[i, j] = hausdorff_distance(moved, base, p)
    return EquicontinuityTable(alpha, tuple(int(n) for n in horizons), tuple(float(d) for d in deltas), gaps)
