"""Finite-past approximations of encoding sets, trajectories and read-outs.

Feeding the segment ``(u_{-n}, ..., u_{-1})`` to a large initial ensemble
``Y_0`` yields ``Y_n``, a finite sample of the set ``E_n`` of states reachable
at time 0. For long segments ``E_n`` approaches the encoding of the whole
left-infinite input.
"""
import numpy as np

from ._validation import check_vector
from .ensemble import Provenance, StateEnsemble, Trajectory
from .exceptions import DimensionError, DomainError, NumericError
from .hausdorff import diameter
from .numerics import sample_states

DEFAULT_ESP_EPS = 1e-6


def _check_compatible(system, segment):
    if segment.dim != system.input_dim:
        raise DimensionError(f"input has dimension {segment.dim}, system expects {system.input_dim}")


def propagate_ensemble(system, alpha, segment, initial):
    """Push every point of ``initial`` through the whole segment.

    Row ``i`` of the result is the image of row ``i`` of ``initial``.
    """
    alpha = system.check_alpha(alpha)
    _check_compatible(system, segment)
    X = getattr(initial, "points", initial)
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[1] != system.state_dim:
        raise DimensionError(f"initial ensemble must have shape (M, {system.state_dim}), got {X.shape}")
    for u in segment.values:
        X = system._map(alpha, u, X)
    if not np.all(np.isfinite(X)):
        raise NumericError(f"non-finite state produced at alpha={alpha!r}")
    prior = getattr(initial, "provenance", Provenance())
    return StateEnsemble(X, Provenance(alpha, segment.input_id, prior.steps + len(segment)))


def encoding_approximation(system, alpha, segment, M, mode="interior", rng=0):
    """Sample ``M`` initial states and propagate them through ``segment``."""
    initial = sample_states(M, system.state_dim, mode, rng)
    return propagate_ensemble(system, alpha, segment, initial)


def ensemble_diameter(S, p=2):
    """Largest pairwise p-norm distance in the ensemble (exact O(M^2) scan)."""
    return diameter(S, p)


def esp_indicator(S, eps=DEFAULT_ESP_EPS):
    """True when the ensemble has collapsed to a cluster of diameter < eps."""
    if not eps > 0:
        raise DomainError("eps must be > 0")
    return ensemble_diameter(S, 2) < eps


def run_trajectory(system, alpha, segment, x0, readout_w=None):
    """States ``x_0 .. x_T`` with ``x_{k+1} = g(alpha, u_k, x_k)``."""
    alpha = system.check_alpha(alpha)
    _check_compatible(system, segment)
    x = check_vector(x0, system.state_dim, name="x0")
    if np.any(np.abs(x) > 1.0):
        raise DomainError("x0 must lie in [-1, 1]^N")
    states = np.empty((len(segment) + 1, system.state_dim))
    states[0] = x
    for k, u in enumerate(segment.values):
        states[k + 1] = system._map(alpha, u, states[k][None, :])[0]
    if not np.all(np.isfinite(states)):
        raise NumericError(f"non-finite state produced at alpha={alpha!r}")
    readout = None
    if readout_w is not None:
        w = check_vector(readout_w, system.state_dim, name="readout_w")
        readout = states @ w
    return Trajectory(states, readout)
