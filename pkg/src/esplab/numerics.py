"""Spectral quantities, seeded random streams and state sampling.

Random streams are backed by numpy's Philox4x64 counter-based generator,
keyed by ``(seed, stream_id)``. The bit stream therefore depends only on the
two integers and not on platform, thread or call history.
"""
from dataclasses import dataclass

import numpy as np

from ._validation import check_matrix
from .ensemble import Provenance, StateEnsemble
from .exceptions import DomainError, NormalizationError

MAX_ITER = 10_000
RAYLEIGH_TOL = 1e-12
RESIDUAL_TOL = 1e-10
GELFAND_POWERS = (8, 16, 32, 64)
_BLOCK = 6
_UINT64 = 2**64


@dataclass(frozen=True)
class RngStream:
    """Reproducible random stream identified by ``(seed, stream_id)``."""

    seed: int
    stream_id: int = 0

    def __post_init__(self):
        for name in ("seed", "stream_id"):
            v = getattr(self, name)
            if not isinstance(v, (int, np.integer)) or not 0 <= int(v) < _UINT64:
                raise DomainError(f"{name} must be an unsigned 64-bit integer, got {v!r}")

    def generator(self):
        """A fresh ``numpy.random.Generator`` positioned at the stream start."""
        key = np.array([self.seed, self.stream_id], dtype=np.uint64)
        return np.random.Generator(np.random.Philox(key=key))

    def child(self, stream_id):
        """Stream with the same seed and a different stream id."""
        return RngStream(self.seed, stream_id)


def _as_generator(rng):
    if isinstance(rng, RngStream):
        return rng.generator()
    if isinstance(rng, np.random.Generator):
        return rng
    if isinstance(rng, (int, np.integer)):
        return RngStream(int(rng)).generator()
    raise TypeError(f"expected RngStream, Generator or int seed, got {type(rng).__name__}")


def _gelfand(B, powers=GELFAND_POWERS):
    """Estimate rho(B) as ||B^k||^(1/k) for the largest k in ``powers``.

    Powers are formed by repeated squaring with rescaling, so large or tiny
    spectral radii neither overflow nor underflow. Returns 0.0 as soon as a
    power vanishes exactly (nilpotent input).
    """
    P = B.copy()
    log_scale = 0.0
    k = 1
    estimate = np.linalg.norm(P, 2)
    while k < max(powers):
        s = np.linalg.norm(P, 2)
        if s == 0.0:
            return 0.0
        P = P / s
        log_scale = 2.0 * (log_scale + np.log(s))
        P = P @ P
        k *= 2
        nrm = np.linalg.norm(P, 2)
        if nrm == 0.0:
            return 0.0
        if k in powers:
            estimate = float(np.exp((log_scale + np.log(nrm)) / k))
    return estimate


def _start_block(n, p):
    if p == n:
        return np.eye(n)
    G = RngStream(0x5EED, 0xB10C).generator().standard_normal((n, p))
    return np.linalg.qr(G)[0]


def spectral_radius(B, *, max_iter=MAX_ITER, tol=RAYLEIGH_TOL):
    """Largest eigenvalue modulus of a square matrix.

    Block power iteration on a subspace of dimension ``min(n, 6)`` with a
    Rayleigh-Ritz projection at every step. A block rather than a single
    vector is needed so that complex-conjugate or sign-flipped dominant pairs
    still converge. If the Ritz estimate has not settled to ``tol`` after
    ``max_iter`` steps, the Gelfand estimate ``||B^k||^(1/k)`` is returned.
    """
    B = check_matrix(B, square=True, name="B")
    n = B.shape[0]
    if not B.any():
        return 0.0
    Q = _start_block(n, min(n, _BLOCK))
    prev = None
    settled = 0
    for _ in range(max_iter):
        Z = B @ Q
        w, V = np.linalg.eig(Q.T @ Z)
        i = int(np.argmax(np.abs(w)))
        ritz = float(np.abs(w[i]))
        # Ritz values alone can freeze on a wrong value when the block cycles
        # through an orbit of subspaces (permutation-like B); require a small
        # residual for the leading Ritz pair as well.
        residual = np.linalg.norm(Z @ V[:, i] - w[i] * (Q @ V[:, i]))
        if (
            prev is not None
            and abs(ritz - prev) <= tol * max(1.0, ritz)
            and residual <= RESIDUAL_TOL * max(ritz, np.finfo(float).tiny)
        ):
            settled += 1
            if settled >= 3:
                return ritz
        else:
            settled = 0
        prev = ritz
        if not Z.any():
            # the block was annihilated; only a norm-based estimate is reliable
            break
        Q = np.linalg.qr(Z)[0]
    return _gelfand(B)


def normalize_unit_spectral_radius(B):
    """Return ``B / rho(B)``."""
    B = check_matrix(B, square=True, name="B")
    rho = spectral_radius(B)
    if rho == 0.0:
        raise NormalizationError("matrix has zero spectral radius (nilpotent); cannot normalize")
    return B / rho


def largest_singular_value(B):
    """sigma_max(B) = sqrt(rho(B^T B)); B need not be square."""
    B = check_matrix(B, name="B")
    return float(np.sqrt(spectral_radius(B.T @ B)))


def sample_states(count, dim, mode="interior", rng=0):
    """Draw ``count`` states in the box [-1, 1]^dim.

    ``interior`` draws uniformly from the box. ``boundary`` draws uniformly
    from its surface: a coordinate is chosen uniformly, pinned to +1 or -1 with
    equal odds, and the remaining coordinates are uniform in [-1, 1].
    """
    if count < 1 or dim < 1:
        raise DomainError("count and dim must be positive")
    gen = _as_generator(rng)
    pts = gen.uniform(-1.0, 1.0, size=(count, dim))
    if mode == "boundary":
        face = gen.integers(0, dim, size=count)
        sign = np.where(gen.integers(0, 2, size=count) == 1, 1.0, -1.0)
        pts[np.arange(count), face] = sign
    elif mode != "interior":
        raise DomainError(f"mode must be 'interior' or 'boundary', got {mode!r}")
    return StateEnsemble(pts, Provenance(steps=0))
