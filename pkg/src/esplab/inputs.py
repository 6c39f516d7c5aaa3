"""Finite input segments ``(u_{-n}, ..., u_{-1})`` and their generators."""
from dataclasses import dataclass

import numpy as np

from ._validation import check_points
from .exceptions import DomainError, LengthError
from .numerics import _as_generator


@dataclass(frozen=True, eq=False)
class InputSegment:
    """A finite temporal input.

    ``values[k]`` is the input at time ``-n + k``, so ``values[-1]`` is
    ``u_{-1}``, the value fed last.
    """

    values: np.ndarray
    input_id: str = "input"

    def __post_init__(self):
        V = check_points(self.values, name="input values")
        V.setflags(write=False)
        object.__setattr__(self, "values", V)

    def __len__(self):
        return self.values.shape[0]

    @property
    def dim(self):
        return self.values.shape[1]

    @property
    def times(self):
        return np.arange(-len(self), 0)

    def last(self, n):
        """The segment made of the final ``n`` values."""
        if not 1 <= n <= len(self):
            raise LengthError(f"need 1 <= n <= {len(self)}, got n={n}")
        if n == len(self):
            return self
        return InputSegment(self.values[-n:], f"{self.input_id}[-{n}:]")


def make_sinusoid(length, d=1, amplitude=0.5, period=50.0):
    """``u_k = amplitude * sin(2 pi k / period)`` at times ``k = -n .. -1``."""
    if length < 1:
        raise LengthError("length must be >= 1")
    if not period > 0:
        raise DomainError("period must be > 0")
    k = np.arange(-length, 0, dtype=float)
    col = amplitude * np.sin(2.0 * np.pi * k / period)
    return InputSegment(np.repeat(col[:, None], d, axis=1), f"sinusoid(amp={amplitude!r},period={period!r})")


def make_uniform_random(length, d=1, amplitude=1.0, rng=0):
    """I.i.d. values uniform in ``[-amplitude, amplitude]^d``."""
    if length < 1:
        raise LengthError("length must be >= 1")
    gen = _as_generator(rng)
    vals = amplitude * gen.uniform(-1.0, 1.0, size=(length, d))
    return InputSegment(vals, f"uniform(amp={amplitude!r},rng={_rng_tag(rng)})")


def add_noise(segment, amplitude, rng=0):
    """Add i.i.d. noise uniform in ``[-amplitude, amplitude]^d`` to every value."""
    if amplitude < 0:
        raise DomainError("noise amplitude must be >= 0")
    if amplitude == 0:
        return segment
    gen = _as_generator(rng)
    noise = amplitude * gen.uniform(-1.0, 1.0, size=segment.values.shape)
    return InputSegment(segment.values + noise, f"{segment.input_id}+noise({amplitude!r},{_rng_tag(rng)})")


def shift_input(segment, j):
    """Apply the right shift by ``j`` and truncate: drop the last ``j`` values.

    The result has length ``n - j`` and ends with ``u_{-1-j}``.
    """
    n = len(segment)
    if j < 0:
        raise LengthError("shift must be non-negative")
    if j >= n:
        raise LengthError(f"shift j={j} must be smaller than the input length {n}")
    if j == 0:
        return segment
    return InputSegment(segment.values[: n - j], f"{segment.input_id}>>{j}")


def _rng_tag(rng):
    seed = getattr(rng, "seed", None)
    if seed is not None:
        return f"{seed}:{rng.stream_id}"
    return repr(rng) if isinstance(rng, (int, np.integer)) else "generator"
