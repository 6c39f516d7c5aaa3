"""Parametric driven systems ``x_{n+1} = g(alpha, u_n, x_n)`` on [-1, 1]^N."""
import numpy as np

from ._validation import check_matrix, check_points, check_vector
from .exceptions import DimensionError, DomainError, ParameterError
from .numerics import _as_generator, largest_singular_value, normalize_unit_spectral_radius, spectral_radius

# alpha = 0 collapses the reservoir map to a constant, so it is kept out of
# the default parameter space.
DEFAULT_PARAM_RANGE = (0.05, 2.0)
UNIT_RADIUS_TOL = 1e-6


class DrivenSystem:
    """Base class: a deterministic map of the box [-1, 1]^N into itself.

    Subclasses implement ``_map(alpha, u, X)``, which applies ``g`` to every
    row of ``X``; input checking lives here.
    """

    def __init__(self, state_dim, input_dim, param_range=DEFAULT_PARAM_RANGE):
        lo, hi = (float(v) for v in param_range)
        if not lo <= hi:
            raise ParameterError(f"empty parameter space [{lo}, {hi}]")
        self.state_dim = int(state_dim)
        self.input_dim = int(input_dim)
        self.param_range = (lo, hi)

    def check_alpha(self, alpha):
        alpha = float(alpha)
        lo, hi = self.param_range
        if not lo <= alpha <= hi:
            raise ParameterError(f"alpha={alpha} outside the parameter space [{lo}, {hi}]")
        return alpha

    def step(self, alpha, u, x):
        """One application of ``g(alpha, u, x)`` to a single state."""
        alpha = self.check_alpha(alpha)
        u = check_vector(u, self.input_dim, name="input u")
        x = check_vector(x, self.state_dim, name="state x")
        if np.any(np.abs(x) > 1.0):
            raise DomainError("state must lie in [-1, 1]^N")
        return self._map(alpha, u, x[None, :])[0]

    def step_batch(self, alpha, u, X):
        """``g`` applied row-wise to a (count, N) array of states."""
        alpha = self.check_alpha(alpha)
        u = check_vector(u, self.input_dim, name="input u")
        X = check_points(X, self.state_dim, name="states")
        return self._map(alpha, u, X)

    def _map(self, alpha, u, X):
        raise NotImplementedError

    def __repr__(self):
        return f"{type(self).__name__}(N={self.state_dim}, d={self.input_dim}, param_range={self.param_range})"


class ReservoirSystem(DrivenSystem):
    """``g(alpha, u, x) = tanh(A u + alpha B x)`` with rho(B) = 1.

    ``B`` is rescaled to unit spectral radius unless ``normalize=False``, in
    which case it must already have unit radius.
    """

    def __init__(self, A, B, param_range=DEFAULT_PARAM_RANGE, normalize=True):
        A = check_matrix(A, name="A")
        B = check_matrix(B, square=True, name="B")
        if A.shape[0] != B.shape[0]:
            raise DimensionError(f"A has {A.shape[0]} rows but B is {B.shape[0]}x{B.shape[0]}")
        if normalize:
            B = normalize_unit_spectral_radius(B)
        else:
            rho = spectral_radius(B)
            if abs(rho - 1.0) > UNIT_RADIUS_TOL:
                raise DomainError(f"B must have unit spectral radius, got {rho!r}")
        super().__init__(B.shape[0], A.shape[1], param_range)
        A.setflags(write=False)
        B.setflags(write=False)
        self.A = A
        self.B = B

    @classmethod
    def random(cls, N, d=1, rng=0, param_range=DEFAULT_PARAM_RANGE):
        """Entries of A then B drawn i.i.d. uniform in [-1, 1]; B rescaled to rho = 1."""
        gen = _as_generator(rng)
        A = gen.uniform(-1.0, 1.0, size=(N, d))
        B = gen.uniform(-1.0, 1.0, size=(N, N))
        return cls(A, B, param_range=param_range)

    @property
    def sigma_max(self):
        if not hasattr(self, "_sigma_max"):
            self._sigma_max = largest_singular_value(self.B)
        return self._sigma_max

    def lipschitz_constant(self, alpha):
        """Upper bound alpha * sigma_max(B) on the state Lipschitz constant."""
        return abs(alpha) * self.sigma_max

    def has_global_contraction(self, alpha):
        """Informational sufficient condition for the ESP w.r.t. every input."""
        return self.lipschitz_constant(alpha) < 1.0

    def _map(self, alpha, u, X):
        # drive first so that alpha = 0 adds an exact zero to A u
        return np.tanh(self.A @ u + X @ (alpha * self.B).T)


class IdentitySystem(DrivenSystem):
    """``g(alpha, u, x) = x``: every state is its own solution."""

    def __init__(self, state_dim, input_dim=1, param_range=(-np.inf, np.inf)):
        super().__init__(state_dim, input_dim, param_range)

    def _map(self, alpha, u, X):
        return X.copy()


class InputOnlySystem(DrivenSystem):
    """``g(alpha, u, x) = tanh(A u)``, independent of both alpha and x."""

    def __init__(self, A, param_range=DEFAULT_PARAM_RANGE):
        A = check_matrix(A, name="A")
        super().__init__(A.shape[0], A.shape[1], param_range)
        self.A = A

    def _map(self, alpha, u, X):
        return np.broadcast_to(np.tanh(self.A @ u), X.shape).copy()


class ScalarTanhSystem(DrivenSystem):
    """One-dimensional ``g(alpha, u, x) = tanh(a u + alpha b x + c)``."""

    def __init__(self, a=1.0, b=1.0, c=0.0, param_range=DEFAULT_PARAM_RANGE):
        super().__init__(1, 1, param_range)
        self.a, self.b, self.c = float(a), float(b), float(c)

    def lipschitz_constant(self, alpha):
        return abs(alpha * self.b)

    def _map(self, alpha, u, X):
        return np.tanh(self.a * u[0] + alpha * self.b * X + self.c)


class FunctionSystem(DrivenSystem):
    """Wraps a vectorised callable ``fn(alpha, u, X) -> X'``."""

    def __init__(self, fn, state_dim, input_dim=1, param_range=DEFAULT_PARAM_RANGE):
        super().__init__(state_dim, input_dim, param_range)
        self.fn = fn

    def _map(self, alpha, u, X):
        out = np.asarray(self.fn(alpha, u, X), dtype=float)
        if out.shape != X.shape:
            raise DimensionError(f"system function returned shape {out.shape}, expected {X.shape}")
        return np.clip(out, -1.0, 1.0)
