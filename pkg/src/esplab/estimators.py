"""scikit-learn compatible wrappers.

Input arrays follow the time-series convention ``X[k] = u_{-n+k}``: one row
per time step, one column per input coordinate, the last row fed last.
"""
import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .encoding import propagate_ensemble
from .exceptions import DimensionError
from .inputs import InputSegment
from .numerics import RngStream, sample_states
from .stability import ThresholdRule, detect_threshold, stability_profile


def _stream(random_state):
    if isinstance(random_state, RngStream):
        return random_state
    return RngStream(0 if random_state is None else int(random_state), 2)


def _segment(system, X):
    X = check_array(X, ensure_2d=False, dtype=float)
    if X.ndim == 1:
        X = X.reshape(-1, 1)
    if X.shape[1] != system.input_dim:
        raise DimensionError(f"X has {X.shape[1]} columns, the system expects {system.input_dim}")
    return InputSegment(X, "array")


class EncodingTransformer(TransformerMixin, BaseEstimator):
    """Map an input segment to its approximate encoding set.

    ``fit`` draws ``n_samples`` initial states once; ``transform`` pushes
    them through the rows of ``X`` at parameter ``alpha`` and returns the
    resulting ``(n_samples, N)`` array of states at time 0.
    """

    def __init__(self, system=None, alpha=0.5, n_samples=50, mode="interior", random_state=0):
        self.system = system
        self.alpha = alpha
        self.n_samples = n_samples
        self.mode = mode
        self.random_state = random_state

    def fit(self, X=None, y=None):
        if self.system is None:
            raise ValueError("EncodingTransformer needs a driven system")
        self.system.check_alpha(self.alpha)
        init = sample_states(self.n_samples, self.system.state_dim, self.mode, _stream(self.random_state))
        self.initial_states_ = init.points
        if X is not None:
            self.n_features_in_ = _segment(self.system, X).dim
        return self

    def transform(self, X):
        check_is_fitted(self, "initial_states_")
        seg = _segment(self.system, X)
        return np.array(propagate_ensemble(self.system, self.alpha, seg, self.initial_states_).points)


class ParameterStabilityEstimator(BaseEstimator):
    """Locate the hard-ESP threshold of a system for one input.

    ``fit(X)`` computes the parameter-stability profile over
    ``[alpha_min, alpha_max]`` and runs threshold detection. ``predict``
    labels parameter values at or beyond the detected threshold with 1.
    """

    def __init__(self, system=None, alpha_min=0.7, alpha_max=1.5, spacing=0.005, n_samples=50, horizon=None,
                 mode="interior", p=2, tau_abs=1e-4, kappa=20.0, window=3, random_state=0, n_jobs=1):
        self.system = system
        self.alpha_min = alpha_min
        self.alpha_max = alpha_max
        self.spacing = spacing
        self.n_samples = n_samples
        self.horizon = horizon
        self.mode = mode
        self.p = p
        self.tau_abs = tau_abs
        self.kappa = kappa
        self.window = window
        self.random_state = random_state
        self.n_jobs = n_jobs

    def fit(self, X, y=None):
        if self.system is None:
            raise ValueError("ParameterStabilityEstimator needs a driven system")
        seg = _segment(self.system, X)
        self.n_features_in_ = seg.dim
        self.profile_ = stability_profile(
            self.system, seg, (self.alpha_min, self.alpha_max, self.spacing), self.n_samples, self.horizon,
            self.mode, _stream(self.random_state), p=self.p, workers=self.n_jobs,
        )
        self.report_ = detect_threshold(self.profile_, ThresholdRule(self.tau_abs, self.kappa, self.window))
        self.alphas_ = self.profile_.alphas
        self.gammas_ = self.profile_.gammas
        self.threshold_ = self.report_.threshold
        return self

    def predict(self, alphas):
        """1 where ``alpha >= threshold_``, else 0 (all 0 when nothing was detected)."""
        check_is_fitted(self, "report_")
        alphas = np.asarray(alphas, dtype=float).ravel()
        if self.threshold_ is None:
            return np.zeros(alphas.shape, dtype=int)
        return (alphas >= self.threshold_).astype(int)
