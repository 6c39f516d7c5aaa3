"""esplab: echo-state-property diagnostics for parametric driven systems."""
from .encoding import (
    encoding_approximation,
    ensemble_diameter,
    esp_indicator,
    propagate_ensemble,
    run_trajectory,
)
from .ensemble import Provenance, StateEnsemble, Trajectory
from .exceptions import (
    ConfigError,
    DimensionError,
    DomainError,
    EsplabError,
    LengthError,
    NormalizationError,
    NumericError,
    ParameterError,
)
from .hausdorff import directed_distance, hausdorff_distance, pairwise_distances
from .inputs import InputSegment, add_noise, make_sinusoid, make_uniform_random, shift_input
from .numerics import (
    RngStream,
    largest_singular_value,
    normalize_unit_spectral_radius,
    sample_states,
    spectral_radius,
)
from .stability import (
    EquicontinuityTable,
    NoiseRecord,
    StabilityProfile,
    ThresholdReport,
    ThresholdRule,
    detect_threshold,
    equicontinuity_diagnostic,
    make_grid,
    noise_sensitivity,
    shifted_profiles,
    stability_profile,
)
from .systems import (
    DrivenSystem,
    FunctionSystem,
    IdentitySystem,
    InputOnlySystem,
    ReservoirSystem,
    ScalarTanhSystem,
)

__version__ = "0.1.0"
