"""Quadrature noise of squeezed light scattered by disordered media.

Simulates and solves in closed form how multiple scattering degrades (and
wavefront shaping partially restores) the squeezing of Gaussian light, for
single-mode and two-mode squeezed inputs spread over the channels of a
random lossless medium.
"""

from .analytic import (
    TheoryPoint,
    difference_no_wfs_minus_wfs,
    rayleigh_cross_moment_ratio,
    single_no_wfs,
    single_wfs,
    threshold_g,
    two_no_wfs,
    two_wfs,
)
from .beamsplitter import BsSetup, bs_output_variance, bs_sweep_phi1
from .gaussian import (
    GaussianState,
    LinearForm,
    covariance_of_forms,
    mean_of_form,
    set_single_mode_squeezed,
    set_two_mode_squeezed,
    vacuum_state,
    variance_of_form,
)
from .kernels import BACKEND
from .medium import (
    MediumConfig,
    ScatterRow,
    apply_wfs,
    quadrature_forms,
    sample_row,
)
from .montecarlo import (
    DEFAULT_SEED,
    ExperimentSpec,
    SweepPoint,
    TrialResult,
    VarianceEstimate,
    build_input_state,
    run_ensemble,
    run_trial,
    sweep,
    trial_rng,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BsSetup",
    "DEFAULT_SEED",
    "ExperimentSpec",
    "GaussianState",
    "LinearForm",
    "MediumConfig",
    "ScatterRow",
    "SweepPoint",
    "TheoryPoint",
    "TrialResult",
    "VarianceEstimate",
    "apply_wfs",
    "bs_output_variance",
    "bs_sweep_phi1",
    "build_input_state",
    "covariance_of_forms",
    "difference_no_wfs_minus_wfs",
    "mean_of_form",
    "quadrature_forms",
    "rayleigh_cross_moment_ratio",
    "run_ensemble",
    "run_trial",
    "sample_row",
    "set_single_mode_squeezed",
    "set_two_mode_squeezed",
    "single_no_wfs",
    "single_wfs",
    "sweep",
    "threshold_g",
    "trial_rng",
    "two_no_wfs",
    "two_wfs",
    "vacuum_state",
    "variance_of_form",
    "__version__",
]
