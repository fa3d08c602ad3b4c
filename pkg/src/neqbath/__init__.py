"""Decoherence and geometric phase of a qubit in a random-phase bath.

A dephasing qubit couples to a set of bath modes whose phases diffuse
in time.  This package computes the resulting decoherence factor
(closed forms where they exist, adaptive quadrature elsewhere),
validates it against a trajectory-sampling oracle, and propagates the
loss of coherence into the non-unitary geometric phase of a
quasi-cyclic evolution.
"""

from .bath import (
    BathConfig,
    DeltaLimitError,
    PhaseDistribution,
    PhaseProfile,
    SpectralDensity,
    default_omega_max,
    phase_distribution_eval,
    phase_profile_eval,
    profile_from_config,
    spectral_density_eval,
    spectral_total_weight,
)
from .dephasing import (
    METHOD_CLOSED,
    METHOD_MC,
    METHOD_QUADRATURE,
    DecoherenceCurve,
    DipReport,
    asymptotic_factor,
    beta_closed,
    beta_integrand,
    beta_quadrature,
    decoherence_factor,
    decoherence_ohmic_closed,
    decoherence_supra_closed,
    find_dip,
)
from .geomphase import (
    BlochSnapshot,
    GPResult,
    LambdaSweepResult,
    QubitState,
    SurfaceResult,
    bloch_angle,
    bloch_snapshot,
    eigenvalue_plus,
    gamma_comparison,
    geometric_phase,
    gp_lambda_sweep,
    gp_surface,
    perturbative_correction,
    unitary_phase,
)
from .montecarlo import (
    DiscretizedBath,
    EnsembleConfig,
    McCurve,
    accumulated_phase,
    discretize_bath,
    endpoint_phase,
    mc_decoherence_factor,
    sample_phase_path,
    to_decoherence_curve,
)
from .numerics import (
    ConvergenceError,
    QuadratureResult,
    finite_difference_curvature,
    finite_difference_slope,
    integrate_finite,
    integrate_semi_infinite,
)

__version__ = "0.1.0"
