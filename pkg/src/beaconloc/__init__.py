"""Beacon LED coordinate estimation with two four-photodiode AOA heads."""

from .aoa import (AoaEstimator, IncidenceEstimate, estimate_incidence,
                  incidence_noise_covariance, optimal_normals, simulate_currents,
                  true_geometry)
from .channel import (NoiseModel, OpticalParams, current_mean, lambertian_power,
                      noise_variance, sample_noisy_current)
from .exceptions import (AllTrialsDegenerate, BeaconLocError, CoincidentPoints, ConfigError,
                         DegenerateGeometry, InvalidGeometry, NegativeTrace, ParseError,
                         RankDeficient, SingularMatrix, ValidationError)
from .localizer import (TriangulationInputs, TriangulationResult, gram_and_projections,
                        solve_distances, triangulate)
from .montecarlo import ExperimentSpec, GridSweepResult, empirical_eps, run_trial, sweep
from .propagation import (ErrorReport, JacobianPair, distance_jacobians, e_ps,
                          error_covariance, estimate_jacobians, theoretical_error_at)
from .scene import Scene, fig3_scene, fig4_scene

__version__ = "0.1.0"

__all__ = [
    "AllTrialsDegenerate",
    "AoaEstimator",
    "BeaconLocError",
    "CoincidentPoints",
    "ConfigError",
    "DegenerateGeometry",
    "ErrorReport",
    "ExperimentSpec",
    "GridSweepResult",
    "IncidenceEstimate",
    "InvalidGeometry",
    "JacobianPair",
    "NegativeTrace",
    "NoiseModel",
    "OpticalParams",
    "ParseError",
    "RankDeficient",
    "Scene",
    "SingularMatrix",
    "TriangulationInputs",
    "TriangulationResult",
    "ValidationError",
    "current_mean",
    "distance_jacobians",
    "e_ps",
    "empirical_eps",
    "error_covariance",
    "estimate_incidence",
    "estimate_jacobians",
    "fig3_scene",
    "fig4_scene",
    "gram_and_projections",
    "incidence_noise_covariance",
    "lambertian_power",
    "noise_variance",
    "optimal_normals",
    "run_trial",
    "sample_noisy_current",
    "simulate_currents",
    "solve_distances",
    "sweep",
    "theoretical_error_at",
    "triangulate",
    "true_geometry",
]
