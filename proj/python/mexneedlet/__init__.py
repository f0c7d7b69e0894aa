"""Mexican needlets on the sphere: kernels, field correlations and frame bounds."""

from ._core import (
    ConfigError,
    DomainError,
    HypothesisError,
    NumericError,
    PowerSpectrum,
    calderon_bounds,
    choose_lmax,
    correlation,
    covariance,
    decay_check,
    frame_bounds,
    kernel,
    legendre,
    monte_carlo_correlation,
    real_sph_harm_all,
)

__all__ = [
    "ConfigError",
    "DomainError",
    "HypothesisError",
    "NumericError",
    "PowerSpectrum",
    "calderon_bounds",
    "choose_lmax",
    "correlation",
    "covariance",
    "decay_check",
    "frame_bounds",
    "kernel",
    "legendre",
    "monte_carlo_correlation",
    "real_sph_harm_all",
]
