"""Localized two-hidden-layer network regression for lattice spatial data.

The compiled core carries the numerics; this package re-exports its
operations.
"""

from latticenn._core import (
    bessel_k,
    build_sites,
    fit_site,
    kl_divergence,
    lipschitz_bound,
    matern_cov,
    neighborhood,
    normal_quantile,
    sample_grf,
    simulate_dataset,
    subsample_ci,
    validate_regime,
)

__all__ = [
    "bessel_k",
    "build_sites",
    "fit_site",
    "kl_divergence",
    "lipschitz_bound",
    "matern_cov",
    "neighborhood",
    "normal_quantile",
    "sample_grf",
    "simulate_dataset",
    "subsample_ci",
    "validate_regime",
]

__version__ = "0.1.0"
