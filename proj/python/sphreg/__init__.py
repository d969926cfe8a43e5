"""Bayesian nonparametric regression on the sphere.

Coefficient vectors are flat arrays of length (L+1)^2, ordered by degree and,
within a degree, zonal term first, then cosine and sine terms for m = 1..l.
"""

import json

from ._sphreg import (
    DataError,
    Error,
    InvalidArgument,
    basis_size,
    covariance_kernel,
    eigenvalue,
    empirical_ridge,
    evaluate_basis,
    fit,
    fit_loglog_slope,
    generate_dataset,
    generate_truth,
    krr_predict,
    legendre,
    matern_spectrum,
    multiplicity,
    nominal_rate,
    quadrature_grid,
    sample_prior,
    sample_uniform,
    shrinkage_weight,
    synthesize,
    theoretical_rate,
    truncation_level,
)
from . import _sphreg


def default_config():
    """Default contraction-study configuration as a dict."""
    return json.loads(_sphreg._default_config())


def run_contraction_study(**overrides):
    """Run a contraction study; keyword arguments override default_config()."""
    cfg = default_config()
    unknown = set(overrides) - set(cfg)
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    cfg.update(overrides)
    return json.loads(_sphreg._run_contraction_study(json.dumps(cfg)))
