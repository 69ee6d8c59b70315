"""Analytic elliptic polylogarithm: theta kernel, Eisenstein series and verification suites."""

import json

from ._core import (
    AliasingError,
    ConfigError,
    ConvergenceError,
    DomainError,
    Error,
    F,
    F_tilde,
    L_form,
    NonFiniteError,
    PoleProximityError,
    check_names,
    distribution_residual,
    dlog_kato_siegel,
    eta_periods,
    jacobi_J,
    l_form,
    s_coeffs,
    specialize_eisenstein,
    suite_names,
    theta,
    verify_json,
    wp,
    zeta,
)


def verify(suite="all", seed=1, parallelism=1, tolerances=None):
    """Run a verification suite and return the report as a dict."""
    return json.loads(verify_json(suite, seed, parallelism, tolerances or {}))


__all__ = [
    "AliasingError",
    "ConfigError",
    "ConvergenceError",
    "DomainError",
    "Error",
    "F",
    "F_tilde",
    "L_form",
    "NonFiniteError",
    "PoleProximityError",
    "check_names",
    "distribution_residual",
    "dlog_kato_siegel",
    "eta_periods",
    "jacobi_J",
    "l_form",
    "s_coeffs",
    "specialize_eisenstein",
    "suite_names",
    "theta",
    "verify",
    "wp",
    "zeta",
]
