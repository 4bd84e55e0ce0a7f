"""Python bindings for the excesslab C++ core."""

import json

from ._excesslab import (
    Exponents,
    GapReport,
    JointDistribution,
    bernoulli_second_derivative,
    check_excess_holder,
    check_excess_minkowski,
    cov_like,
    delta,
    excess_x,
    excess_y,
    h_chain,
    measured_second_derivative,
    minkowski_g,
    minkowski_g_prime,
    parse_distribution,
)
from . import _excesslab

__all__ = [
    "Exponents",
    "GapReport",
    "JointDistribution",
    "bernoulli_second_derivative",
    "check_excess_holder",
    "check_excess_minkowski",
    "cov_like",
    "delta",
    "excess_x",
    "excess_y",
    "h_chain",
    "holder_counterexample",
    "maximize",
    "measured_second_derivative",
    "minkowski_counterexample",
    "minkowski_g",
    "minkowski_g_prime",
    "parse_distribution",
    "sweep",
]


def sweep(trials=1000, seed=0, p_range=(1.01, 2.0), theta_range=(0.0, 1.0), threads=None):
    """Property sweep of both inequalities; returns the JSON summary as a dict."""
    return json.loads(_excesslab._sweep_json(trials, seed, tuple(p_range), tuple(theta_range), threads))


def maximize(m11, m1p, m21, m2p, p, n_support=6, restarts=64, seed=0, threads=None):
    return json.loads(
        _excesslab._maximize_json(m11, m1p, m21, m2p, p, n_support, restarts, seed, threads)
    )


def holder_counterexample(p, theta=1.0):
    return json.loads(_excesslab._holder_certificate_json(Exponents(p, theta)))


def minkowski_counterexample(p, theta=1.0):
    return json.loads(_excesslab._minkowski_certificate_json(Exponents(p, theta)))
