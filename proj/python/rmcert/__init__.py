"""Python access to the rmcert core: exact bounds, budgets, simulation and certification."""

import json
from fractions import Fraction

from . import _rmcert
from ._rmcert import (
    IngestionError,
    InfeasibleError,
    ResourceError,
    RmcertError,
    ValidationError,
)

__all__ = [
    "IngestionError",
    "InfeasibleError",
    "ResourceError",
    "RmcertError",
    "ValidationError",
    "applicable_criteria",
    "certification_budget",
    "certify",
    "criterion_bound",
    "estimate",
    "fidelity_to_p",
    "ghz_moment",
    "min_total_budget",
    "moment_design",
    "mprod_bound",
    "noise_threshold",
    "noise_threshold_asymptotic",
    "noisy_ghz_r2",
    "simulate",
]

applicable_criteria = _rmcert.applicable_criteria
fidelity_to_p = _rmcert.fidelity_to_p
moment_design = _rmcert.moment_design
noise_threshold = _rmcert.noise_threshold
noise_threshold_asymptotic = _rmcert.noise_threshold_asymptotic
noisy_ghz_r2 = _rmcert.noisy_ghz_r2


def ghz_moment(n: int, t: int) -> Fraction:
    """R^(t) of the pure n-qubit GHZ state, t in {2, 4}."""
    return Fraction(_rmcert.ghz_moment(n, t))


def criterion_bound(n: int, criterion: str, t: int = 2) -> Fraction:
    """Bound for a criterion label such as "ksep:2", "mprod:4", "fullsep" or "wclass"."""
    return Fraction(_rmcert.criterion_bound(n, criterion, t))


def mprod_bound(n: int, m: int) -> tuple[Fraction, list[int]]:
    """m-producibility bound and the block assignment (k_1, ..., k_m) attaining it."""
    value, assignment = _rmcert.mprod_bound(n, m)
    return Fraction(value), list(assignment)


def min_total_budget(n: int, gamma: float = 0.9, delta_rel: float = 0.1, method: str = "cantelli") -> dict:
    return json.loads(_rmcert.min_total_budget(n, gamma, delta_rel, method))


def certification_budget(
    n: int, criterion: str, target_r2: float, gamma: float = 0.9, method: str = "cantelli-one-sided"
) -> dict:
    return json.loads(_rmcert.certification_budget(n, criterion, target_r2, gamma, method))


def simulate(state: str, m: int, k: int, seed: int, mode: str = "compact", threads: int = 1) -> str:
    """Record file text (JSON lines) for a state descriptor like "noisy_ghz:n=5,p=0.1"."""
    return _rmcert.simulate(state, m, k, seed, mode, threads)


def estimate(records: str, t: int = 2, gamma: float = 0.9, method: str = "cantelli") -> dict:
    return json.loads(_rmcert.estimate(records, t, gamma, method))


def certify(records: str, gamma: float = 0.9, method: str = "cantelli-one-sided") -> dict:
    return json.loads(_rmcert.certify(records, gamma, method))
