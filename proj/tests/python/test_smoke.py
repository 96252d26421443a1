import math
from fractions import Fraction

import pytest

import rmcert


def test_exact_bounds():
    assert rmcert.ghz_moment(5, 2) == Fraction(16, 243)
    assert rmcert.criterion_bound(5, "ksep:2") == Fraction(4, 81)
    value, assignment = rmcert.mprod_bound(11, 4)
    assert value == Fraction(4, 2187)
    assert sum((i + 1) * k for i, k in enumerate(assignment)) == 11
    assert "ksep:2" not in rmcert.applicable_criteria(4)


def test_thresholds():
    assert rmcert.noise_threshold_asymptotic(2) == pytest.approx(1 - math.sqrt(3) / 2)
    p = rmcert.noise_threshold(9, 2)
    assert rmcert.noisy_ghz_r2(9, p) == pytest.approx(float(rmcert.criterion_bound(9, "ksep:2")))


def test_design_sum_matches_closed_form():
    assert rmcert.moment_design("noisy_ghz:n=6,p=0", 4) == pytest.approx(float(rmcert.ghz_moment(6, 4)))


def test_budgets():
    plan = rmcert.min_total_budget(10)
    assert plan["m_total"] == plan["m_settings"] * plan["k_shots"]
    cert = rmcert.certification_budget(11, "mprod:4", rmcert.noisy_ghz_r2(11, rmcert.fidelity_to_p(11, 0.76)))
    assert cert["tail"] <= 0.1
    with pytest.raises(rmcert.InfeasibleError):
        rmcert.certification_budget(7, "ksep:2", 0.0)


def test_pipeline_is_deterministic():
    a = rmcert.simulate("noisy_ghz:n=5,p=0", 400, 40, seed=3, threads=1)
    b = rmcert.simulate("noisy_ghz:n=5,p=0", 400, 40, seed=3, threads=4)
    assert a == b
    est = rmcert.estimate(a)
    assert est["value"] == pytest.approx(float(rmcert.ghz_moment(5, 2)), abs=5 * est["error_bar"]["delta"])
    report = rmcert.certify(a)
    assert report == rmcert.certify(b)
    assert report["verdicts"]


def test_errors_map_to_exceptions():
    with pytest.raises(rmcert.ValidationError):
        rmcert.criterion_bound(4, "ksep:2")
    with pytest.raises(rmcert.IngestionError):
        rmcert.estimate("{broken\n")
    assert issubclass(rmcert.ValidationError, rmcert.RmcertError)
