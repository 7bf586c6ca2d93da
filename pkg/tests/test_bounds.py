import numpy as np
import numpy.testing as npt
import pytest

from wsprec import (
    DimensionMismatch,
    EmptyPath,
    check_bounds,
    default_lambda_grid,
    error_report,
    invert_spd,
    make_toeplitz_precision,
    matrix_norm,
    oracle_tune,
    scio_path,
    sparsity_summary,
    symmetrize,
)


def test_error_report_zero_difference():
    report = error_report(np.eye(3), np.eye(3))
    for kind in ("elementwise_inf", "spectral", "l1", "frobenius", "scaled_frobenius"):
        assert report.by_kind(kind) == 0.0


def test_error_report_diagonal_difference():
    truth = np.eye(3)
    estimate = truth + np.diag([3.0, 3.0, 3.0])
    report = error_report(estimate, truth)
    assert report.elementwise_inf == pytest.approx(3.0)
    assert report.spectral == pytest.approx(3.0)
    assert report.l1 == pytest.approx(3.0)
    assert report.frobenius == pytest.approx(3.0 * np.sqrt(3.0))
    assert report.scaled_frobenius == pytest.approx(9.0)


def test_error_report_shape_mismatch():
    with pytest.raises(DimensionMismatch):
        error_report(np.eye(2), np.eye(3))


def test_error_report_unknown_kind():
    with pytest.raises(ValueError):
        error_report(np.eye(2), np.eye(2)).by_kind("nuclear")


def test_spectral_never_exceeds_l1_on_random_pairs():
    rng = np.random.default_rng(19)
    for _ in range(10):
        diff = symmetrize(rng.standard_normal((7, 7)))
        report = error_report(diff, np.zeros((7, 7)))
        assert report.spectral <= report.l1 + 1e-12


def test_check_bounds_identity_all_satisfied():
    check = check_bounds(np.eye(5), np.eye(5), np.eye(5), lam=0.2, q=0.5)
    assert check.hypotheses_hold
    assert check.all_satisfied
    assert check.sigma_gap == 0.0


def test_check_bounds_exact_pilot_largest_feasible_lambda():
    # With sigma_hat equal to sigma the deviation hypothesis is free,
    # so the penalty only needs to satisfy the weak-sparsity condition.
    omega = make_toeplitz_precision(20, 0.3)
    sigma = invert_spd(omega)
    summary = sparsity_summary(omega, 0.5)
    feasible = [
        lam
        for lam in default_lambda_grid()
        if summary.M_p ** -0.5 * lam**0.5 * summary.s_p <= 0.5
    ]
    lam = max(feasible)
    check = check_bounds(omega, sigma, sigma, lam=lam, q=0.5)
    assert check.hypotheses_hold
    assert check.all_satisfied
    assert [line.name for line in check.lines] == [
        "column_l1",
        "column_inf",
        "matrix_inf",
        "matrix_l1",
    ]


def test_check_bounds_reports_violated_hypothesis():
    omega = make_toeplitz_precision(10, 0.5)
    sigma = invert_spd(omega)
    check = check_bounds(omega, sigma, sigma, lam=1.0, q=0.5)
    assert not check.hypothesis_sparsity
    assert not check.hypotheses_hold


def test_check_bounds_lambda_hypothesis_uses_pilot_gap():
    omega = make_toeplitz_precision(10, 0.5)
    sigma = invert_spd(omega)
    sigma_hat = sigma + 0.05
    check = check_bounds(omega, sigma_hat, sigma, lam=1e-4, q=0.5)
    assert check.sigma_gap == pytest.approx(0.05)
    assert not check.hypothesis_lambda


def test_bound_rhs_values():
    omega = make_toeplitz_precision(10, 0.3)
    sigma = invert_spd(omega)
    lam, q = 0.05, 0.5
    check = check_bounds(omega, sigma, sigma, lam=lam, q=q)
    m_p = matrix_norm(omega, "l1")
    s_p = sparsity_summary(omega, q).s_p
    by_name = {line.name: line for line in check.lines}
    assert by_name["column_l1"].rhs == pytest.approx(16.0 * m_p**0.5 * s_p * lam**0.5)
    assert by_name["column_inf"].rhs == pytest.approx(4.0 * m_p * lam)
    assert by_name["matrix_inf"].rhs == pytest.approx(4.0 * m_p * lam)
    assert by_name["matrix_l1"].rhs == pytest.approx(66.0 * (lam * m_p) ** 0.5 * s_p)


def test_oracle_tune_single_point_grid():
    path = scio_path(np.eye(4), (0.3,))
    lam, report = oracle_tune(path, np.eye(4))
    assert lam == 0.3
    assert report.frobenius == pytest.approx(0.3 * 2.0)


def test_oracle_tune_prefers_smaller_error():
    path = scio_path(np.eye(4), (0.5, 0.1))
    lam, report = oracle_tune(path, np.eye(4))
    assert lam == 0.1
    assert report.elementwise_inf == pytest.approx(0.1)


def test_oracle_tune_matches_exhaustive_scan():
    rng = np.random.default_rng(29)
    omega = make_toeplitz_precision(15, 0.5)
    sigma = invert_spd(omega)
    x = rng.standard_normal((120, 15)) @ np.linalg.cholesky(sigma).T
    pilot = (x - x.mean(axis=0)).T @ (x - x.mean(axis=0)) / x.shape[0]
    path = scio_path(symmetrize(pilot))
    lam, report = oracle_tune(path, omega)
    scan = [
        error_report(est.omega_tilde, omega).frobenius for est in path.estimates
    ]
    assert report.frobenius == pytest.approx(min(scan), abs=0)
    assert lam in set(float(v) for v in path.grid)


def test_oracle_tune_empty_path():
    path = scio_path(np.eye(2), (0.5,))
    empty = type(path)(grid=path.grid[:0], estimates=())
    with pytest.raises(EmptyPath):
        oracle_tune(empty, np.eye(2))
