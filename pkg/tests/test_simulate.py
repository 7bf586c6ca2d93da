import numpy as np
import numpy.testing as npt
import pytest

from wsprec import (
    BadDimension,
    NotCorrelation,
    NuTooSmall,
    RhoOutOfRange,
    TruthSpec,
    cholesky,
    column_lq_norms,
    correlation_of_inverse,
    diamond_block,
    kronecker,
    make_diamond_precision,
    make_toeplitz_precision,
    replication_rng,
    sample_gaussian,
    sample_matrix_normal,
    sample_mvt,
    sample_nonparanormal,
    sparsity_summary,
    toeplitz_sparsity_limit,
)


def test_toeplitz_small_case():
    npt.assert_allclose(
        make_toeplitz_precision(3, 0.5),
        [[1.0, 0.5, 0.25], [0.5, 1.0, 0.5], [0.25, 0.5, 1.0]],
    )


def test_toeplitz_zero_rho_is_identity():
    npt.assert_array_equal(make_toeplitz_precision(5, 0.0), np.eye(5))


def test_toeplitz_negative_rho_alternates_exactly():
    omega = make_toeplitz_precision(4, -0.5)
    npt.assert_array_equal(omega[0], [1.0, -0.5, 0.25, -0.125])


def test_toeplitz_large_dense_still_pd():
    cholesky(make_toeplitz_precision(100, 0.8))


def test_toeplitz_rejects_unit_rho():
    with pytest.raises(RhoOutOfRange):
        make_toeplitz_precision(5, 1.0)


def test_diamond_zero_rho_is_identity():
    npt.assert_array_equal(make_diamond_precision(8, 0.0), np.eye(8))


def test_diamond_block_displayed_entries():
    block = diamond_block(0.5)
    assert block[0, 3] == 0.5
    assert block[1, 2] == 0.0
    omega = make_diamond_precision(4, 0.5)
    assert np.abs(block @ omega - np.eye(4)).max() <= 1e-10


def test_diamond_rho_limit():
    with pytest.raises(RhoOutOfRange):
        make_diamond_precision(8, 0.71)
    make_diamond_precision(8, 0.7)


def test_diamond_needs_multiple_of_four():
    with pytest.raises(BadDimension):
        make_diamond_precision(6, 0.3)


def test_correlation_of_inverse_identity():
    npt.assert_array_equal(correlation_of_inverse(np.eye(4)), np.eye(4))


def test_correlation_of_inverse_unit_diagonal_spd():
    c = correlation_of_inverse(make_toeplitz_precision(6, 0.5))
    npt.assert_array_equal(np.diag(c), np.ones(6))
    assert np.linalg.eigvalsh(c)[0] > 0


def test_truth_spec_inverse_pairs():
    for name in ("toeplitz", "diamond_block", "correlation_of_inverse"):
        p = 8
        omega, sigma = TruthSpec(constructor=name, p=p, rho=0.4).build()
        assert np.abs(omega @ sigma - np.eye(p)).max() <= 1e-8


def test_truth_spec_rejects_unknown_constructor():
    with pytest.raises(ValueError):
        TruthSpec(constructor="banded", p=4, rho=0.1).build()


def test_sample_gaussian_single_row():
    x = sample_gaussian(1, np.eye(3), replication_rng(0, 0))
    assert x.shape == (1, 3)
    assert np.isfinite(x).all()


def test_sample_gaussian_determinism():
    a = sample_gaussian(5, np.eye(2), replication_rng(42, 3))
    b = sample_gaussian(5, np.eye(2), replication_rng(42, 3))
    npt.assert_array_equal(a, b)
    c = sample_gaussian(5, np.eye(2), replication_rng(42, 4))
    assert np.any(a != c)


def test_sample_gaussian_identity_monte_carlo():
    errors = []
    for rep in range(20):
        x = sample_gaussian(400, np.eye(5), replication_rng(100, rep))
        emp = (x - x.mean(axis=0)).T @ (x - x.mean(axis=0)) / x.shape[0]
        errors.append(np.abs(emp - np.eye(5)).max())
    assert np.median(errors) <= 5.0 / np.sqrt(400)


def test_mvt_matches_gaussian_at_huge_nu():
    sigma = correlation_of_inverse(make_toeplitz_precision(5, 0.5))
    x_t = sample_mvt(200, sigma, 1e6, replication_rng(7, 0))
    x_g = sample_gaussian(200, sigma, replication_rng(7, 0))
    # same normal draws, chi-square mixing within O(1/sqrt(nu)) of one
    assert np.abs(x_t - x_g).max() <= 0.05


def test_mvt_population_covariance_is_sigma():
    sigma = correlation_of_inverse(make_toeplitz_precision(10, 0.5))
    errors = []
    for rep in range(20):
        x = sample_mvt(2000, sigma, 3.5, replication_rng(55, rep))
        emp = (x - x.mean(axis=0)).T @ (x - x.mean(axis=0)) / x.shape[0]
        errors.append(np.abs(emp - sigma).max())
    assert np.median(errors) <= 0.2


def test_mvt_rejects_small_nu():
    with pytest.raises(NuTooSmall):
        sample_mvt(10, np.eye(2), 2.0, replication_rng(0, 0))


def test_nonparanormal_standardization():
    sigma = correlation_of_inverse(make_toeplitz_precision(6, 0.5))
    x = sample_nonparanormal(2000, sigma, seed=replication_rng(9, 0))
    means = x.mean(axis=0)
    variances = x.var(axis=0)
    assert np.abs(means).max() <= 0.1
    assert variances.min() >= 0.7 and variances.max() <= 1.3


def test_nonparanormal_requires_correlation_scale():
    with pytest.raises(NotCorrelation):
        sample_nonparanormal(50, np.diag([2.0, 1.0]), seed=replication_rng(0, 0))


def test_nonparanormal_determinism():
    sigma = np.eye(3)
    a = sample_nonparanormal(10, sigma, seed=replication_rng(1, 1))
    b = sample_nonparanormal(10, sigma, seed=replication_rng(1, 1))
    npt.assert_array_equal(a, b)


def test_matrix_normal_scalar_case():
    x = sample_matrix_normal(4000, np.array([[4.0]]), np.array([[0.25]]), replication_rng(2, 0))
    assert x.shape == (4000, 1, 1)
    variance = x.ravel().var()
    assert 0.85 <= variance <= 1.15


def test_matrix_normal_vec_covariance():
    a = make_toeplitz_precision(3, 0.5)
    b = np.array([[1.0, 0.3], [0.3, 1.0]])
    x = sample_matrix_normal(5000, a, b, replication_rng(13, 0))
    flat = np.stack([sample.reshape(-1, order="F") for sample in x])
    emp = flat.T @ flat / flat.shape[0]
    assert np.abs(emp - kronecker(a, b)).max() <= 0.15


def test_sparsity_identity():
    summary = sparsity_summary(np.eye(7), 0.5)
    assert summary.s_p == 1.0
    assert summary.M_p == 1.0


def test_sparsity_q_zero_counts_support():
    omega = np.eye(4)
    omega[0, 1] = omega[1, 0] = 0.5
    npt.assert_array_equal(column_lq_norms(omega, 0.0), [2, 2, 1, 1])


def test_sparsity_toeplitz_middle_column():
    omega = make_toeplitz_precision(50, 0.5)
    direct = sum(0.5 ** (0.5 * abs(k - 25)) for k in range(50))
    summary = sparsity_summary(omega, 0.5, toeplitz_rho=0.5)
    assert summary.s_p == pytest.approx(direct, rel=1e-12)
    assert summary.s_p < 5.8284
    assert summary.s_p_limit == pytest.approx((1 + np.sqrt(0.5)) / (1 - np.sqrt(0.5)))


def test_sparsity_limit_edge_cases():
    assert toeplitz_sparsity_limit(0.0, 0.5) == 1.0
    assert toeplitz_sparsity_limit(1.0, 0.5) == np.inf


def test_sparsity_rejects_q_of_one():
    with pytest.raises(ValueError):
        sparsity_summary(np.eye(3), 1.0)


def test_replication_rng_streams_are_stable():
    a = replication_rng(5, 0).standard_normal(4)
    b = replication_rng(5, 0).standard_normal(4)
    c = replication_rng(5, 1).standard_normal(4)
    npt.assert_array_equal(a, b)
    assert np.any(a != c)
