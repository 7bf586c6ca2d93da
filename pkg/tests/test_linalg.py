import numpy as np
import numpy.testing as npt
import pytest

from wsprec import (
    DimensionMismatch,
    DimensionOverflow,
    NotPositiveDefinite,
    as_symmetric,
    cholesky,
    invert_spd,
    is_spd,
    kronecker,
    matrix_norm,
    sym_eigen,
    symmetrize,
)


def test_cholesky_identity():
    npt.assert_array_equal(cholesky(np.eye(3)), np.eye(3))


def test_cholesky_hand_checked_2x2():
    s = np.array([[4.0, 2.0], [2.0, 5.0]])
    lower = cholesky(s)
    npt.assert_allclose(lower, [[2.0, 0.0], [1.0, 2.0]])
    npt.assert_allclose(lower @ lower.T, s)


def test_cholesky_rejects_indefinite():
    with pytest.raises(NotPositiveDefinite):
        cholesky(np.array([[1.0, 2.0], [2.0, 1.0]]))


def test_is_spd():
    assert is_spd(np.eye(2))
    assert not is_spd(np.array([[1.0, 2.0], [2.0, 1.0]]))


def test_sym_eigen_diagonal():
    decomp = sym_eigen(np.diag([2.0, 1.0]))
    npt.assert_allclose(decomp.eigenvalues, [1.0, 2.0])


def test_sym_eigen_reflection():
    decomp = sym_eigen(np.array([[0.0, 1.0], [1.0, 0.0]]))
    npt.assert_allclose(decomp.eigenvalues, [-1.0, 1.0])


def test_sym_eigen_recomposition():
    rng = np.random.default_rng(7)
    s = symmetrize(rng.standard_normal((5, 5)))
    decomp = sym_eigen(s)
    assert np.abs(decomp.reconstruct() - s).max() <= 1e-10


@pytest.mark.parametrize(
    "matrix,kind,expected",
    [
        ([[2.0, 0.0], [0.0, 1.0]], "spectral", 2.0),
        ([[1.0, -3.0], [2.0, 0.0]], "l1", 3.0),
        ([[1.0, 2.0], [2.0, 1.0]], "elementwise_inf", 2.0),
        ([[3.0, 0.0], [0.0, 0.0]], "frobenius", 3.0),
        ([[3.0, 0.0], [0.0, 0.0]], "scaled_frobenius", 4.5),
    ],
)
def test_matrix_norm_values(matrix, kind, expected):
    assert matrix_norm(np.array(matrix), kind) == pytest.approx(expected, abs=1e-12)


def test_matrix_norm_rejects_unknown_kind():
    with pytest.raises(ValueError):
        matrix_norm(np.eye(2), "operator")


def test_spectral_at_most_l1_for_symmetric():
    # Gershgorin: every eigenvalue lies in a disc of radius bounded by
    # the largest absolute column sum.
    rng = np.random.default_rng(21)
    for _ in range(25):
        s = symmetrize(rng.standard_normal((6, 6)))
        assert matrix_norm(s, "spectral") <= matrix_norm(s, "l1") + 1e-12


def test_kronecker_identities():
    npt.assert_array_equal(kronecker(np.eye(2), np.eye(3)), np.eye(6))


def test_kronecker_scalar_factor():
    b = np.array([[1.0, 2.0], [3.0, 4.0]])
    npt.assert_array_equal(kronecker(np.array([[2.0]]), b), 2.0 * b)


def test_kronecker_hand_checked():
    a = np.array([[1.0, 1.0], [0.0, 1.0]])
    npt.assert_array_equal(
        kronecker(a, np.array([[2.0]])), np.array([[2.0, 2.0], [0.0, 2.0]])
    )


def test_kronecker_dimension_cap():
    with pytest.raises(DimensionOverflow):
        kronecker(np.eye(200), np.eye(200))


def test_invert_spd_identity_and_diagonal():
    npt.assert_array_equal(invert_spd(np.eye(4)), np.eye(4))
    npt.assert_allclose(invert_spd(np.diag([2.0, 4.0])), np.diag([0.5, 0.25]))


def test_invert_spd_toeplitz_residual():
    import scipy.linalg

    s = scipy.linalg.toeplitz(0.5 ** np.arange(6))
    inv = invert_spd(s)
    assert np.abs(s @ inv - np.eye(6)).max() <= 1e-8


def test_invert_spd_involution():
    rng = np.random.default_rng(3)
    a = rng.standard_normal((8, 8))
    s = a @ a.T + 8.0 * np.eye(8)
    assert np.abs(invert_spd(invert_spd(s)) - s).max() <= 1e-6


def test_as_symmetric_rejects_nonsquare():
    with pytest.raises(DimensionMismatch):
        as_symmetric(np.ones((2, 3)))


def test_as_symmetric_rejects_asymmetric():
    with pytest.raises(DimensionMismatch):
        as_symmetric(np.array([[1.0, 0.5], [0.0, 1.0]]))


def test_as_symmetric_mirrors_roundoff():
    s = np.array([[1.0, 0.5 + 1e-12], [0.5, 1.0]])
    out = as_symmetric(s)
    npt.assert_array_equal(out, out.T)
