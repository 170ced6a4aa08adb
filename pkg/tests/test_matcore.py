import numpy as np
import pytest

from buresgeo import matcore
from conftest import random_density, random_hermitian, random_unitary


class TestSpectralDecompose:
    def test_identity(self):
        dec = matcore.spectral_decompose(np.eye(2))
        np.testing.assert_allclose(dec.eigenvalues, [1.0, 1.0])
        v = dec.eigenvectors
        np.testing.assert_allclose(v.conj().T @ v, np.eye(2), atol=1e-14)

    def test_diagonal(self):
        dec = matcore.spectral_decompose(np.diag([0.25, 0.75]))
        np.testing.assert_allclose(dec.eigenvalues, [0.25, 0.75])

    def test_random_reconstruction(self):
        rng = np.random.default_rng(1)
        for _ in range(20):
            h = random_hermitian(rng, 4)
            dec = matcore.spectral_decompose(h)
            assert np.max(np.abs(dec.reconstruct() - h)) < 1e-12 * max(
                np.max(np.abs(h)), 1.0)
            assert np.all(np.diff(dec.eigenvalues) >= 0)

    def test_involution_stable(self):
        rng = np.random.default_rng(2)
        for n in (2, 3, 5, 8):
            h = random_hermitian(rng, n)
            first = matcore.spectral_decompose(h)
            second = matcore.spectral_decompose(first.reconstruct())
            np.testing.assert_allclose(second.eigenvalues, first.eigenvalues,
                                       atol=1e-12 * max(np.max(np.abs(h)), 1.0))

    def test_rejects_non_hermitian_with_residual(self):
        bad = np.array([[0.0, 1.0], [0.0, 0.0]])
        with pytest.raises(matcore.NotHermitianError, match="1.000e"):
            matcore.spectral_decompose(bad)

    def test_rejects_nonpositive_tol(self):
        with pytest.raises(ValueError, match="positive"):
            matcore.spectral_decompose(np.eye(2), tol=0.0)


class TestHermitianFunction:
    def test_sqrt_identity(self):
        out = matcore.sqrtm_psd(np.eye(3))
        np.testing.assert_allclose(out, np.eye(3), atol=1e-14)

    def test_sqrt_diagonal(self):
        out = matcore.sqrtm_psd(np.diag([4.0, 9.0]))
        np.testing.assert_allclose(out, np.diag([2.0, 3.0]), atol=1e-14)

    def test_inverse_sqrt_on_support(self):
        # Pseudo-inverse semantics: the expected block values follow from
        # the oracle P P^+ P = P on the rank-deficient input.
        p = np.diag([0.5, 0.0])
        out = matcore.inv_sqrtm_psd(p)
        np.testing.assert_allclose(out, np.diag([1.0 / np.sqrt(0.5), 0.0]),
                                   atol=1e-14)
        pinv = out @ out
        np.testing.assert_allclose(p @ pinv @ p, p, atol=1e-14)

    def test_sqrt_rejects_negative_spectrum(self):
        with pytest.raises(matcore.NotPositiveSemidefiniteError,
                           match="not positive semidefinite"):
            matcore.sqrtm_psd(np.diag([1.0, -0.5]))

    def test_small_negatives_clamped(self):
        out = matcore.sqrtm_psd(np.diag([1.0, -1e-15]))
        np.testing.assert_allclose(out, np.diag([1.0, 0.0]), atol=1e-14)

    def test_sqrt_squares_back(self):
        rng = np.random.default_rng(3)
        for _ in range(100):
            n = int(rng.integers(2, 17))
            g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
            h = g @ g.conj().T
            root = matcore.sqrtm_psd(h)
            assert np.max(np.abs(root @ root - h)) < 1e-10 * np.max(np.abs(h))


class TestPolarPositive:
    def test_identity(self):
        np.testing.assert_allclose(matcore.polar_positive(np.eye(2)), np.eye(2),
                                   atol=1e-14)

    def test_absolute_values(self):
        out = matcore.polar_positive(np.diag([-2.0, 3.0]))
        np.testing.assert_allclose(out, np.diag([2.0, 3.0]), atol=1e-14)

    def test_matches_sandwich_root(self):
        # |sqrt(r1) sqrt(r2)| equals the composed spectral route
        # sqrt(sqrt(r1) r2 sqrt(r1)).
        rng = np.random.default_rng(4)
        for _ in range(25):
            r1 = random_density(rng, 2)
            r2 = random_density(rng, 2)
            s1 = matcore.sqrtm_psd(r1)
            lhs = matcore.polar_positive(s1 @ matcore.sqrtm_psd(r2))
            rhs = matcore.sqrtm_psd(s1 @ r2 @ s1)
            assert np.max(np.abs(lhs - rhs)) < 1e-12

    def test_result_is_psd(self):
        rng = np.random.default_rng(5)
        for _ in range(50):
            n = int(rng.integers(2, 9))
            a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
            w = np.linalg.eigvalsh(matcore.polar_positive(a))
            assert w[0] >= -1e-12 * max(np.max(np.abs(a)) ** 2, 1.0)


def test_require_hermitian_symmetrizes():
    rng = np.random.default_rng(6)
    h = random_hermitian(rng, 3)
    jittered = h + 1e-13 * np.array([[0, 1, 0], [0, 0, 0], [0, 0, 0]])
    out = matcore.require_hermitian(jittered)
    assert np.max(np.abs(out - out.conj().T)) == 0.0


def test_basis_covariance_of_spectral_functions():
    # Degenerate eigenvectors are solver-chosen; spectral functions must not
    # depend on that choice.
    rng = np.random.default_rng(7)
    h = np.diag([0.5, 0.5, 2.0]).astype(complex)
    u = random_unitary(rng, 3)
    rotated = u @ h @ u.conj().T
    lhs = matcore.sqrtm_psd(rotated)
    rhs = u @ matcore.sqrtm_psd(h) @ u.conj().T
    assert np.max(np.abs(lhs - rhs)) < 1e-13
