import numpy as np
import pytest

from twotone.eigensolver import hermitian_eigh


def random_hermitian(rng, n):
    b = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return b + b.conj().T


@pytest.mark.parametrize("n", [1, 2, 3, 6, 14, 30, 62])
def test_matches_lapack(n):
    rng = np.random.default_rng(n)
    a = random_hermitian(rng, n)
    w, v = hermitian_eigh(a)
    w_ref = np.linalg.eigvalsh(a)
    scale = max(np.abs(a).max(), 1.0)
    assert np.abs(w - w_ref).max() < 1e-12 * scale
    assert np.abs(a @ v - v * w).max() < 1e-12 * scale
    assert np.abs(v.conj().T @ v - np.eye(n)).max() < 1e-12


def test_ascending_and_deterministic():
    rng = np.random.default_rng(123)
    a = random_hermitian(rng, 25)
    w1, v1 = hermitian_eigh(a)
    w2, v2 = hermitian_eigh(a)
    assert np.all(np.diff(w1) >= 0)
    assert np.array_equal(w1, w2)
    assert np.array_equal(v1, v2)


def test_degenerate_spectrum():
    a = np.diag([15.0, -15.0, 15.0, -15.0, 45.0, -45.0]).astype(complex)
    w, v = hermitian_eigh(a)
    assert np.allclose(w, [-45, -15, -15, 15, 15, 45], atol=1e-13)
    assert np.abs(a @ v - v * w).max() < 1e-12 * 45


def test_real_symmetric_and_diagonal():
    a = np.array([[2.0, 1.0], [1.0, 2.0]], dtype=complex)
    w, _ = hermitian_eigh(a)
    assert np.allclose(w, [1.0, 3.0], atol=1e-14)
    w, v = hermitian_eigh(np.diag([3.0, 1.0, 2.0]).astype(complex))
    assert np.allclose(w, [1.0, 2.0, 3.0], atol=0.0)
    assert np.abs(np.abs(v) - np.eye(3)[:, [1, 2, 0]]).max() == 0.0


def test_rejects_non_hermitian():
    with pytest.raises(ValueError, match="Hermitian"):
        hermitian_eigh(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_eigenvector_phase_convention():
    rng = np.random.default_rng(5)
    a = random_hermitian(rng, 12)
    _, v = hermitian_eigh(a)
    lead = v[np.argmax(np.abs(v), axis=0), np.arange(12)]
    assert np.abs(lead.imag).max() < 1e-14
    assert np.all(lead.real > 0)
