import numpy as np
import pytest

from logmaj import _backend, _fallback, linalg
from logmaj.generators import GenConfig, random_matrix, random_psd

BACKENDS = sorted(_backend.available_backends())


def test_fallback_always_available():
    assert "python" in BACKENDS
    assert _backend.BACKEND in BACKENDS


@pytest.mark.parametrize("name", BACKENDS)
@pytest.mark.parametrize("n", [1, 3, 8, 20])
def test_backends_agree_with_lapack(name, n):
    h = random_psd(GenConfig(n, n)) - 0.3 * np.eye(n)
    g = random_matrix(GenConfig(n + 50, n))
    with _backend.use_backend(name):
        d = linalg.hermitian_eig(h)
        s = linalg.singular_values(g)
        w = linalg.eigvals(g)
    assert np.allclose(d.eigenvalues, np.linalg.eigvalsh(h)[::-1], atol=1e-12)
    assert np.max(np.abs(d.reconstruct() - h)) <= 1e-11 * (1 + np.max(np.abs(h)))
    assert np.allclose(s**2, np.linalg.eigvalsh(g.conj().T @ g)[::-1], atol=1e-10 * (1 + s[0] ** 2))
    assert np.allclose(np.sort_complex(w), np.sort_complex(np.linalg.eigvals(g)), atol=1e-9)


@pytest.mark.skipif("compiled" not in BACKENDS, reason="extension not built")
def test_compiled_matches_fallback():
    h = random_psd(GenConfig(9, 12, spectrum_mode="clustered"))
    with _backend.use_backend("compiled"):
        wc = linalg.eigvalsh(h)
    with _backend.use_backend("python"):
        wp = linalg.eigvalsh(h)
    assert np.allclose(wc, wp, atol=1e-13)


def test_use_backend_restores():
    before = _backend.kernels
    with _backend.use_backend("python") as k:
        assert k is _fallback and _backend.BACKEND == "python"
    assert _backend.kernels is before


def test_use_backend_unknown():
    with pytest.raises(ValueError):
        with _backend.use_backend("fortran"):
            pass


def test_fallback_rotation_handles_tiny_pivot():
    # off-diagonal entry far below the diagonal gap must not overflow
    a = np.array([[1.0, 1e-300], [1e-300, 2.0]], dtype=complex)
    w, _, _ = _fallback.jacobi_eigh(a)
    assert sorted(w.real) == pytest.approx([1.0, 2.0])
