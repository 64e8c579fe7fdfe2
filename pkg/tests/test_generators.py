import numpy as np
import pytest

from logmaj import linalg
from logmaj.errors import BadSpectrum, ConfigError, InfeasiblePattern
from logmaj.generators import (
    GenConfig,
    derive_seed,
    gram_schmidt,
    haar_unitary,
    make_rng,
    nested_frame,
    random_descending,
    random_index_sequence,
    random_matrix,
    random_patterned_isometry,
    random_psd,
    random_psd_spectrum,
    random_strict_contraction,
)
from logmaj.bounds import nested_frame_det_bound
from logmaj.linalg import IndexSequence

from conftest import diag


def test_streams_are_keyed_by_path():
    assert derive_seed(1, 2, 3) == derive_seed(1, 2, 3)
    assert derive_seed(1, 2, 3) != derive_seed(1, 3, 2)
    assert make_rng(5, 1).random() == make_rng(5, 1).random()
    assert make_rng(5, 1).random() != make_rng(5, 2).random()


def test_config_validation():
    with pytest.raises(ConfigError):
        GenConfig(0, 0)
    with pytest.raises(ConfigError):
        GenConfig(0, 2, contraction_margin=1.0)
    with pytest.raises(ConfigError):
        GenConfig(0, 2, field="quaternion")
    with pytest.raises(BadSpectrum):
        GenConfig(0, 2, spectrum_mode="prescribed", spectrum=(1.0, 2.0))
    with pytest.raises(BadSpectrum):
        GenConfig(0, 2, spectrum_mode="prescribed", spectrum=(1.0,))


def test_prescribed_identity_spectrum():
    a = random_psd(GenConfig(1, 5, spectrum_mode="prescribed", spectrum=(1.0,) * 5))
    assert np.max(np.abs(a - np.eye(5))) <= 1e-10


def test_rank_deficient_has_exact_zero():
    lam = linalg.clamp_spectrum(linalg.eigvalsh(random_psd(GenConfig(4, 3, spectrum_mode="rank-deficient"))))
    assert lam[-1] == 0.0


def test_psd_spectrum_round_trip():
    cfg = GenConfig(42, 4)
    assert np.allclose(linalg.eigvalsh(random_psd(cfg)), random_psd_spectrum(cfg), atol=1e-9)


@pytest.mark.parametrize("mode", ["uniform", "clustered", "rank-deficient"])
def test_spectrum_modes_descending(mode):
    for seed in range(20):
        s = random_psd_spectrum(GenConfig(seed, 6, spectrum_mode=mode))
        assert np.all(s >= 0) and np.all(np.diff(s) <= 0)


def test_real_field_is_real():
    assert np.all(random_psd(GenConfig(3, 4, field="real")).imag == 0)
    assert np.all(random_matrix(GenConfig(3, 4, field="real")).imag == 0)


def test_strict_contraction_margin():
    a = random_strict_contraction(GenConfig(7, 5, contraction_margin=0.05))
    assert linalg.singular_values(a)[0] <= 0.95
    tiny = random_strict_contraction(GenConfig(7, 5, contraction_margin=0.999))
    assert linalg.singular_values(tiny)[0] <= 0.001 + 1e-15


def test_generators_reproducible():
    cfg = GenConfig(123, 4)
    assert np.array_equal(random_psd(cfg), random_psd(cfg))
    assert np.array_equal(random_strict_contraction(cfg), random_strict_contraction(cfg))
    assert np.array_equal(random_patterned_isometry(4, 2, 2, 9), random_patterned_isometry(4, 2, 2, 9))


def test_haar_unitary():
    u = haar_unitary(make_rng(0), 6)
    assert np.max(np.abs(u.conj().T @ u - np.eye(6))) <= 1e-12


def test_patterned_isometry():
    u = random_patterned_isometry(1, 1, 1, 0)
    assert abs(abs(u[0, 0]) - 1) <= 1e-15
    u = random_patterned_isometry(3, 2, 2, 5)
    assert u.shape == (3, 2) and u[2, 0] == 0
    assert np.max(np.abs(u.conj().T @ u - np.eye(2))) <= 1e-12


def test_patterned_isometry_infeasible():
    with pytest.raises(InfeasiblePattern):
        random_patterned_isometry(3, 4, 1, 0)
    with pytest.raises(InfeasiblePattern):
        random_patterned_isometry(3, 2, 0, 0)


def test_gram_schmidt_keeps_zero_pattern():
    x = np.array([[1, 2], [1, 0], [0, 5]], dtype=complex)
    q = gram_schmidt(x)
    assert q[2, 0] == 0
    assert np.max(np.abs(q.conj().T @ q - np.eye(2))) <= 1e-14


def test_nested_frame_canonical():
    d = linalg.hermitian_eig(random_psd(GenConfig(2, 4)))
    f = nested_frame(d, IndexSequence.head(4, 3), 0, canonical=True)
    assert np.array_equal(f, d.frame[:, :3])


def test_nested_frame_orthonormal_and_bound():
    d = linalg.hermitian_eig(diag(3, 2, 1))
    seq = IndexSequence(3, (1, 3))
    f = nested_frame(d, seq, 3)
    assert np.max(np.abs(f.conj().T @ f - np.eye(2))) <= 1e-10
    assert nested_frame_det_bound(diag(3, 2, 1), seq, f).satisfied


def test_random_descending_and_indices():
    rng = make_rng(8)
    vals = random_descending(rng, 5, zeros=True)
    assert vals[-1] == 0.0 and vals == sorted(vals, reverse=True)
    seq = random_index_sequence(rng, 7)
    assert seq.n == 7 and 1 <= seq.k <= 7
