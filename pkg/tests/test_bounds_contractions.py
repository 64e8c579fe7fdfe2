import numpy as np
import pytest

from logmaj import bounds
from logmaj.bounds import contractions as ct
from logmaj.errors import DimensionMismatch, IndexOutOfRange, NotContraction, NotStrictContraction
from logmaj.linalg import IndexSequence, all_subsequences

from conftest import diag


def links(r):
    return [r.lhs, *r.rhs_terms]


def test_hua_identity_examples(contraction_pair):
    z = np.zeros((3, 3))
    assert bounds.hua_identity_residual(z, z).residual == 0.0
    assert bounds.hua_identity_residual(diag(0.5), diag(0.2)).residual <= 1e-15
    a, b = contraction_pair(5)
    assert bounds.hua_identity_residual(a, b).residual <= 1e-10


def test_hua_matrices_scalar():
    # n=1: F = 1 - b^2, H = (a-b)^2 / (1-a^2)
    f, h = ct.hua_matrices(diag(0.5), diag(0.2))
    assert f[0, 0].real == pytest.approx(0.96)
    assert h[0, 0].real == pytest.approx(0.09 / 0.75)


def test_sum_identity_examples(matrix_pair):
    z = np.zeros((2, 2))
    assert bounds.sum_identity_residual(z, z).residual == 0.0
    # 1 + 1 = 9/5 + 1/5
    assert bounds.sum_identity_residual(diag(1.0), diag(2.0)).residual <= 1e-15
    a, b = matrix_pair(5)
    assert bounds.sum_identity_residual(a, b).residual <= 1e-10


def test_hua_det_examples(contraction_pair):
    a, _ = contraction_pair(3)
    r = bounds.hua_det_inequality(a, a)
    assert abs(r.part("hua").margin) <= 1e-12
    r = bounds.hua_det_inequality(diag(0.0), diag(0.5))
    assert links(r.part("hua")) == pytest.approx([1, 1])
    a, b = contraction_pair(4)
    assert bounds.hua_det_inequality(a, b).margin >= 0


def test_hua_det_needs_strict():
    with pytest.raises(NotStrictContraction) as exc:
        bounds.hua_det_inequality(np.eye(2), np.zeros((2, 2)))
    assert exc.value.predicate == "NotStrictContraction"


def test_hua_reversal_examples(matrix_pair):
    z = np.zeros((2, 2))
    assert links(bounds.hua_reversal_det(z, z)) == pytest.approx([1, 1])
    # (1-2)^2 = 1 <= 2*5 - 9, stored as 2*5 >= 1 + 9
    assert links(bounds.hua_reversal_det(diag(1.0), diag(2.0))) == pytest.approx([10, 10])
    assert bounds.hua_reversal_det(*matrix_pair(4)).satisfied


def test_marcus_examples(contraction_pair):
    z = np.zeros((3, 3))
    r = bounds.marcus_bounds(z, z, 2)
    assert links(r.part("eigenvalue")) == [1, 1] and links(r.part("singular")) == [1, 1]
    r = bounds.marcus_bounds(diag(0.6), diag(0.6), 1)
    assert links(r.part("eigenvalue")) == pytest.approx([0.64**2, 0.64**2])
    assert links(r.part("singular")) == pytest.approx([0.64**2, 0.64**2])
    r = bounds.marcus_bounds(*contraction_pair(4), 2)
    assert r.satisfied and len(r.parts) == 3


def test_marcus_needs_contraction():
    with pytest.raises(NotContraction):
        bounds.marcus_bounds(2 * np.eye(2), np.zeros((2, 2)), 1)
    with pytest.raises(IndexOutOfRange):
        bounds.marcus_bounds(np.zeros((2, 2)), np.zeros((2, 2)), 3)


def test_weyl_relation():
    r = bounds.weyl_tail_relation(diag(3, -2, 1), 2)
    assert abs(r.margin) <= 1e-12
    assert bounds.weyl_tail_relation([[0, 1], [0, 0]], 1).satisfied


def test_contraction_main_examples(contraction_pair):
    z = np.zeros((3, 3))
    for seq in all_subsequences(3):
        assert links(bounds.contraction_main_bound(z, z, seq)) == [1, 1]
    a1, a2 = 0.5, 0.3
    r = bounds.contraction_main_bound(diag(a1, a2), diag(a1, a2), IndexSequence(2, (1,)))
    assert links(r) == pytest.approx([(1 - a2**2) ** 2, (1 - a1**2) * (1 - a2**2)])
    a, b = contraction_pair(4)
    for seq in all_subsequences(4):
        if seq.k <= 3:
            assert bounds.contraction_main_bound(a, b, seq).satisfied


def test_hua_strengthened_examples(contraction_pair):
    a, _ = contraction_pair(3)
    assert abs(bounds.hua_strengthened_det(a, a).margin) <= 1e-12
    r = bounds.hua_strengthened_det(diag(0.1), diag(0.5))
    assert links(r) == pytest.approx([0.95**2, 0.99 * 0.75 + 0.4**2])
    assert bounds.hua_strengthened_det(*contraction_pair(3)).satisfied


def test_reversal_bound_examples(matrix_pair):
    z = np.zeros((3, 3))
    for seq in all_subsequences(3):
        assert links(bounds.reversal_bound(z, z, seq)) == [1, 1]
    r = bounds.reversal_bound(diag(1.0), diag(2.0), IndexSequence(1, (1,)))
    assert links(r) == pytest.approx([10, 10])
    a, b = matrix_pair(4)
    assert all(bounds.reversal_bound(a, b, s).satisfied for s in all_subsequences(4) if s.k <= 3)


def test_reversal_det_examples(matrix_pair):
    z = np.zeros((2, 2))
    assert links(bounds.reversal_det(z, z)) == [1, 1]
    assert links(bounds.reversal_det(diag(0.0), diag(3.0))) == pytest.approx([10, 10])
    assert bounds.reversal_det(*matrix_pair(3)).satisfied


def test_shape_errors():
    with pytest.raises(DimensionMismatch):
        bounds.reversal_det(np.zeros((2, 2)), np.zeros((3, 3)))
