"""Hua and Marcus type determinant and singular-value inequalities for
square (strict) contractions, their reversals, and the two matrix identities
behind them.

Inequalities stated with ``<=`` are reported flipped, with all terms on each
side nonnegative: the reversals report ``lhs = det(I+A*A) det(I+B*B)`` and move
the subtracted terms to the right.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numpy.typing import ArrayLike

from ..errors import IndexOutOfRange, NotContraction, NotStrictContraction
from ..linalg import (
    IndexSequence,
    as_matrix,
    clamp_spectrum,
    determinant,
    eigvals,
    eigvalsh,
    hermitian_part,
    identity,
    max_abs,
    same_shape,
    singular_values,
    solve_hermitian,
)
from .reports import DEFAULT_TOL, IDENTITY_TOL, BoundReport, IdentityReport, chain, combine, identity_report

STRICT_MARGIN = 1e-6
prod = math.prod


def _adj(a: np.ndarray) -> np.ndarray:
    return a.conj().T


def require_contraction(a: np.ndarray, name: str, strict: bool) -> float:
    top = float(singular_values(a)[0])
    if strict and top > 1.0 - STRICT_MARGIN:
        raise NotStrictContraction(f"sigma_1({name}) = {top:.12g} > 1 - {STRICT_MARGIN:g}")
    if not strict and top > 1.0 + 1e-10:
        raise NotContraction(f"sigma_1({name}) = {top:.12g} > 1")
    return top


def _square_pair(a: ArrayLike, b: ArrayLike) -> tuple[np.ndarray, np.ndarray, int]:
    a = as_matrix(a)
    b = as_matrix(b)
    return a, b, same_shape(a, b)


def _strict_pair(a: ArrayLike, b: ArrayLike) -> tuple[np.ndarray, np.ndarray, int]:
    a, b, n = _square_pair(a, b)
    require_contraction(a, "A", strict=True)
    require_contraction(b, "B", strict=True)
    return a, b, n


def _gram_eigs(a: np.ndarray) -> list[float]:
    """Descending eigenvalues of ``A*A``."""
    return clamp_spectrum(eigvalsh(hermitian_part(_adj(a) @ a)))


def _idx(n: int, seq: IndexSequence) -> list[int]:
    if seq.n != n:
        raise IndexOutOfRange(f"index sequence over 1..{seq.n} for n={n}")
    return seq.zero_based


# ---------------------------------------------------------------------------
# identities


def hua_matrices(a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """``F = I - B*B`` and ``H = (A-B)* (I - AA*)^{-1} (A-B)``, both Hermitian."""
    n = a.shape[0]
    eye = identity(n)
    d = a - b
    f = eye - _adj(b) @ b
    h = _adj(d) @ solve_hermitian(eye - a @ _adj(a), d)
    return hermitian_part(f), hermitian_part(h)


def hua_identity_residual(a: ArrayLike, b: ArrayLike, tol: float = IDENTITY_TOL) -> IdentityReport:
    """Residual of ``F + H = (I - B*A)(I - A*A)^{-1}(I - A*B)``."""
    a, b, n = _strict_pair(a, b)
    eye = identity(n)
    f, h = hua_matrices(a, b)
    left = f + h
    right = (eye - _adj(b) @ a) @ solve_hermitian(eye - _adj(a) @ a, eye - _adj(a) @ b)
    return identity_report("hua_identity_residual", max_abs(left - right), max(max_abs(left), max_abs(right)), tol)


def sum_identity_residual(a: ArrayLike, b: ArrayLike, tol: float = IDENTITY_TOL) -> IdentityReport:
    """Residual of ``I + A*A = P + Q`` with
    ``P = (A+B)*(I+BB*)^{-1}(A+B)`` and ``Q = (I-A*B)(I+B*B)^{-1}(I-A*B)*``."""
    a, b, n = _square_pair(a, b)
    eye = identity(n)
    s = a + b
    m = eye - _adj(a) @ b
    p = _adj(s) @ solve_hermitian(eye + b @ _adj(b), s)
    q = m @ solve_hermitian(eye + _adj(b) @ b, _adj(m))
    left = eye + _adj(a) @ a
    return identity_report("sum_identity_residual", max_abs(left - p - q), max(max_abs(left), max_abs(p), max_abs(q)), tol)


# ---------------------------------------------------------------------------
# determinant forms


@dataclass(frozen=True)
class DetTerms:
    """Real scalars shared by the determinant inequalities."""

    n: int
    det_ia: float  # det(I - A*A)
    det_ib: float  # det(I - B*B)
    det_m: float  # |det(I - A*B)|
    det_diff: float  # |det(A - B)|
    det_pa: float  # det(I + A*A)
    det_pb: float  # det(I + B*B)
    det_sum: float  # |det(A + B)|

    @classmethod
    def of(cls, a: np.ndarray, b: np.ndarray) -> "DetTerms":
        n = a.shape[0]
        eye = identity(n)
        aa = _adj(a) @ a
        bb = _adj(b) @ b
        return cls(
            n,
            determinant(hermitian_part(eye - aa)).real,
            determinant(hermitian_part(eye - bb)).real,
            abs(determinant(eye - _adj(a) @ b)),
            abs(determinant(a - b)),
            determinant(hermitian_part(eye + aa)).real,
            determinant(hermitian_part(eye + bb)).real,
            abs(determinant(a + b)),
        )


def hua_det_terms(t: DetTerms, tol: float = DEFAULT_TOL) -> BoundReport:
    lhs = t.det_m**2
    base = t.det_ia * t.det_ib
    return combine(
        "hua_det_inequality",
        [
            chain("hua_det_inequality.hua", [lhs, base + t.det_diff**2], tol),
            chain("hua_det_inequality.weak", [lhs, base], tol),
        ],
        tol,
    )


def hua_det_inequality(a: ArrayLike, b: ArrayLike, tol: float = DEFAULT_TOL) -> BoundReport:
    """``|det(I-A*B)|^2 >= det(I-A*A) det(I-B*B) + |det(A-B)|^2`` (part ``hua``) and without the last term (``weak``)."""
    a, b, _ = _strict_pair(a, b)
    return hua_det_terms(DetTerms.of(a, b), tol)


def hua_reversal_terms(t: DetTerms, tol: float = DEFAULT_TOL) -> BoundReport:
    return chain("hua_reversal_det", [t.det_pa * t.det_pb, t.det_m**2 + t.det_sum**2], tol)


def hua_reversal_det(a: ArrayLike, b: ArrayLike, tol: float = DEFAULT_TOL) -> BoundReport:
    """``det(I+A*A) det(I+B*B) >= |det(I-A*B)|^2 + |det(A+B)|^2`` for any square ``A, B``."""
    a, b, _ = _square_pair(a, b)
    return hua_reversal_terms(DetTerms.of(a, b), tol)


def hua_strengthened_terms(t: DetTerms, tol: float = DEFAULT_TOL) -> BoundReport:
    base = t.det_ia * t.det_ib
    rhs = base + t.det_diff**2 + (2.0**t.n - 2.0) * math.sqrt(max(base, 0.0)) * t.det_diff
    return chain("hua_strengthened_det", [t.det_m**2, rhs], tol)


def hua_strengthened_det(a: ArrayLike, b: ArrayLike, tol: float = DEFAULT_TOL) -> BoundReport:
    """Hua's inequality with the extra ``(2^n-2) sqrt(det(I-A*A) det(I-B*B)) |det(A-B)|`` term."""
    a, b, _ = _strict_pair(a, b)
    return hua_strengthened_terms(DetTerms.of(a, b), tol)


def reversal_det_terms(t: DetTerms, tol: float = DEFAULT_TOL) -> BoundReport:
    lhs = t.det_pa * t.det_pb
    weak = t.det_m**2 + t.det_sum**2
    strong = weak + (2.0**t.n - 2.0) * t.det_m * t.det_sum
    return combine(
        "reversal_det",
        [chain("reversal_det.strong", [lhs, strong], tol), chain("reversal_det.weak", [lhs, weak], tol)],
        tol,
    )


def reversal_det(a: ArrayLike, b: ArrayLike, tol: float = DEFAULT_TOL) -> BoundReport:
    """``det(I+A*A) det(I+B*B) >= |det(I-A*B)|^2 + |det(A+B)|^2 + (2^n-2)|det(I-A*B)||det(A+B)|`` (``strong``), and without the last term (``weak``)."""
    a, b, _ = _square_pair(a, b)
    return reversal_det_terms(DetTerms.of(a, b), tol)


# ---------------------------------------------------------------------------
# Marcus: products of the smallest eigenvalues / singular values of I - A*B


def weyl_tail_relation_spectral(moduli: Sequence[float], sv: Sequence[float], k: int, tol: float = DEFAULT_TOL) -> BoundReport:
    n = len(sv)
    return chain("weyl_tail", [prod(moduli[n - k:]), prod(sv[n - k:])], tol)


def weyl_tail_relation(m: ArrayLike, k: int, tol: float = DEFAULT_TOL) -> BoundReport:
    """Product of the k smallest eigenvalue moduli of ``M`` dominates that of its k smallest singular values."""
    m = as_matrix(m)
    n = same_shape(m)
    if not 1 <= k <= n:
        raise IndexOutOfRange(f"k={k} outside 1..{n}")
    return weyl_tail_relation_spectral(np.abs(eigvals(m)).tolist(), singular_values(m).tolist(), k, tol)


@dataclass(frozen=True)
class MarcusSpectra:
    one_minus_a: list[float]  # 1 - lam_t(A*A), t = 1..n
    one_minus_b: list[float]
    moduli: list[float]  # |lam_t(I - A*B)| descending
    sv: list[float]  # sigma_t(I - A*B) descending

    @classmethod
    def of(cls, a: np.ndarray, b: np.ndarray) -> "MarcusSpectra":
        m = identity(a.shape[0]) - _adj(a) @ b
        return cls(
            [max(0.0, 1.0 - x) for x in _gram_eigs(a)],
            [max(0.0, 1.0 - x) for x in _gram_eigs(b)],
            np.abs(eigvals(m)).tolist(),
            singular_values(m).tolist(),
        )


def marcus_bounds_spectral(s: MarcusSpectra, k: int, tol: float = DEFAULT_TOL) -> BoundReport:
    n = len(s.sv)
    rhs = prod(s.one_minus_a[t] * s.one_minus_b[t] for t in range(k))
    tail = slice(n - k, n)
    return combine(
        "marcus_bounds",
        [
            chain("marcus_bounds.eigenvalue", [prod(x * x for x in s.moduli[tail]), rhs], tol),
            chain("marcus_bounds.singular", [prod(x * x for x in s.sv[tail]), rhs], tol),
            chain("marcus_bounds.weyl", [prod(s.moduli[tail]), prod(s.sv[tail])], tol),
        ],
        tol,
    )


def marcus_bounds(a: ArrayLike, b: ArrayLike, k: int, tol: float = DEFAULT_TOL) -> BoundReport:
    """Parts: ``eigenvalue`` (smallest |eigenvalues| of ``I-A*B``), ``singular``
    (smallest singular values, the stronger form) and ``weyl`` (the comparison
    between the two)."""
    a, b, n = _square_pair(a, b)
    require_contraction(a, "A", strict=False)
    require_contraction(b, "B", strict=False)
    if not 1 <= k <= n:
        raise IndexOutOfRange(f"k={k} outside 1..{n}")
    return marcus_bounds_spectral(MarcusSpectra.of(a, b), k, tol)


# ---------------------------------------------------------------------------
# index-set forms


@dataclass(frozen=True)
class ContractionSpectra:
    one_minus_a: list[float]  # 1 - lam_t(A*A)
    one_minus_b: list[float]  # 1 - lam_t(B*B)
    lam_f: list[float]  # eigenvalues of F = I - B*B
    lam_h: list[float]  # eigenvalues of H
    sv_m: list[float]  # sigma(I - A*B)
    sv_diff: list[float]  # sigma(A - B)

    @classmethod
    def of(cls, a: np.ndarray, b: np.ndarray) -> "ContractionSpectra":
        f, h = hua_matrices(a, b)
        return cls(
            [1.0 - x for x in _gram_eigs(a)],
            [1.0 - x for x in _gram_eigs(b)],
            clamp_spectrum(eigvalsh(f)),
            clamp_spectrum(eigvalsh(h)),
            singular_values(identity(a.shape[0]) - _adj(a) @ b).tolist(),
            singular_values(a - b).tolist(),
        )


def contraction_main_bound_spectral(s: ContractionSpectra, idx: Sequence[int], tol: float = DEFAULT_TOL) -> BoundReport:
    n, k = len(s.sv_m), len(idx)
    oa, ob = s.one_minus_a, s.one_minus_b
    lhs = prod(s.sv_m[i] ** 2 for i in idx)
    t1 = prod(oa[t] * ob[n - 1 - i] for t, i in enumerate(idx))
    t2 = prod(oa[t] * s.sv_diff[n - 1 - t] ** 2 / oa[n - 1 - t] for t in range(k))
    t3 = (2.0**k - 2.0) * prod(oa[t] * math.sqrt(s.lam_f[i] * s.lam_h[n - 1 - t]) for t, i in enumerate(idx))
    return chain("contraction_main_bound", [lhs, t1 + t2 + t3], tol)


def contraction_main_bound(a: ArrayLike, b: ArrayLike, seq: IndexSequence, tol: float = DEFAULT_TOL) -> BoundReport:
    """``prod sigma^2_{i_t}(I-A*B) >= T1 + T2 + T3`` for strict contractions.

    ``1 - lam_{n-i_t+1}(B*B)`` in ``T1`` is the ``i_t``-th eigenvalue of ``F``;
    the eigenvalues of ``F`` and ``H`` in ``T3`` come from their explicit
    Hermitian forms.
    """
    a, b, n = _strict_pair(a, b)
    return contraction_main_bound_spectral(ContractionSpectra.of(a, b), _idx(n, seq), tol)


@dataclass(frozen=True)
class ReversalSpectra:
    lam_a: list[float]  # lam_t(A*A)
    lam_b: list[float]  # lam_t(B*B)
    sv_m: list[float]  # sigma(I - A*B)
    sv_sum: list[float]  # sigma(A + B)

    @classmethod
    def of(cls, a: np.ndarray, b: np.ndarray) -> "ReversalSpectra":
        return cls(
            _gram_eigs(a),
            _gram_eigs(b),
            singular_values(identity(a.shape[0]) - _adj(a) @ b).tolist(),
            singular_values(a + b).tolist(),
        )


def reversal_bound_spectral(s: ReversalSpectra, idx: Sequence[int], tol: float = DEFAULT_TOL) -> BoundReport:
    n, k = len(s.sv_m), len(idx)
    lhs = prod((1.0 + s.lam_a[i]) * (1.0 + s.lam_b[t]) for t, i in enumerate(idx))
    x = prod(s.sv_m[i] ** 2 for i in idx)
    y = prod(s.sv_sum[n - 1 - t] ** 2 for t in range(k))
    cross = (2.0**k - 2.0) * prod(s.sv_m[i] * s.sv_sum[n - 1 - t] for t, i in enumerate(idx))
    return chain("reversal_bound", [lhs, x + y + cross], tol)


def reversal_bound(a: ArrayLike, b: ArrayLike, seq: IndexSequence, tol: float = DEFAULT_TOL) -> BoundReport:
    """``prod [1+lam_{i_t}(A*A)][1+lam_t(B*B)] >= prod sigma^2_{i_t}(I-A*B) + prod sigma^2_{n-t+1}(A+B) + (2^k-2) prod sigma_{i_t}(I-A*B) sigma_{n-t+1}(A+B)``."""
    a, b, n = _square_pair(a, b)
    return reversal_bound_spectral(ReversalSpectra.of(a, b), _idx(n, seq), tol)
