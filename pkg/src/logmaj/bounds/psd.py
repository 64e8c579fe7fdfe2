"""Eigenvalue product inequalities for sums and products of PSD matrices.

Public checks take matrices, validate them and compute spectra; each has a
``*_spectral`` counterpart that takes descending, zero-clamped spectra as
plain float lists (0-based index lists where an index set is involved) so that
campaigns can reuse one eigendecomposition across many index sets.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np
from numpy.typing import ArrayLike

from ..errors import (
    BadIndices,
    BadSpectrum,
    DimensionMismatch,
    FrameNotNested,
    IndexOutOfRange,
    LengthMismatch,
    NegativeInput,
    NotOrthonormal,
    NotPartialIsometry,
    NotPSD,
    ZeroPatternViolated,
)
from ..linalg import (
    IndexSequence,
    SpectralDecomposition,
    as_matrix,
    clamp_spectrum,
    determinant,
    hermitian_eig,
    hermitian_part,
    psd_sqrt,
    same_shape,
)
from .reports import DEFAULT_TOL, BoundReport, chain, combine

Spectrum = Sequence[float]
prod = math.prod


def _root(x: float, k: int) -> float:
    return x ** (1.0 / k)


def _cross(k: int, x: float, y: float) -> float:
    """The ``(2^k - 2) sqrt(x y)`` term."""
    return (2.0**k - 2.0) * math.sqrt(x * y)


# ---------------------------------------------------------------------------
# validation helpers


def psd_decomposition(a: ArrayLike, name: str = "A") -> SpectralDecomposition:
    a = as_matrix(a)
    decomp = hermitian_eig(a)
    w = decomp.eigenvalues
    if w[-1] < -1e-10 * max(abs(w[0]), abs(w[-1])):
        raise NotPSD(f"{name} has eigenvalue {w[-1]:.3e} (largest {w[0]:.3e})")
    return decomp


def psd_spectrum(a: ArrayLike, name: str = "A") -> list[float]:
    """Descending spectrum of a PSD matrix, with tiny and negative noise clamped to 0."""
    return clamp_spectrum(psd_decomposition(a, name).eigenvalues)


def _pair(a: ArrayLike, b: ArrayLike) -> tuple[list[float], list[float], list[float]]:
    a = as_matrix(a)
    b = as_matrix(b)
    same_shape(a, b)
    return psd_spectrum(a, "A"), psd_spectrum(b, "B"), psd_spectrum(a + b, "A+B")


def _check_k(n: int, k: int) -> None:
    if not 1 <= k <= n:
        raise IndexOutOfRange(f"k={k} outside 1..{n}")


def _check_seq(n: int, seq: IndexSequence) -> list[int]:
    if seq.n != n:
        raise IndexOutOfRange(f"index sequence over 1..{seq.n} for n={n}")
    return seq.zero_based


def _partial_isometry(u: np.ndarray, tol: float = 1e-10) -> None:
    k = u.shape[1]
    dev = float(np.max(np.abs(u.conj().T @ u - np.eye(k))))
    if dev > tol:
        raise NotPartialIsometry(f"max|U*U - I| = {dev:.3e} exceeds {tol:g}")


def _hdet(m: np.ndarray) -> float:
    return determinant(hermitian_part(m)).real


# ---------------------------------------------------------------------------
# scalar inequality


def scalar_product_bound(a: Sequence[float], b: Sequence[float], tol: float = DEFAULT_TOL) -> BoundReport:
    """``prod(a+b) >= prod a + prod b + (2^n-2) sqrt(prod ab)`` and its power form."""
    a = [float(v) for v in a]
    b = [float(v) for v in b]
    if len(a) != len(b):
        raise LengthMismatch(f"lengths {len(a)} and {len(b)} differ")
    if not a:
        raise LengthMismatch("sequences must be non-empty")
    if min(a) < 0 or min(b) < 0:
        raise NegativeInput("entries must be nonnegative")
    n = len(a)
    x, y = prod(a), prod(b)
    three = x + y + _cross(n, x, y)
    return combine(
        "scalar_product_bound",
        [
            chain("scalar_product_bound.product", [prod(s + t for s, t in zip(a, b)), three], tol),
            chain("scalar_product_bound.power", [(_root(x, n) + _root(y, n)) ** n, three], tol),
        ],
        tol,
    )


# ---------------------------------------------------------------------------
# tail-product inequalities (index set {k, ..., n})


def fiedler_chain_spectral(la: Spectrum, lb: Spectrum, lab: Spectrum, k: int, tol: float = DEFAULT_TOL) -> BoundReport:
    s = slice(k - 1, len(la))
    return chain(
        "fiedler_chain",
        [
            prod(lab[s]),
            prod(x + y for x, y in zip(la[s], lb[s])),
            prod(la[s]) + prod(lb[s]),
        ],
        tol,
    )


def fiedler_chain(a: ArrayLike, b: ArrayLike, k: int, tol: float = DEFAULT_TOL) -> BoundReport:
    """``prod_{t>=k} lam_t(A+B) >= prod_{t>=k} [lam_t(A)+lam_t(B)] >= prod lam_t(A) + prod lam_t(B)``."""
    la, lb, lab = _pair(a, b)
    _check_k(len(la), k)
    return fiedler_chain_spectral(la, lb, lab, k, tol)


def oppenheim_tail_power_spectral(
    la: Spectrum, lb: Spectrum, lab: Spectrum, k: int, tol: float = DEFAULT_TOL, name: str = "oppenheim_tail_power"
) -> BoundReport:
    n = len(la)
    m = n - k + 1
    s = slice(k - 1, n)
    return chain(name, [_root(prod(lab[s]), m), _root(prod(la[s]), m) + _root(prod(lb[s]), m)], tol)


def oppenheim_tail_power(a: ArrayLike, b: ArrayLike, k: int, tol: float = DEFAULT_TOL) -> BoundReport:
    """Geometric means of the tail ``t = k..n``: ``GM(A+B) >= GM(A) + GM(B)``."""
    la, lb, lab = _pair(a, b)
    _check_k(len(la), k)
    return oppenheim_tail_power_spectral(la, lb, lab, k, tol)


def minkowski_det_spectral(la: Spectrum, lb: Spectrum, lab: Spectrum, tol: float = DEFAULT_TOL) -> BoundReport:
    return oppenheim_tail_power_spectral(la, lb, lab, 1, tol, name="minkowski_det")


def minkowski_det(a: ArrayLike, b: ArrayLike, tol: float = DEFAULT_TOL) -> BoundReport:
    """``det(A+B)^(1/n) >= det(A)^(1/n) + det(B)^(1/n)``; the ``k = 1`` tail case."""
    la, lb, lab = _pair(a, b)
    return minkowski_det_spectral(la, lb, lab, tol)


def hartfiel_det_spectral(la: Spectrum, lb: Spectrum, lab: Spectrum, tol: float = DEFAULT_TOL) -> BoundReport:
    x, y = prod(la), prod(lb)
    return chain("hartfiel_det", [prod(lab), x + y + _cross(len(la), x, y)], tol)


def hartfiel_det(a: ArrayLike, b: ArrayLike, tol: float = DEFAULT_TOL) -> BoundReport:
    """``det(A+B) >= det A + det B + (2^n-2) sqrt(det A det B)``."""
    la, lb, lab = _pair(a, b)
    return hartfiel_det_spectral(la, lb, lab, tol)


# ---------------------------------------------------------------------------
# products of two PSD matrices


def product_spectrum(a: ArrayLike, b: ArrayLike) -> list[float]:
    """Eigenvalues of ``AB`` for PSD ``A, B``, via the similar Hermitian ``A^(1/2) B A^(1/2)``."""
    root = psd_sqrt(psd_decomposition(a, "A"))
    return clamp_spectrum(hermitian_eig(hermitian_part(root @ as_matrix(b) @ root)).eigenvalues)


def lidskii_product_spectral(la: Spectrum, lb: Spectrum, lp: Spectrum, idx: Sequence[int], tol: float = DEFAULT_TOL) -> BoundReport:
    n = len(la)
    return chain(
        "lidskii_product",
        [
            prod(la[i] * lb[t] for t, i in enumerate(idx)),
            prod(lp[i] for i in idx),
            prod(la[i] * lb[n - 1 - t] for t, i in enumerate(idx)),
        ],
        tol,
    )


def lidskii_product(a: ArrayLike, b: ArrayLike, seq: IndexSequence, tol: float = DEFAULT_TOL) -> BoundReport:
    """``prod lam_{i_t}(A) lam_t(B) >= prod lam_{i_t}(AB) >= prod lam_{i_t}(A) lam_{n-t+1}(B)``."""
    a = as_matrix(a)
    b = as_matrix(b)
    n = same_shape(a, b)
    idx = _check_seq(n, seq)
    la = psd_spectrum(a, "A")
    lb = psd_spectrum(b, "B")
    return lidskii_product_spectral(la, lb, product_spectrum(a, b), idx, tol)


# ---------------------------------------------------------------------------
# compressions by partial isometries


def partial_isometry_reduction(lambdas: Sequence[float], u: ArrayLike, m: int, tol: float = DEFAULT_TOL) -> BoundReport:
    """``det(U* D U) >= lam_m det(V* D_m V)`` for ``D = diag(lambdas)``.

    ``V`` is ``U`` without its first column and ``D_m`` replaces the leading
    ``m`` diagonal entries by ``lam_m``. The first column of ``U`` must vanish
    below row ``m``.
    """
    lam = [float(v) for v in lambdas]
    u = as_matrix(u)
    n, k = u.shape
    if len(lam) != n:
        raise DimensionMismatch(f"{len(lam)} values for a {n}-row isometry")
    if min(lam) < 0 or any(b > a for a, b in zip(lam, lam[1:])):
        raise BadSpectrum("values must be descending and nonnegative")
    if not 1 <= m <= n:
        raise IndexOutOfRange(f"m={m} outside 1..{n}")
    if k > n:
        raise NotPartialIsometry(f"{n}x{k} cannot have orthonormal columns")
    _partial_isometry(u)
    leak = float(np.max(np.abs(u[m:, 0]))) if m < n else 0.0
    if leak > 1e-12:
        raise ZeroPatternViolated(f"first column has |u_i1| = {leak:.3e} below row {m}")
    lam_m = lam[m - 1]
    lhs = _hdet((u.conj().T * lam) @ u)
    if k == 1:
        reduced = 1.0
    else:
        v = u[:, 1:]
        dm = [lam_m] * m + lam[m:]
        reduced = _hdet((v.conj().T * dm) @ v)
    return chain("partial_isometry_reduction", [lhs, lam_m * reduced], tol)


def _check_nested(decomp: SpectralDecomposition, seq: IndexSequence, frame: np.ndarray) -> None:
    n = decomp.n
    if frame.shape != (n, seq.k):
        raise DimensionMismatch(f"frame must be {n}x{seq.k}, got {frame.shape[0]}x{frame.shape[1]}")
    dev = float(np.max(np.abs(frame.conj().T @ frame - np.eye(seq.k))))
    if dev > 1e-10:
        raise NotOrthonormal(f"max|X*X - I| = {dev:.3e}")
    coeffs = decomp.frame.conj().T @ frame
    beyond = np.arange(n)[:, None] >= np.asarray(seq.indices)[None, :]
    outside = np.sqrt(np.sum(np.abs(coeffs) ** 2 * beyond, axis=0))
    t = int(np.argmax(outside))
    if outside[t] > 1e-8:
        raise FrameNotNested(
            f"column {t + 1} has {outside[t]:.3e} outside the leading {seq.indices[t]} eigenvectors"
        )


def nested_frame_det_bound_spectral(
    a: np.ndarray, lam: Spectrum, decomp: SpectralDecomposition, seq: IndexSequence, frame: np.ndarray, tol: float = DEFAULT_TOL
) -> BoundReport:
    _check_nested(decomp, seq, frame)
    lhs = _hdet(frame.conj().T @ a @ frame)
    return chain("nested_frame_det_bound", [lhs, prod(lam[i] for i in seq.zero_based)], tol)


def nested_frame_det_bound(a: ArrayLike, seq: IndexSequence, frame: ArrayLike, tol: float = DEFAULT_TOL) -> BoundReport:
    """``det(X* A X) >= prod lam_{i_t}(A)`` for an orthonormal frame with ``x_t`` in ``span(u_1..u_{i_t})``."""
    a = as_matrix(a)
    decomp = psd_decomposition(a)
    _check_seq(decomp.n, seq)
    lam = clamp_spectrum(decomp.eigenvalues)
    return nested_frame_det_bound_spectral(a, lam, decomp, seq, as_matrix(frame), tol)


def fan_min_det_spectral(b: np.ndarray, lb: Spectrum, u: np.ndarray, tol: float = DEFAULT_TOL) -> BoundReport:
    n, k = u.shape
    return chain("fan_min_det", [_hdet(u.conj().T @ b @ u), prod(lb[n - k:])], tol)


def fan_min_det(b: ArrayLike, u: ArrayLike, tol: float = DEFAULT_TOL) -> BoundReport:
    """``det(U* B U) >= product of the k smallest eigenvalues of B`` for any ``n x k`` isometry ``U``."""
    b = as_matrix(b)
    u = as_matrix(u)
    n = same_shape(b)
    if u.shape[0] != n or u.shape[1] > n:
        raise DimensionMismatch(f"isometry shape {u.shape} incompatible with n={n}")
    _partial_isometry(u)
    return fan_min_det_spectral(b, psd_spectrum(b, "B"), u, tol)


# ---------------------------------------------------------------------------
# sums over arbitrary index sets


def main_bounds_spectral(la: Spectrum, lb: Spectrum, lab: Spectrum, idx: Sequence[int], tol: float = DEFAULT_TOL) -> BoundReport:
    n, k = len(la), len(idx)
    x = prod(la[i] for i in idx)
    y = prod(lb[n - 1 - t] for t in range(k))
    total = prod(lab[i] for i in idx)
    power_rhs = _root(x, k) + _root(y, k)
    three = x + y + _cross(k, x, y)
    return combine(
        "main_bounds",
        [
            chain("main_bounds.power", [_root(total, k), power_rhs], tol),
            chain("main_bounds.three_term", [total, three], tol),
            chain("main_bounds.power_vs_three_term", [power_rhs**k, three], tol),
        ],
        tol,
    )


def main_bounds(a: ArrayLike, b: ArrayLike, seq: IndexSequence, tol: float = DEFAULT_TOL) -> BoundReport:
    """Products of ``A+B`` eigenvalues on an arbitrary index set against ``A`` on that set and the smallest of ``B``.

    Parts: ``power`` (k-th roots), ``three_term`` (with the ``(2^k-2)`` cross
    term) and ``power_vs_three_term`` (the scalar step linking the two).
    """
    la, lb, lab = _pair(a, b)
    return main_bounds_spectral(la, lb, lab, _check_seq(len(la), seq), tol)


def head_tail_power_spectral(la: Spectrum, lb: Spectrum, lab: Spectrum, k: int, tol: float = DEFAULT_TOL) -> BoundReport:
    n = len(la)
    return chain(
        "head_tail_power",
        [_root(prod(lab[:k]), k), _root(prod(la[:k]), k) + _root(prod(lb[n - k:]), k)],
        tol,
    )


def head_tail_power(a: ArrayLike, b: ArrayLike, k: int, tol: float = DEFAULT_TOL) -> BoundReport:
    """k largest of ``A+B`` against k largest of ``A`` plus k smallest of ``B``, geometric-mean form."""
    la, lb, lab = _pair(a, b)
    _check_k(len(la), k)
    return head_tail_power_spectral(la, lb, lab, k, tol)


def pairwise_bound_spectral(la: Spectrum, lb: Spectrum, lab: Spectrum, i: int, j: int, tol: float = DEFAULT_TOL) -> BoundReport:
    n = len(la)
    x = la[i - 1] * la[j - 1]
    y = lb[n - 2] * lb[n - 1]
    return chain("pairwise_bound", [lab[i - 1] * lab[j - 1], x + y + 2.0 * math.sqrt(x * y)], tol)


def pairwise_bound(a: ArrayLike, b: ArrayLike, i: int, j: int, tol: float = DEFAULT_TOL) -> BoundReport:
    """``lam_i lam_j (A+B) >= lam_i lam_j (A) + lam_{n-1} lam_n (B) + 2 sqrt(...)``; requires ``i < j``."""
    la, lb, lab = _pair(a, b)
    n = len(la)
    if not 1 <= i < j <= n:
        raise BadIndices(f"need 1 <= i < j <= n, got i={i}, j={j}, n={n}")
    return pairwise_bound_spectral(la, lb, lab, i, j, tol)


def tail_chain_spectral(la: Spectrum, lb: Spectrum, lab: Spectrum, k: int, tol: float = DEFAULT_TOL) -> BoundReport:
    n = len(la)
    s = slice(n - k, n)
    x, y = prod(la[s]), prod(lb[s])
    tail = chain(
        "tail_chain.tail",
        [prod(lab[s]), prod(p + q for p, q in zip(la[s], lb[s])), x + y + _cross(k, x, y)],
        tol,
    )
    xh, yh = prod(la[:k]), prod(lb[n - k:])
    head = chain("tail_chain.head", [prod(lab[:k]), xh + yh + _cross(k, xh, yh)], tol)
    return combine("tail_chain", [tail, head], tol)


def tail_chain(a: ArrayLike, b: ArrayLike, k: int, tol: float = DEFAULT_TOL) -> BoundReport:
    """Two chains: the k smallest eigenvalues (``tail`` part) and the k largest (``head`` part)."""
    la, lb, lab = _pair(a, b)
    _check_k(len(la), k)
    return tail_chain_spectral(la, lb, lab, k, tol)
