"""Dense complex linear algebra for small matrices (n <= 64).

Matrices are plain ``complex128`` numpy arrays; :func:`as_matrix` is the single
entry point that validates and converts user input. Eigen- and singular-value
routines run on the kernel backend selected in :mod:`logmaj._backend`.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray

from . import _backend
from .errors import (
    ConvergenceError,
    DimensionMismatch,
    DimensionTooLarge,
    IndexOutOfRange,
    NotHermitian,
    ParseError,
    SingularSystem,
)

ComplexMatrix = NDArray[np.complex128]

MAX_DIM = 64
JACOBI_TOL = 1e-14
ZERO_CLAMP = 1e-12


def as_matrix(a: ArrayLike) -> ComplexMatrix:
    """Return ``a`` as a 2-D complex128 array with at least one row and column."""
    arr = np.asarray(a, dtype=np.complex128)
    if arr.ndim == 0:
        arr = arr.reshape(1, 1)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"expected a non-empty 2-D matrix, got shape {arr.shape}")
    return arr


def adjoint(a: ArrayLike) -> ComplexMatrix:
    """Conjugate transpose."""
    return as_matrix(a).conj().T


def identity(n: int) -> ComplexMatrix:
    return np.eye(n, dtype=np.complex128)


def max_abs(a: ArrayLike) -> float:
    arr = np.asarray(a)
    return float(np.max(np.abs(arr))) if arr.size else 0.0


def hermitian_part(a: ArrayLike) -> ComplexMatrix:
    a = as_matrix(a)
    return (a + a.conj().T) / 2


def _check_square(a: ComplexMatrix) -> int:
    n, m = a.shape
    if n != m:
        raise DimensionMismatch(f"square matrix required, got {n}x{m}")
    if n > MAX_DIM:
        raise DimensionTooLarge(f"n={n} exceeds the cap of {MAX_DIM}")
    return n


def same_shape(*mats: ComplexMatrix) -> int:
    n = _check_square(mats[0])
    for other in mats[1:]:
        if other.shape != mats[0].shape:
            raise DimensionMismatch(f"shapes {mats[0].shape} and {other.shape} differ")
    return n


# ---------------------------------------------------------------------------
# Index sequences


@dataclass(frozen=True)
class IndexSequence:
    """Strictly increasing 1-based indices ``i_1 < ... < i_k`` into ``1..n``."""

    n: int
    indices: tuple[int, ...]

    def __post_init__(self) -> None:
        idx = tuple(int(i) for i in self.indices)
        object.__setattr__(self, "indices", idx)
        if self.n < 1:
            raise IndexOutOfRange(f"ambient dimension must be >= 1, got {self.n}")
        if not idx:
            raise IndexOutOfRange("index sequence must be non-empty")
        if idx[0] < 1 or idx[-1] > self.n:
            raise IndexOutOfRange(f"indices {idx} outside 1..{self.n}")
        if any(b <= a for a, b in zip(idx, idx[1:])):
            raise IndexOutOfRange(f"indices {idx} are not strictly increasing")

    @property
    def k(self) -> int:
        return len(self.indices)

    @property
    def zero_based(self) -> list[int]:
        return [i - 1 for i in self.indices]

    @classmethod
    def head(cls, n: int, k: int) -> "IndexSequence":
        """``{1, ..., k}``: the k largest."""
        return cls(n, tuple(range(1, k + 1)))

    @classmethod
    def tail(cls, n: int, k: int) -> "IndexSequence":
        """``{n-k+1, ..., n}``: the k smallest."""
        return cls(n, tuple(range(n - k + 1, n + 1)))

    @classmethod
    def parse(cls, n: int, text: str) -> "IndexSequence":
        try:
            values = tuple(int(tok) for tok in text.replace(" ", "").split(",") if tok)
        except ValueError as exc:
            raise IndexOutOfRange(f"cannot parse index list {text!r}") from exc
        return cls(n, values)

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.indices)) + "}"


def all_subsequences(n: int) -> list[IndexSequence]:
    """All ``2**n - 1`` non-empty index sequences, ordered by size then lexicographically."""
    return [
        IndexSequence(n, tuple(i + 1 for i in combo))
        for k in range(1, n + 1)
        for combo in combinations(range(n), k)
    ]


# ---------------------------------------------------------------------------
# Spectral routines


@dataclass(frozen=True)
class SpectralDecomposition:
    """Descending eigenvalues and the matching orthonormal eigenvector columns."""

    eigenvalues: NDArray[np.float64]
    frame: ComplexMatrix

    @property
    def n(self) -> int:
        return len(self.eigenvalues)

    def reconstruct(self) -> ComplexMatrix:
        u = self.frame
        return (u * self.eigenvalues) @ u.conj().T


def check_hermitian(a: ComplexMatrix, tol: float) -> None:
    asym = max_abs(a - a.conj().T)
    if asym > tol * (1.0 + max_abs(a)):
        raise NotHermitian(f"max|A - A*| = {asym:.3e} exceeds tolerance")


def hermitian_eig(a: ArrayLike, tol: float = 1e-10) -> SpectralDecomposition:
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Asymmetry up to ``tol * (1 + max|A|)`` is accepted and removed by taking
    the Hermitian part. Eigenvalues come back in descending order; the sort
    is stable, so ties keep the order in which Jacobi left them.
    """
    a = as_matrix(a)
    _check_square(a)
    check_hermitian(a, tol)
    w, v, sweeps = _backend.kernels.jacobi_eigh(hermitian_part(a), JACOBI_TOL, 100)
    if sweeps >= 100:
        raise ConvergenceError("Jacobi eigensolver did not converge in 100 sweeps")
    order = np.argsort(-w, kind="stable")
    w = w[order]
    v = v[:, order]
    w.setflags(write=False)
    v.setflags(write=False)
    return SpectralDecomposition(w, v)


def eigvalsh(a: ArrayLike, tol: float = 1e-10) -> NDArray[np.float64]:
    """Descending eigenvalues of a Hermitian matrix."""
    return hermitian_eig(a, tol).eigenvalues


def singular_values(a: ArrayLike) -> NDArray[np.float64]:
    """Descending singular values (one-sided Jacobi); length ``min(rows, cols)``."""
    a = as_matrix(a)
    if max(a.shape) > MAX_DIM:
        raise DimensionTooLarge(f"shape {a.shape} exceeds the cap of {MAX_DIM}")
    s, sweeps = _backend.kernels.jacobi_singular_values(a, 1e-15, 100)
    if sweeps >= 100:
        raise ConvergenceError("one-sided Jacobi did not converge in 100 sweeps")
    return np.sort(s)[::-1]


def eigvals(a: ArrayLike) -> NDArray[np.complex128]:
    """Eigenvalues of a general square matrix, ordered by decreasing modulus.

    Shifted QR on the Hessenberg form. Only the moduli are relied upon
    downstream, at roughly 1e-8 relative accuracy.
    """
    a = as_matrix(a)
    _check_square(a)
    try:
        w = _backend.kernels.hessenberg_eigvals(a, 60)
    except ArithmeticError as exc:
        raise ConvergenceError(str(exc)) from exc
    return w[np.argsort(-np.abs(w), kind="stable")]


def determinant(a: ArrayLike) -> complex:
    """Determinant via LU factorisation (LAPACK through numpy)."""
    a = as_matrix(a)
    _check_square(a)
    if a.shape[0] == 1:
        return complex(a[0, 0])
    return complex(np.linalg.det(a))


def solve_hermitian(a: ArrayLike, b: ArrayLike) -> ComplexMatrix:
    """Solve ``A X = B`` for Hermitian positive definite ``A``.

    Raises :class:`SingularSystem` unless ``min eig > 1e-10 * max eig``.
    """
    a = as_matrix(a)
    b = as_matrix(b)
    n = _check_square(a)
    if b.shape[0] != n:
        raise DimensionMismatch(f"A is {n}x{n} but B has {b.shape[0]} rows")
    w = eigvalsh(a)
    if not w[-1] > 1e-10 * w[0] or w[0] <= 0:
        raise SingularSystem(f"eigenvalues span [{w[-1]:.3e}, {w[0]:.3e}]; not positive definite")
    return np.linalg.solve(hermitian_part(a), b)


def psd_sqrt(decomp: SpectralDecomposition) -> ComplexMatrix:
    """Square root of a PSD matrix from its decomposition; negative noise is clamped."""
    root = np.sqrt(np.clip(decomp.eigenvalues, 0.0, None))
    u = decomp.frame
    return hermitian_part((u * root) @ u.conj().T)


def clamp_spectrum(values: Iterable[float], rel: float = ZERO_CLAMP) -> list[float]:
    """Descending spectrum with entries at or below ``rel * lambda_1`` set to exactly 0."""
    vals = [float(v) for v in values]
    cut = rel * max(vals[0], 0.0) if vals else 0.0
    return [v if v > cut else 0.0 for v in vals]


# ---------------------------------------------------------------------------
# Indexed products


def _check_index(values: Sequence[float], seq: IndexSequence) -> None:
    if seq.n != len(values):
        raise IndexOutOfRange(f"index sequence over 1..{seq.n} applied to {len(values)} values")


def indexed_product(values: Sequence[float], seq: IndexSequence) -> float:
    """``prod_t values[i_t]`` with 1-based indices."""
    _check_index(values, seq)
    return math.prod(values[i - 1] for i in seq.indices)


def indexed_log_product(values: Sequence[float], seq: IndexSequence) -> tuple[bool, float]:
    """Log-domain product: ``(is_zero, log|prod|)``; ``log|prod|`` is ``-inf`` when zero."""
    _check_index(values, seq)
    picked = [values[i - 1] for i in seq.indices]
    if any(v == 0.0 for v in picked):
        return True, -math.inf
    return False, math.fsum(math.log(abs(v)) for v in picked)


def _check_k(values: Sequence[float], k: int) -> None:
    if not 1 <= k <= len(values):
        raise IndexOutOfRange(f"k={k} outside 1..{len(values)}")


def head_product(values: Sequence[float], k: int) -> float:
    _check_k(values, k)
    return math.prod(values[:k])


def tail_product(values: Sequence[float], k: int) -> float:
    _check_k(values, k)
    return math.prod(values[len(values) - k:])


# ---------------------------------------------------------------------------
# Matrix JSON


def matrix_to_json(a: ArrayLike) -> dict:
    a = as_matrix(a)
    return {
        "n": int(a.shape[0]),
        "m": int(a.shape[1]),
        "entries": [[[float(z.real), float(z.imag)] for z in row] for row in a],
    }


def matrix_from_json(doc: dict | str) -> ComplexMatrix:
    """Parse ``{"n": rows, "m": cols, "entries": [[[re, im], ...], ...]}``."""
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict) or not {"n", "m", "entries"} <= doc.keys():
        raise ParseError('matrix document needs keys "n", "m", "entries"')
    n, m, rows = doc["n"], doc["m"], doc["entries"]
    if not (isinstance(n, int) and isinstance(m, int)) or n < 1 or m < 1:
        raise ParseError(f"bad dimensions n={n!r}, m={m!r}")
    if not isinstance(rows, list) or len(rows) != n:
        raise ParseError(f"expected {n} rows")
    out = np.empty((n, m), dtype=np.complex128)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != m:
            raise ParseError(f"row {i} is ragged: expected {m} entries")
        for j, entry in enumerate(row):
            try:
                re, im = entry
                out[i, j] = complex(float(re), float(im))
            except (TypeError, ValueError) as exc:
                raise ParseError(f"entry ({i},{j}) is not a [re, im] pair") from exc
    return out


def load_matrix(path: str) -> ComplexMatrix:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return matrix_from_json(text)


def save_matrix(path: str, a: ArrayLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(matrix_to_json(a), fh)
