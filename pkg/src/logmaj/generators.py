"""Seeded random instances: PSD matrices with chosen spectra, strict contractions,
patterned partial isometries and nested orthonormal frames.

Every generator is a pure function of its seed and parameters. Streams are
Philox generators keyed through :class:`numpy.random.SeedSequence`, so a
campaign trial can derive its own stream from ``(master_seed, check, n, trial)``
without touching any shared state.
"""

from __future__ import annotations

import math
import zlib
from dataclasses import dataclass

import numpy as np

from .errors import BadSpectrum, ConfigError, DegenerateDraw, InfeasiblePattern
from .linalg import (
    MAX_DIM,
    ComplexMatrix,
    IndexSequence,
    SpectralDecomposition,
    hermitian_part,
    singular_values,
)

SPECTRUM_MODES = ("uniform", "clustered", "rank-deficient", "prescribed")
FIELDS = ("complex", "real")
MAX_REDRAWS = 8


def name_key(name: str) -> int:
    """Stable 32-bit key for a string, usable in a seed path."""
    return zlib.crc32(name.encode("utf-8"))


def derive_seed(seed: int, *path: int) -> int:
    """64-bit seed for the child stream at ``path`` below ``seed``."""
    ss = np.random.SeedSequence(int(seed), spawn_key=tuple(int(p) for p in path))
    return int(ss.generate_state(1, np.uint64)[0])


def make_rng(seed: int, *path: int) -> np.random.Generator:
    ss = np.random.SeedSequence(int(seed), spawn_key=tuple(int(p) for p in path))
    return np.random.Generator(np.random.Philox(ss))


@dataclass(frozen=True)
class GenConfig:
    seed: int
    n: int
    field: str = "complex"
    contraction_margin: float = 0.05
    spectrum_mode: str = "uniform"
    spectrum: tuple[float, ...] | None = None

    def __post_init__(self) -> None:
        if not 0 <= int(self.seed) < 2**64:
            raise ConfigError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if not 1 <= self.n <= MAX_DIM:
            raise ConfigError(f"n must be in 1..{MAX_DIM}, got {self.n}")
        if self.field not in FIELDS:
            raise ConfigError(f"field must be one of {FIELDS}, got {self.field!r}")
        if not 0.0 < self.contraction_margin < 1.0:
            raise ConfigError(f"contraction margin must lie in (0, 1), got {self.contraction_margin}")
        if self.spectrum_mode not in SPECTRUM_MODES:
            raise ConfigError(f"unknown spectrum mode {self.spectrum_mode!r}")
        if self.spectrum_mode == "prescribed":
            spec = self.spectrum
            if spec is None or len(spec) != self.n:
                raise BadSpectrum(f"prescribed spectrum must have length {self.n}")
            if any(v < 0 for v in spec) or any(b > a for a, b in zip(spec, spec[1:])):
                raise BadSpectrum(f"prescribed spectrum {spec} is not descending and nonnegative")
            object.__setattr__(self, "spectrum", tuple(float(v) for v in spec))


def gaussian(rng: np.random.Generator, shape: tuple[int, ...], field: str = "complex") -> np.ndarray:
    """Standard normal entries; complex entries have independent real and imaginary parts."""
    if field == "real":
        return rng.standard_normal(shape).astype(np.complex128)
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def gram_schmidt(x: np.ndarray, passes: int = 2, rel_floor: float = 1e-8) -> np.ndarray:
    """Orthonormalise columns in order (classical GS, repeated ``passes`` times).

    Column ``j`` of the result lies in the span of columns ``0..j`` of ``x``;
    exact zeros shared by all of those columns are preserved exactly.
    Raises :class:`DegenerateDraw` when a column is numerically dependent.
    """
    x = np.array(x, dtype=np.complex128)
    q = np.zeros_like(x)
    for j in range(x.shape[1]):
        v = x[:, j].copy()
        start = math.sqrt(np.vdot(v, v).real)
        if j:
            basis = q[:, :j]
            for _ in range(passes):
                v -= basis @ (basis.conj().T @ v)
        norm = math.sqrt(np.vdot(v, v).real)
        if start == 0.0 or norm <= rel_floor * start:
            raise DegenerateDraw(f"column {j} is numerically dependent on earlier columns")
        q[:, j] = v / norm
    return q


def haar_unitary(rng: np.random.Generator, n: int, field: str = "complex") -> ComplexMatrix:
    """Approximately Haar unitary (orthogonal for the real field)."""
    for _ in range(MAX_REDRAWS):
        try:
            return gram_schmidt(gaussian(rng, (n, n), field))
        except DegenerateDraw:
            continue
    raise DegenerateDraw(f"could not draw an independent {n}x{n} Gaussian matrix")


def _draw_spectrum(rng: np.random.Generator, cfg: GenConfig) -> np.ndarray:
    n = cfg.n
    mode = cfg.spectrum_mode
    if mode == "prescribed":
        return np.array(cfg.spectrum, dtype=float)
    if mode == "uniform":
        values = rng.uniform(0.0, 1.0, n)
    elif mode == "clustered":
        centers = rng.uniform(0.1, 1.0, max(1, n // 2))
        values = centers[rng.integers(0, len(centers), n)]
    else:
        values = rng.uniform(0.0, 1.0, n)
        zeros = int(rng.integers(1, max(1, n // 2) + 1))
        values[np.argsort(values)[:zeros]] = 0.0
    return np.sort(values)[::-1]


def random_psd_spectrum(cfg: GenConfig) -> np.ndarray:
    """The descending spectrum :func:`random_psd` builds for ``cfg``."""
    return _draw_spectrum(make_rng(cfg.seed), cfg)


def random_psd(cfg: GenConfig) -> ComplexMatrix:
    """``U diag(s) U*`` with ``s`` drawn per ``cfg.spectrum_mode`` and ``U`` Haar-like."""
    rng = make_rng(cfg.seed)
    spectrum = _draw_spectrum(rng, cfg)
    u = haar_unitary(rng, cfg.n, cfg.field)
    return hermitian_part((u * spectrum) @ u.conj().T)


def random_strict_contraction(cfg: GenConfig) -> ComplexMatrix:
    """Gaussian matrix rescaled so that its largest singular value is ``(1 - delta) * u``, ``u`` in (0, 1]."""
    rng = make_rng(cfg.seed)
    g = gaussian(rng, (cfg.n, cfg.n), cfg.field)
    target = (1.0 - cfg.contraction_margin) * (1.0 - rng.uniform(0.0, 1.0))
    top = float(singular_values(g)[0])
    if top == 0.0:
        raise DegenerateDraw("drew the zero matrix")
    return g * (target / top)


def random_matrix(cfg: GenConfig) -> ComplexMatrix:
    """General square matrix: Gaussian entries scaled by ``s / sqrt(n)``, ``s`` uniform in (0, 2]."""
    rng = make_rng(cfg.seed)
    g = gaussian(rng, (cfg.n, cfg.n), cfg.field)
    return g * ((2.0 - 2.0 * rng.uniform(0.0, 1.0)) / np.sqrt(cfg.n))


def random_patterned_isometry(n: int, k: int, m: int, seed: int, field: str = "complex") -> ComplexMatrix:
    """``n x k`` matrix with orthonormal columns whose first column vanishes below row ``m``."""
    if not 1 <= k <= n:
        raise InfeasiblePattern(f"need 1 <= k <= n, got k={k}, n={n}")
    if not 1 <= m <= n:
        raise InfeasiblePattern(f"need 1 <= m <= n, got m={m}, n={n}")
    rng = make_rng(seed)
    for _ in range(MAX_REDRAWS):
        x = gaussian(rng, (n, k), field)
        x[m:, 0] = 0.0
        try:
            return gram_schmidt(x)
        except DegenerateDraw:
            continue
    raise DegenerateDraw("patterned isometry draw failed repeatedly")


def nested_coefficients(n: int, seq: IndexSequence, rng: np.random.Generator, field: str = "complex") -> np.ndarray:
    """Orthonormal ``n x k`` coefficients; column t is supported on the first ``i_t`` rows."""
    k = seq.k
    for _ in range(MAX_REDRAWS):
        c = gaussian(rng, (n, k), field)
        c[np.arange(n)[:, None] >= np.asarray(seq.indices)[None, :]] = 0.0
        try:
            return gram_schmidt(c)
        except DegenerateDraw:
            continue
    raise DegenerateDraw(f"nested frame draw for {seq} failed {MAX_REDRAWS} times")


def nested_frame(
    decomp: SpectralDecomposition,
    seq: IndexSequence,
    seed: int,
    field: str = "complex",
    canonical: bool = False,
) -> ComplexMatrix:
    """Orthonormal columns ``x_1..x_k`` with ``x_t`` in the span of the leading ``i_t`` eigenvectors.

    ``canonical=True`` forces the coefficients onto coordinate vectors, giving
    the eigenvector columns ``u_{i_1}, ..., u_{i_k}`` themselves.
    """
    n = decomp.n
    if seq.n != n:
        raise InfeasiblePattern(f"index sequence over 1..{seq.n} for a {n}x{n} decomposition")
    if canonical:
        c = np.zeros((n, seq.k), dtype=np.complex128)
        c[seq.zero_based, np.arange(seq.k)] = 1.0
    else:
        c = nested_coefficients(n, seq, make_rng(seed), field)
    return decomp.frame @ c


def random_descending(rng: np.random.Generator, n: int, zeros: bool = False) -> list[float]:
    """Descending nonnegative values in [0, 1); ``zeros`` forces at least one trailing zero."""
    values = np.sort(rng.uniform(0.0, 1.0, n))[::-1]
    if zeros:
        values[-int(rng.integers(1, n + 1)):] = 0.0
    return values.tolist()


def random_index_sequence(rng: np.random.Generator, n: int) -> IndexSequence:
    """Uniform size first, then a uniform subset of that size."""
    k = int(rng.integers(1, n + 1))
    picked = np.sort(rng.choice(n, size=k, replace=False)) + 1
    return IndexSequence(n, tuple(int(i) for i in picked))

