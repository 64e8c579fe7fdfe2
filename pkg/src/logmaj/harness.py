"""Check registry and randomized campaign engine.

A campaign evaluates every requested check on ``trials`` random instances for
each dimension. Trial ``t`` of check ``c`` at dimension ``n`` draws all of its
randomness from a stream keyed by ``(master_seed, c, n, t)``, so trials are
independent work units: any split across worker processes produces the same
report as a sequential run.
"""

from __future__ import annotations

import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields, replace
from functools import lru_cache
from typing import Any, Callable

import numpy as np

from . import bounds
from .bounds import contractions as ct
from .bounds import psd
from .bounds.counterexamples import CounterexampleReport
from .bounds.reports import DEFAULT_TOL, IDENTITY_TOL, BoundReport, IdentityReport
from .errors import ConfigError, LogMajError, ParseError, UnknownCheck
from .generators import (
    GenConfig,
    make_rng,
    name_key,
    nested_coefficients,
    random_descending,
    random_index_sequence,
    random_matrix,
    random_patterned_isometry,
    random_psd,
    random_strict_contraction,
)
from .linalg import IndexSequence, all_subsequences, as_matrix, clamp_spectrum

Report = BoundReport | IdentityReport | CounterexampleReport
Outcome = tuple[tuple[int, ...] | None, Report]

SPECTRUM_MODES = ("uniform", "clustered", "rank-deficient")
INDEX_MODES = ("auto", "exhaustive", "sampled")
EXHAUSTIVE_MAX_N = 6


@dataclass(frozen=True)
class Settings:
    tolerance: float = DEFAULT_TOL
    identity_tolerance: float = IDENTITY_TOL
    contraction_margin: float = 0.05
    field: str = "complex"
    index_mode: str = "auto"
    sample_count: int = 32


# ---------------------------------------------------------------------------
# instance drawing


class Draw:
    """Per-trial random source; child seeds are taken from one Philox stream."""

    def __init__(self, seed: int, n: int, st: Settings):
        self.rng = make_rng(seed)
        self.n = n
        self.st = st

    def child(self) -> int:
        return int(self.rng.integers(0, 2**63))

    def psd(self) -> np.ndarray:
        mode = SPECTRUM_MODES[int(self.rng.integers(0, len(SPECTRUM_MODES)))]
        return random_psd(GenConfig(self.child(), self.n, self.st.field, self.st.contraction_margin, mode))

    def contraction(self) -> np.ndarray:
        return random_strict_contraction(GenConfig(self.child(), self.n, self.st.field, self.st.contraction_margin))

    def general(self) -> np.ndarray:
        return random_matrix(GenConfig(self.child(), self.n, self.st.field))

    def subsets(self) -> list[IndexSequence]:
        n, st = self.n, self.st
        if st.index_mode == "exhaustive" or (st.index_mode == "auto" and n <= EXHAUSTIVE_MAX_N):
            return _all_subsequences(n)
        return [random_index_sequence(self.rng, n) for _ in range(st.sample_count)]


@lru_cache(maxsize=None)
def _all_subsequences(n: int) -> list[IndexSequence]:
    return all_subsequences(n)


def _psd_spectra(d: Draw) -> tuple[list[float], list[float], list[float]]:
    a, b = d.psd(), d.psd()
    return psd.psd_spectrum(a, "A"), psd.psd_spectrum(b, "B"), psd.psd_spectrum(a + b, "A+B")


# ---------------------------------------------------------------------------
# trial functions: (seed, n, settings) -> outcomes


def _ks(n: int) -> range:
    return range(1, n + 1)


def _trial_scalar(seed: int, n: int, st: Settings) -> list[Outcome]:
    d = Draw(seed, n, st)
    a = d.rng.uniform(0.0, 2.0, n)
    b = d.rng.uniform(0.0, 2.0, n)
    if d.rng.random() < 0.25:
        (a if d.rng.random() < 0.5 else b)[int(d.rng.integers(0, n))] = 0.0
    return [(None, psd.scalar_product_bound(a.tolist(), b.tolist(), st.tolerance))]


def _k_family(core: Callable[..., BoundReport]) -> Callable[[int, int, Settings], list[Outcome]]:
    def trial(seed: int, n: int, st: Settings) -> list[Outcome]:
        la, lb, lab = _psd_spectra(Draw(seed, n, st))
        return [((k,), core(la, lb, lab, k, st.tolerance)) for k in _ks(n)]

    return trial


def _single_psd(core: Callable[..., BoundReport]) -> Callable[[int, int, Settings], list[Outcome]]:
    def trial(seed: int, n: int, st: Settings) -> list[Outcome]:
        la, lb, lab = _psd_spectra(Draw(seed, n, st))
        return [(None, core(la, lb, lab, st.tolerance))]

    return trial


def _trial_lidskii(seed: int, n: int, st: Settings) -> list[Outcome]:
    d = Draw(seed, n, st)
    a, b = d.psd(), d.psd()
    la, lb = psd.psd_spectrum(a, "A"), psd.psd_spectrum(b, "B")
    lp = psd.product_spectrum(a, b)
    return [(s.indices, psd.lidskii_product_spectral(la, lb, lp, s.zero_based, st.tolerance)) for s in d.subsets()]


def _trial_partial_isometry(seed: int, n: int, st: Settings) -> list[Outcome]:
    d = Draw(seed, n, st)
    lam = random_descending(d.rng, n, zeros=bool(d.rng.random() < 0.3))
    out: list[Outcome] = []
    for k in _ks(n):
        m = int(d.rng.integers(1, n + 1))
        u = random_patterned_isometry(n, k, m, d.child(), st.field)
        out.append(((k, m), psd.partial_isometry_reduction(lam, u, m, st.tolerance)))
    return out


def _trial_nested_frame(seed: int, n: int, st: Settings) -> list[Outcome]:
    d = Draw(seed, n, st)
    a = d.psd()
    decomp = psd.psd_decomposition(a)
    lam = clamp_spectrum(decomp.eigenvalues)
    out: list[Outcome] = []
    for s in d.subsets():
        frame = decomp.frame @ nested_coefficients(n, s, d.rng, st.field)
        out.append((s.indices, psd.nested_frame_det_bound_spectral(a, lam, decomp, s, frame, st.tolerance)))
    return out


def _trial_fan(seed: int, n: int, st: Settings) -> list[Outcome]:
    d = Draw(seed, n, st)
    b = d.psd()
    lb = psd.psd_spectrum(b, "B")
    return [
        ((k,), psd.fan_min_det_spectral(b, lb, random_patterned_isometry(n, k, n, d.child(), st.field), st.tolerance))
        for k in _ks(n)
    ]


def _trial_main(seed: int, n: int, st: Settings) -> list[Outcome]:
    d = Draw(seed, n, st)
    la, lb, lab = _psd_spectra(d)
    return [(s.indices, psd.main_bounds_spectral(la, lb, lab, s.zero_based, st.tolerance)) for s in d.subsets()]


def _trial_pairwise(seed: int, n: int, st: Settings) -> list[Outcome]:
    la, lb, lab = _psd_spectra(Draw(seed, n, st))
    return [
        ((i, j), psd.pairwise_bound_spectral(la, lb, lab, i, j, st.tolerance))
        for i in range(1, n + 1)
        for j in range(i + 1, n + 1)
    ]


def _trial_counterexamples(seed: int, n: int, st: Settings) -> list[Outcome]:
    return [(None, bounds.reproduce_counterexamples(st.tolerance))]


def _trial_hua_identity(seed: int, n: int, st: Settings) -> list[Outcome]:
    d = Draw(seed, n, st)
    return [(None, ct.hua_identity_residual(d.contraction(), d.contraction(), st.identity_tolerance))]


def _trial_sum_identity(seed: int, n: int, st: Settings) -> list[Outcome]:
    d = Draw(seed, n, st)
    return [(None, ct.sum_identity_residual(d.general(), d.general(), st.identity_tolerance))]


def _det_family(core: Callable[..., BoundReport], strict: bool) -> Callable[[int, int, Settings], list[Outcome]]:
    def trial(seed: int, n: int, st: Settings) -> list[Outcome]:
        d = Draw(seed, n, st)
        a, b = (d.contraction(), d.contraction()) if strict else (d.general(), d.general())
        if strict:
            ct.require_contraction(a, "A", strict=True)
            ct.require_contraction(b, "B", strict=True)
        return [(None, core(ct.DetTerms.of(a, b), st.tolerance))]

    return trial


def _trial_marcus(seed: int, n: int, st: Settings) -> list[Outcome]:
    d = Draw(seed, n, st)
    s = ct.MarcusSpectra.of(d.contraction(), d.contraction())
    return [((k,), ct.marcus_bounds_spectral(s, k, st.tolerance)) for k in _ks(n)]


def _trial_contraction_main(seed: int, n: int, st: Settings) -> list[Outcome]:
    d = Draw(seed, n, st)
    s = ct.ContractionSpectra.of(d.contraction(), d.contraction())
    return [(q.indices, ct.contraction_main_bound_spectral(s, q.zero_based, st.tolerance)) for q in d.subsets()]


def _trial_reversal(seed: int, n: int, st: Settings) -> list[Outcome]:
    d = Draw(seed, n, st)
    s = ct.ReversalSpectra.of(d.general(), d.general())
    return [(q.indices, ct.reversal_bound_spectral(s, q.zero_based, st.tolerance)) for q in d.subsets()]


# ---------------------------------------------------------------------------
# single evaluation on user matrices


@dataclass(frozen=True)
class VerifyInput:
    a: np.ndarray | None
    b: np.ndarray | None
    index: str | None
    tol: float | None


def _need(x: np.ndarray | None, which: str) -> np.ndarray:
    if x is None:
        raise ConfigError(f"this check needs --{which}")
    return x


def _ints(text: str | None) -> list[int]:
    if not text:
        return []
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise ConfigError(f"cannot parse index list {text!r}") from exc


def _one_int(v: VerifyInput, default: int) -> int:
    vals = _ints(v.index)
    if len(vals) > 1:
        raise ConfigError("this check takes a single integer --index")
    return vals[0] if vals else default


def _seq(v: VerifyInput, n: int) -> IndexSequence:
    return IndexSequence.parse(n, v.index) if v.index else IndexSequence.head(n, n)


def _tol(v: VerifyInput, default: float = DEFAULT_TOL) -> float:
    return default if v.tol is None else v.tol


def _vec(x: np.ndarray) -> list[float]:
    return x.real.ravel().tolist()


def _verify_k(fn: Callable[..., BoundReport], default_first: bool) -> Callable[[VerifyInput], Report]:
    def run(v: VerifyInput) -> Report:
        a, b = _need(v.a, "a"), _need(v.b, "b")
        return fn(a, b, _one_int(v, 1 if default_first else a.shape[0]), _tol(v))

    return run


def _verify_pair(fn: Callable[..., Report], tol: float = DEFAULT_TOL) -> Callable[[VerifyInput], Report]:
    def run(v: VerifyInput) -> Report:
        return fn(_need(v.a, "a"), _need(v.b, "b"), _tol(v, tol))

    return run


def _verify_seq(fn: Callable[..., BoundReport]) -> Callable[[VerifyInput], Report]:
    def run(v: VerifyInput) -> Report:
        a, b = _need(v.a, "a"), _need(v.b, "b")
        return fn(a, b, _seq(v, a.shape[0]), _tol(v))

    return run


def _verify_pairwise(v: VerifyInput) -> Report:
    vals = _ints(v.index) or [1, 2]
    if len(vals) != 2:
        raise ConfigError("pairwise_bound takes --index i,j")
    return psd.pairwise_bound(_need(v.a, "a"), _need(v.b, "b"), vals[0], vals[1], _tol(v))


def _verify_partial_isometry(v: VerifyInput) -> Report:
    d = _need(v.a, "a")
    lam = np.diag(d).real.tolist() if d.shape[0] == d.shape[1] and d.shape[0] > 1 else _vec(d)
    return psd.partial_isometry_reduction(lam, _need(v.b, "b"), _one_int(v, 1), _tol(v))


def _verify_nested(v: VerifyInput) -> Report:
    a, frame = _need(v.a, "a"), _need(v.b, "b")
    seq = IndexSequence.parse(a.shape[0], v.index) if v.index else IndexSequence.head(a.shape[0], frame.shape[1])
    return psd.nested_frame_det_bound(a, seq, frame, _tol(v))


# ---------------------------------------------------------------------------
# registry


@dataclass(frozen=True)
class Check:
    name: str
    anchor: str
    kind: str  # "bound" | "identity" | "fixed"
    preconditions: str
    index_family: str  # how each trial enumerates indices
    trial: Callable[[int, int, Settings], list[Outcome]]
    verify: Callable[[VerifyInput], Report]


_CHECKS = [
    Check("scalar_product_bound", "product of sums of nonnegative reals, AM-GM cross term", "bound",
          "a, b nonnegative, equal length", "single", _trial_scalar,
          lambda v: psd.scalar_product_bound(_vec(_need(v.a, "a")), _vec(_need(v.b, "b")), _tol(v))),
    Check("fiedler_chain", "Fiedler tail-product chain", "bound",
          "A, B PSD, same n; 1 <= k <= n", "k", _k_family(psd.fiedler_chain_spectral),
          _verify_k(psd.fiedler_chain, True)),
    Check("oppenheim_tail_power", "Oppenheim geometric-mean tail bound", "bound",
          "A, B PSD, same n; 1 <= k <= n", "k", _k_family(psd.oppenheim_tail_power_spectral),
          _verify_k(psd.oppenheim_tail_power, True)),
    Check("minkowski_det", "Minkowski determinant inequality", "bound",
          "A, B PSD, same n", "single", _single_psd(psd.minkowski_det_spectral),
          _verify_pair(psd.minkowski_det)),
    Check("hartfiel_det", "Hartfiel determinant inequality", "bound",
          "A, B PSD, same n", "single", _single_psd(psd.hartfiel_det_spectral),
          _verify_pair(psd.hartfiel_det)),
    Check("lidskii_product", "Lidskii two-sided product bounds for AB", "bound",
          "A, B PSD, same n; index set I", "subsets", _trial_lidskii,
          _verify_seq(psd.lidskii_product)),
    Check("partial_isometry_reduction", "partial-isometry determinant reduction", "bound",
          "U*U = I; first column of U zero below row m; lambdas descending >= 0", "k,m",
          _trial_partial_isometry, _verify_partial_isometry),
    Check("nested_frame_det_bound", "nested-frame determinant lower bound", "bound",
          "A PSD; orthonormal x_t in span of leading i_t eigenvectors", "subsets",
          _trial_nested_frame, _verify_nested),
    Check("fan_min_det", "Fan minimum principle for compressed determinants", "bound",
          "B PSD; U*U = I", "k", _trial_fan,
          lambda v: psd.fan_min_det(_need(v.a, "a"), _need(v.b, "b"), _tol(v))),
    Check("main_bounds", "index-set eigenvalue products of A+B (power and three-term forms)", "bound",
          "A, B PSD, same n; index set I", "subsets", _trial_main,
          _verify_seq(psd.main_bounds)),
    Check("head_tail_power", "k largest of A+B vs k largest of A and k smallest of B", "bound",
          "A, B PSD, same n; 1 <= k <= n", "k", _k_family(psd.head_tail_power_spectral),
          _verify_k(psd.head_tail_power, False)),
    Check("pairwise_bound", "product of two eigenvalues of A+B", "bound",
          "A, B PSD, same n >= 2; 1 <= i < j <= n", "pairs", _trial_pairwise, _verify_pairwise),
    Check("tail_chain", "strengthened Fiedler chain, tail and head forms", "bound",
          "A, B PSD, same n; 1 <= k <= n", "k", _k_family(psd.tail_chain_spectral),
          _verify_k(psd.tail_chain, False)),
    Check("reproduce_counterexamples", "2x2 counterexamples to two tempting strengthenings", "fixed",
          "none", "fixed", _trial_counterexamples, lambda v: bounds.reproduce_counterexamples(_tol(v))),
    Check("hua_identity_residual", "Hua matrix identity F + H = (I-B*A)(I-A*A)^-1(I-A*B)", "identity",
          "A, B strict contractions, same n", "single", _trial_hua_identity,
          _verify_pair(ct.hua_identity_residual, IDENTITY_TOL)),
    Check("sum_identity_residual", "identity I + A*A = P + Q", "identity",
          "A, B square, same n", "single", _trial_sum_identity,
          _verify_pair(ct.sum_identity_residual, IDENTITY_TOL)),
    Check("hua_det_inequality", "Hua determinant inequality", "bound",
          "A, B strict contractions, same n", "single", _det_family(ct.hua_det_terms, True),
          _verify_pair(ct.hua_det_inequality)),
    Check("hua_reversal_det", "reversal of the Hua inequality", "bound",
          "A, B square, same n", "single", _det_family(ct.hua_reversal_terms, False),
          _verify_pair(ct.hua_reversal_det)),
    Check("marcus_bounds", "Marcus eigenvalue and singular-value bounds, Weyl comparison", "bound",
          "A, B contractions, same n; 1 <= k <= n", "k", _trial_marcus,
          _verify_k(ct.marcus_bounds, False)),
    Check("contraction_main_bound", "index-set singular values of I - A*B for strict contractions", "bound",
          "A, B strict contractions, same n; index set I", "subsets", _trial_contraction_main,
          _verify_seq(ct.contraction_main_bound)),
    Check("hua_strengthened_det", "Hua inequality with (2^n-2) cross term", "bound",
          "A, B strict contractions, same n", "single", _det_family(ct.hua_strengthened_terms, True),
          _verify_pair(ct.hua_strengthened_det)),
    Check("reversal_bound", "index-set reversal bound for I - A*B and A + B", "bound",
          "A, B square, same n; index set I", "subsets", _trial_reversal,
          _verify_seq(ct.reversal_bound)),
    Check("reversal_det", "determinant reversal with (2^n-2) cross term", "bound",
          "A, B square, same n", "single", _det_family(ct.reversal_det_terms, False),
          _verify_pair(ct.reversal_det)),
]

REGISTRY: dict[str, Check] = {c.name: c for c in _CHECKS}
CHECK_NAMES: tuple[str, ...] = tuple(REGISTRY)


def get_check(name: str) -> Check:
    try:
        return REGISTRY[name]
    except KeyError:
        raise UnknownCheck(f"unknown check {name!r}; run `logmaj list`") from None


def list_checks() -> str:
    """Plain-text table of the registry."""
    rows = [("name", "kind", "indices", "result", "preconditions")]
    rows += [(c.name, c.kind, c.index_family, c.anchor, c.preconditions) for c in _CHECKS]
    widths = [max(len(r[i]) for r in rows) for i in range(4)]
    lines = ["  ".join(r[i].ljust(widths[i]) for i in range(4)) + "  " + r[4] for r in rows]
    lines.insert(1, "-" * len(lines[0]))
    return "\n".join(lines)


def verify(name: str, a: np.ndarray | None = None, b: np.ndarray | None = None,
           index: str | None = None, tol: float | None = None) -> Report:
    """Evaluate one check on given matrices (see the CLI ``verify`` command)."""
    check = get_check(name)
    if tol is not None and not tol >= 0:
        raise ConfigError(f"tolerance must be nonnegative, got {tol}")
    a = None if a is None else as_matrix(a)
    b = None if b is None else as_matrix(b)
    return check.verify(VerifyInput(a, b, index, tol))


# ---------------------------------------------------------------------------
# configuration and report


@dataclass(frozen=True)
class CampaignConfig:
    checks: tuple[str, ...] = CHECK_NAMES
    dims: tuple[int, ...] = tuple(range(1, 9))
    trials: int = 1000
    master_seed: int = 0
    tolerance: float = DEFAULT_TOL
    identity_tolerance: float = IDENTITY_TOL
    contraction_margin: float = 0.05
    field: str = "complex"
    index_mode: str = "auto"
    sample_count: int = 32
    workers: int = 1
    output: str | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "checks", tuple(self.checks))
        object.__setattr__(self, "dims", tuple(int(n) for n in self.dims))
        for name in self.checks:
            get_check(name)
        if not self.checks:
            raise ConfigError("no checks selected")
        if len(set(self.checks)) != len(self.checks):
            raise ConfigError("duplicate check names")
        if not self.dims or any(not 1 <= n <= 64 for n in self.dims):
            raise ConfigError(f"dims must be non-empty values in 1..64, got {self.dims}")
        if not isinstance(self.trials, int) or self.trials < 1:
            raise ConfigError(f"trials must be >= 1, got {self.trials!r}")
        if not 0 <= self.master_seed < 2**64:
            raise ConfigError("master_seed must be a 64-bit unsigned integer")
        if not (self.tolerance >= 0 and self.identity_tolerance >= 0):
            raise ConfigError("tolerances must be nonnegative")
        if not 0.0 < self.contraction_margin < 1.0:
            raise ConfigError("contraction_margin must lie in (0, 1)")
        if self.field not in ("complex", "real"):
            raise ConfigError(f"field must be 'complex' or 'real', got {self.field!r}")
        if self.index_mode not in INDEX_MODES:
            raise ConfigError(f"index_mode must be one of {INDEX_MODES}")
        if self.index_mode == "exhaustive" and max(self.dims) > 12:
            raise ConfigError("exhaustive index enumeration is limited to n <= 12")
        if self.sample_count < 1 or self.workers < 1:
            raise ConfigError("sample_count and workers must be >= 1")

    @property
    def settings(self) -> Settings:
        return Settings(self.tolerance, self.identity_tolerance, self.contraction_margin,
                        self.field, self.index_mode, self.sample_count)

    def to_dict(self) -> dict[str, Any]:
        d = asdict(self)
        d["checks"] = list(self.checks)
        d["dims"] = list(self.dims)
        return d

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "CampaignConfig":
        known = {f.name for f in fields(cls)}
        extra = set(d) - known
        if extra:
            raise ConfigError(f"unknown config keys: {sorted(extra)}")
        return cls(**d)

    @classmethod
    def load(cls, path: str) -> "CampaignConfig":
        try:
            with open(path, encoding="utf-8") as fh:
                doc = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        if not isinstance(doc, dict):
            raise ConfigError("config must be a JSON object")
        return cls.from_dict(doc)


@dataclass(frozen=True)
class Reproduction:
    """Everything needed to replay a violating evaluation."""

    master_seed: int
    check: str
    n: int
    trial: int
    index: list[int] | None
    margin: float | None
    residual: float | None


@dataclass(frozen=True)
class TrialError:
    n: int
    trial: int
    error: str


@dataclass
class DimSummary:
    n: int
    trials: int = 0
    evaluations: int = 0
    violations: int = 0
    errors: int = 0
    min_margin: float | None = None
    min_relative_margin: float | None = None
    max_residual: float | None = None


@dataclass
class CheckRecord:
    check: str
    trials: int = 0
    evaluations: int = 0
    violations: int = 0
    min_margin: float | None = None
    min_relative_margin: float | None = None
    max_residual: float | None = None
    reproductions: list[Reproduction] = field(default_factory=list)
    errors: list[TrialError] = field(default_factory=list)
    dims: list[DimSummary] = field(default_factory=list)

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "CheckRecord":
        d = dict(d)
        d["reproductions"] = [Reproduction(**r) for r in d.get("reproductions", [])]
        d["errors"] = [TrialError(**e) for e in d.get("errors", [])]
        d["dims"] = [DimSummary(**s) for s in d.get("dims", [])]
        return cls(**d)


@dataclass
class CampaignReport:
    config: CampaignConfig
    records: list[CheckRecord]
    wall_time: float = 0.0

    @property
    def violations(self) -> int:
        return sum(r.violations for r in self.records)

    @property
    def errors(self) -> int:
        return sum(len(r.errors) for r in self.records)

    @property
    def ok(self) -> bool:
        return self.violations == 0 and self.errors == 0

    def record(self, name: str) -> CheckRecord:
        for r in self.records:
            if r.check == name:
                return r
        raise KeyError(name)

    def body(self) -> dict[str, Any]:
        """Report without execution details (wall time, worker count).

        Identical configs give identical bodies however the work was split.
        """
        config = self.config.to_dict()
        del config["workers"]
        return {
            "config": config,
            "checks": [asdict(r) for r in self.records],
            "totals": {
                "trials": sum(r.trials for r in self.records),
                "evaluations": sum(r.evaluations for r in self.records),
                "violations": self.violations,
                "errors": self.errors,
            },
        }

    def body_json(self) -> str:
        return json.dumps(self.body(), sort_keys=True, indent=2, allow_nan=False)

    def to_json(self) -> str:
        doc = self.body()
        doc["execution"] = {"wall_time": self.wall_time, "workers": self.config.workers}
        return json.dumps(doc, sort_keys=True, indent=2, allow_nan=False)

    @classmethod
    def from_json(cls, text: str) -> "CampaignReport":
        try:
            doc = json.loads(text)
            execution = doc.get("execution", {})
            config = dict(doc["config"], workers=int(execution.get("workers", 1)))
            return cls(
                CampaignConfig.from_dict(config),
                [CheckRecord.from_dict(r) for r in doc["checks"]],
                float(execution.get("wall_time", 0.0)),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed campaign report: {exc}") from exc

    def summary(self) -> str:
        lines = []
        for r in self.records:
            status = "ok" if r.violations == 0 and not r.errors else "FAIL"
            extra = (f"min rel margin {r.min_relative_margin:.3e}" if r.min_relative_margin is not None
                     else f"max residual {r.max_residual:.3e}" if r.max_residual is not None else "")
            lines.append(f"{status:4}  {r.check:28} trials={r.trials:<6} evals={r.evaluations:<8} "
                         f"violations={r.violations:<4} errors={len(r.errors):<3} {extra}")
        lines.append(f"total violations={self.violations} errors={self.errors} wall={self.wall_time:.1f}s")
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# execution


def trial_seed(master_seed: int, check: str, n: int, trial: int) -> int:
    ss = np.random.SeedSequence(int(master_seed), spawn_key=(name_key(check), int(n), int(trial)))
    return int(ss.generate_state(1, np.uint64)[0])


def _finite(x: float) -> float | None:
    return float(x) if math.isfinite(x) else None


# (trial, evaluations, min_margin, min_rel, max_residual, [(index, margin, residual)], error)
TrialResult = tuple[int, int, float | None, float | None, float | None, list, str | None]


def run_trial(check: Check, master_seed: int, n: int, trial: int, st: Settings) -> TrialResult:
    try:
        outcomes = check.trial(trial_seed(master_seed, check.name, n, trial), n, st)
    except (LogMajError, ArithmeticError, np.linalg.LinAlgError) as exc:
        return trial, 0, None, None, None, [], f"{type(exc).__name__}: {exc}"
    min_m = min_r = max_res = None
    bad = []
    for index, rep in outcomes:
        margin = residual = None
        if isinstance(rep, BoundReport):
            margin = rep.margin
            rel = rep.relative_margin
            if math.isfinite(margin):
                min_m = margin if min_m is None else min(min_m, margin)
                min_r = rel if min_r is None else min(min_r, rel)
        elif isinstance(rep, IdentityReport):
            residual = rep.residual
            if math.isfinite(residual):
                max_res = residual if max_res is None else max(max_res, residual)
        if not rep.satisfied:
            bad.append((list(index) if index is not None else None,
                        None if margin is None else _finite(margin),
                        None if residual is None else _finite(residual)))
    return trial, len(outcomes), min_m, min_r, max_res, bad, None


Unit = tuple[str, int, int, int]  # check, n, first trial, end trial


def _run_unit(args: tuple[Unit, int, Settings]) -> list[TrialResult]:
    (name, n, start, stop), master_seed, st = args
    check = REGISTRY[name]
    return [run_trial(check, master_seed, n, t, st) for t in range(start, stop)]


def _units(cfg: CampaignConfig, chunk: int) -> list[Unit]:
    units = []
    for name in cfg.checks:
        if REGISTRY[name].kind == "fixed":
            units.append((name, cfg.dims[0], 0, 1))
            continue
        for n in cfg.dims:
            for start in range(0, cfg.trials, chunk):
                units.append((name, n, start, min(start + chunk, cfg.trials)))
    return units


def _lo(a: float | None, b: float | None) -> float | None:
    return b if a is None else a if b is None else min(a, b)


def _hi(a: float | None, b: float | None) -> float | None:
    return b if a is None else a if b is None else max(a, b)


def run_campaign(cfg: CampaignConfig, workers: int | None = None, chunk: int = 100) -> CampaignReport:
    """Run every (check, n, trial) unit and aggregate in a fixed order."""
    workers = cfg.workers if workers is None else workers
    st = cfg.settings
    units = _units(cfg, chunk)
    jobs = [(u, cfg.master_seed, st) for u in units]
    t0 = time.perf_counter()
    if workers <= 1:
        results = [_run_unit(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_unit, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    records: dict[str, CheckRecord] = {name: CheckRecord(name) for name in cfg.checks}
    dims: dict[tuple[str, int], DimSummary] = {}
    for (name, n, _, _), trials in zip(units, results):
        rec = records[name]
        dim = dims.setdefault((name, n), DimSummary(n))
        for trial, evals, min_m, min_r, max_res, bad, err in trials:
            for target in (rec, dim):
                target.trials += 1
                target.evaluations += evals
                target.violations += len(bad)
                target.min_margin = _lo(target.min_margin, min_m)
                target.min_relative_margin = _lo(target.min_relative_margin, min_r)
                target.max_residual = _hi(target.max_residual, max_res)
            if err is not None:
                dim.errors += 1
                rec.errors.append(TrialError(n, trial, err))
            for index, margin, residual in bad:
                rec.reproductions.append(Reproduction(cfg.master_seed, name, n, trial, index, margin, residual))
    for (name, _), dim in dims.items():
        records[name].dims.append(dim)
    used = cfg if workers == cfg.workers else replace(cfg, workers=max(1, workers))
    return CampaignReport(used, [records[name] for name in cfg.checks], time.perf_counter() - t0)


def replay(rep: Reproduction, cfg: CampaignConfig | None = None) -> list[Outcome]:
    """Re-evaluate the trial a reproduction record points to."""
    st = (cfg or CampaignConfig(checks=(rep.check,), master_seed=rep.master_seed)).settings
    check = get_check(rep.check)
    return check.trial(trial_seed(rep.master_seed, rep.check, rep.n, rep.trial), rep.n, st)


__all__ = [
    "CHECK_NAMES",
    "REGISTRY",
    "CampaignConfig",
    "CampaignReport",
    "Check",
    "CheckRecord",
    "Reproduction",
    "Settings",
    "get_check",
    "list_checks",
    "replay",
    "run_campaign",
    "trial_seed",
    "verify",
]
