"""Report values returned by every check."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Sequence

DEFAULT_TOL = 1e-9
IDENTITY_TOL = 1e-10


def _num(x: float) -> float | None:
    return float(x) if math.isfinite(x) else None


def _unnum(x: float | None) -> float:
    return math.nan if x is None else float(x)


@dataclass(frozen=True)
class BoundReport:
    """Outcome of an inequality (or inequality chain) ``lhs >= rhs_1 >= rhs_2 ...``.

    Inequalities stated with ``<=`` are stored flipped, so ``margin >= 0`` always
    means "holds". A composite report keeps its pieces in ``parts`` and carries
    the numbers of the part with the smallest relative margin.
    """

    check_name: str
    lhs: float
    rhs_terms: tuple[float, ...]
    margin: float
    tolerance: float
    satisfied: bool
    parts: tuple["BoundReport", ...] = field(default=())

    @property
    def scale(self) -> float:
        return max([1.0, abs(self.lhs)] + [abs(r) for r in self.rhs_terms])

    @property
    def relative_margin(self) -> float:
        return self.margin / self.scale if math.isfinite(self.margin) else -math.inf

    def part(self, name: str) -> "BoundReport":
        for p in self.parts:
            if p.check_name == name or p.check_name.endswith("." + name):
                return p
        raise KeyError(name)

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "check_name": self.check_name,
            "lhs": _num(self.lhs),
            "rhs_terms": [_num(r) for r in self.rhs_terms],
            "margin": _num(self.margin),
            "tolerance": self.tolerance,
            "satisfied": self.satisfied,
        }
        if self.parts:
            out["parts"] = [p.to_dict() for p in self.parts]
        return out

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "BoundReport":
        return cls(
            check_name=d["check_name"],
            lhs=_unnum(d["lhs"]),
            rhs_terms=tuple(_unnum(r) for r in d["rhs_terms"]),
            margin=_unnum(d["margin"]),
            tolerance=float(d["tolerance"]),
            satisfied=bool(d["satisfied"]),
            parts=tuple(cls.from_dict(p) for p in d.get("parts", ())),
        )

    def summary(self) -> str:
        verdict = "holds" if self.satisfied else "VIOLATED"
        rhs = " >= ".join(f"{r:.12g}" for r in self.rhs_terms)
        text = f"{self.check_name}: {self.lhs:.12g} >= {rhs}  margin={self.margin:.3e}  {verdict}"
        for p in self.parts:
            text += "\n  " + p.summary().replace("\n", "\n  ")
        return text


@dataclass(frozen=True)
class IdentityReport:
    """Entrywise residual of a matrix identity."""

    check_name: str
    residual: float
    scale: float
    tolerance: float
    satisfied: bool

    def to_dict(self) -> dict[str, Any]:
        return {
            "check_name": self.check_name,
            "residual": _num(self.residual),
            "scale": self.scale,
            "tolerance": self.tolerance,
            "satisfied": self.satisfied,
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "IdentityReport":
        return cls(d["check_name"], _unnum(d["residual"]), float(d["scale"]), float(d["tolerance"]), bool(d["satisfied"]))

    def summary(self) -> str:
        verdict = "holds" if self.satisfied else "VIOLATED"
        return f"{self.check_name}: residual={self.residual:.3e} (scale {self.scale:.3g})  {verdict}"


def chain(name: str, links: Sequence[float], tol: float = DEFAULT_TOL) -> BoundReport:
    """Report for ``links[0] >= links[1] >= ...``; margin is the smallest adjacent gap."""
    links = [float(x) for x in links]
    if all(math.isfinite(x) for x in links):
        margin = min(a - b for a, b in zip(links, links[1:]))
    else:
        margin = math.nan
    scale = max(1.0, max(abs(x) for x in links))
    ok = math.isfinite(margin) and margin >= -tol * scale
    return BoundReport(name, links[0], tuple(links[1:]), margin, tol, ok)


def combine(name: str, parts: Sequence[BoundReport], tol: float = DEFAULT_TOL) -> BoundReport:
    worst = min(parts, key=lambda p: p.relative_margin)
    return BoundReport(
        name,
        worst.lhs,
        worst.rhs_terms,
        worst.margin,
        tol,
        all(p.satisfied for p in parts),
        tuple(parts),
    )


def identity_report(name: str, residual: float, scale: float, tol: float = IDENTITY_TOL) -> IdentityReport:
    ok = math.isfinite(residual) and residual <= tol * (1.0 + scale)
    return IdentityReport(name, float(residual), float(scale), tol, ok)


def report_from_dict(d: dict[str, Any]) -> BoundReport | IdentityReport:
    return IdentityReport.from_dict(d) if "residual" in d else BoundReport.from_dict(d)
