"""Fixed 2x2 instances showing that two tempting strengthenings fail,
alongside the weaker inequality that always holds."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any

import numpy as np

from .psd import psd_spectrum
from .reports import DEFAULT_TOL, BoundReport, chain, combine

E11 = np.diag([1.0, 0.0]).astype(np.complex128)
E22 = np.diag([0.0, 1.0]).astype(np.complex128)


@dataclass(frozen=True)
class CounterexampleReport:
    """``indexed_sum``/``head_sum``/``head_reversed_sum`` are expected to be violated;
    ``weyl_fallback`` is expected to hold."""

    indexed_sum: BoundReport
    head_sum: BoundReport
    head_reversed_sum: BoundReport
    weyl_fallback: BoundReport

    @property
    def reproduced(self) -> bool:
        return (
            self.indexed_sum.lhs == 0.0
            and self.indexed_sum.rhs_terms == (1.0,)
            and self.head_sum.lhs == 1.0
            and self.head_sum.rhs_terms == (2.0,)
            and not self.head_reversed_sum.satisfied
            and self.weyl_fallback.satisfied
        )

    @property
    def satisfied(self) -> bool:
        return self.reproduced

    @property
    def reports(self) -> tuple[BoundReport, ...]:
        return (self.indexed_sum, self.head_sum, self.head_reversed_sum, self.weyl_fallback)

    def to_dict(self) -> dict[str, Any]:
        return {
            "check_name": "reproduce_counterexamples",
            "reproduced": self.reproduced,
            "reports": [r.to_dict() for r in self.reports],
        }

    def summary(self) -> str:
        lines = [f"reproduce_counterexamples: {'reproduced' if self.reproduced else 'NOT reproduced'}"]
        for r in self.reports:
            lines.append("  " + r.summary().replace("\n", "\n  "))
        return "\n".join(lines)


def reproduce_counterexamples(tol: float = DEFAULT_TOL) -> CounterexampleReport:
    # A = B = diag(1, 0), I = {1, 2}: prod lam_{i_t}(A+B) vs prod [lam_{i_t}(A) + lam_{n-t+1}(B)]
    la = psd_spectrum(E11)
    lab = psd_spectrum(E11 + E11)
    n = 2
    indexed = chain(
        "indexed_sum",
        [math.prod(lab[i] for i in (0, 1)), math.prod(la[i] + la[n - 1 - t] for t, i in enumerate((0, 1)))],
        tol,
    )
    # same matrices, head form with reversed pairing, k = 2
    head_rev = chain(
        "head_reversed_sum",
        [math.prod(lab[:2]), math.prod(la[t] + la[n - 1 - t] for t in range(2))],
        tol,
    )
    # A = diag(1, 0), B = diag(0, 1), k = 1: lam_1(A+B) vs lam_1(A) + lam_1(B)
    lb = psd_spectrum(E22)
    lsum = psd_spectrum(E11 + E22)
    head = chain("head_sum", [lsum[0], la[0] + lb[0]], tol)
    # lam_i(A+B) >= lam_i(A) + lam_n(B) on both pairs, every i
    fallback = combine(
        "weyl_fallback",
        [
            chain(f"weyl_fallback.{label}.i{i + 1}", [ls[i], l1[i] + l2[-1]], tol)
            for label, l1, l2, ls in (("equal", la, la, lab), ("split", la, lb, lsum))
            for i in range(n)
        ],
        tol,
    )
    return CounterexampleReport(indexed, head, head_rev, fallback)
