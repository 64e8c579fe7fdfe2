"""Acceptance criteria, each run at its stated tolerance.

Every test records one PASS/FAIL line that is printed in the terminal summary
(see ``conftest.py``). The two default-campaign criteria share one sequential
run through a session fixture.
"""

import numpy as np
import pytest

from logmaj import bounds, linalg
from logmaj.bounds import psd
from logmaj.generators import (
    GenConfig,
    haar_unitary,
    make_rng,
    nested_coefficients,
    random_descending,
    random_index_sequence,
    random_patterned_isometry,
    random_psd,
    random_strict_contraction,
)
from logmaj.harness import REGISTRY, CampaignConfig, run_campaign
from logmaj.linalg import all_subsequences

from conftest import record_criterion

BOUND_CHECKS = [name for name, c in REGISTRY.items() if c.kind == "bound"]


@pytest.fixture(scope="session")
def default_campaign():
    return run_campaign(CampaignConfig())


@pytest.mark.slow
def test_criterion_1_theorem_suite(default_campaign):
    r = default_campaign
    cfg = r.config
    assert cfg.dims == tuple(range(1, 9)) and cfg.trials == 1000 and cfg.tolerance == 1e-9
    assert cfg.field == "complex" and cfg.contraction_margin == 0.05 and cfg.index_mode == "auto"
    bound_records = [r.record(name) for name in BOUND_CHECKS]
    violations = sum(rec.violations for rec in bound_records)
    errors = r.errors
    trials_ok = all(rec.trials == 8000 for rec in bound_records)
    worst = min(rec.min_relative_margin for rec in bound_records if rec.min_relative_margin is not None)
    ok = violations == 0 and errors == 0 and trials_ok and r.wall_time < 300
    record_criterion(
        1, "theorem suite", ok,
        f"{len(bound_records)} bound checks x 8 dims x 1000 trials, violations={violations}, errors={errors}, "
        f"worst relative margin={worst:.2e}, runtime={r.wall_time:.1f}s (limit 300s)",
    )
    assert ok


def test_criterion_2_counterexamples():
    r = bounds.reproduce_counterexamples()
    first = (r.indexed_sum.lhs, r.indexed_sum.rhs_terms)
    second = (r.head_sum.lhs, r.head_sum.rhs_terms)
    ok = first == (0.0, (1.0,)) and second == (1.0, (2.0,)) and r.reproduced
    record_criterion(2, "counterexample reproduction", ok,
                     f"indexed form {first[0]:g} vs {first[1][0]:g}; lambda_1(A+B) {second[0]:g} < {second[1][0]:g}")
    assert ok


def test_criterion_3_equality_witnesses():
    worst_identity = 0.0
    for n in range(1, 9):
        eye = np.eye(n)
        for seq in all_subsequences(n):
            worst_identity = max(worst_identity, abs(bounds.main_bounds(eye, eye, seq).part("three_term").margin))

    worst_hua = 0.0
    for seed in range(200):
        n = 1 + seed % 8
        a = random_strict_contraction(GenConfig(seed, n))
        for rep in (bounds.hua_det_inequality(a, a), bounds.hua_strengthened_det(a, a)):
            worst_hua = max(worst_hua, abs(rep.margin) / rep.scale)

    exact = True
    for n in range(1, 9):
        z = np.zeros((n, n))
        reps = [bounds.marcus_bounds(z, z, k) for k in range(1, n + 1)]
        reps += [bounds.contraction_main_bound(z, z, s) for s in all_subsequences(n)]
        reps += [bounds.reversal_bound(z, z, s) for s in all_subsequences(n)]
        reps.append(bounds.reversal_det(z, z))
        for rep in reps:
            for part in rep.parts or (rep,):
                exact &= part.margin == 0.0 and part.lhs == part.rhs_terms[0]

    ok = worst_identity <= 1e-9 and worst_hua <= 1e-9 and exact
    record_criterion(3, "equality witnesses", ok,
                     f"identity three-term max|margin|={worst_identity:.1e}, A=B Hua max|margin|/scale={worst_hua:.1e}, "
                     f"zero-matrix equalities exact={exact}")
    assert ok


def test_criterion_4_identity_residuals():
    cfg = CampaignConfig(checks=("hua_identity_residual", "sum_identity_residual"), trials=1000, master_seed=4)
    r = run_campaign(cfg)
    recs = [r.record(name) for name in cfg.checks]
    ok = r.ok and all(rec.trials == 8000 for rec in recs)
    detail = ", ".join(f"{rec.check} max residual {rec.max_residual:.1e} over {rec.trials} trials" for rec in recs)
    record_criterion(4, "identity residuals <= 1e-10(1+scale)", ok, detail)
    assert ok


def test_criterion_5_scalar_identities():
    rng = make_rng(5)
    worst = {}

    def note(name, rep):
        worst[name] = max(worst.get(name, 0.0), abs(rep.margin) / rep.scale)

    for _ in range(1000):
        # strict contractions for the Hua forms, unrestricted scalars for the reversals
        ra, rb = 0.999 * np.sqrt(rng.uniform(size=2))
        pa, pb = rng.uniform(0, 2 * np.pi, 2)
        a, b = np.array([[ra * np.exp(1j * pa)]]), np.array([[rb * np.exp(1j * pb)]])
        note("hua_det_inequality", bounds.hua_det_inequality(a, b).part("hua"))
        note("hua_strengthened_det", bounds.hua_strengthened_det(a, b))
        x, y = (rng.standard_normal(2) + 1j * rng.standard_normal(2)) * rng.uniform(0, 3, 2)
        x, y = np.array([[x]]), np.array([[y]])
        note("hua_reversal_det", bounds.hua_reversal_det(x, y))
        for part in bounds.reversal_det(x, y).parts:
            note("reversal_det", part)
    ok = all(v <= 1e-12 for v in worst.values())
    record_criterion(5, "n=1 identity family at 1e-12", ok,
                     ", ".join(f"{k} {v:.1e}" for k, v in worst.items()) + " (max |margin|/scale, 1000 inputs)")
    assert ok


def test_criterion_6_oracle_checks():
    samples = 1000
    counts = {"nested_frame_det_bound": 0, "fan_min_det": 0, "partial_isometry_reduction": 0}
    bad = dict.fromkeys(counts, 0)
    for n in range(1, 9):
        rng = make_rng(6, n)
        a = random_psd(GenConfig(60 + n, n, spectrum_mode="clustered"))
        decomp = psd.psd_decomposition(a)
        lam = linalg.clamp_spectrum(decomp.eigenvalues)
        b = random_psd(GenConfig(70 + n, n, spectrum_mode="rank-deficient"))
        lb = psd.psd_spectrum(b)
        lambdas = random_descending(rng, n, zeros=n > 2)
        for s in range(samples):
            seq = random_index_sequence(rng, n)
            frame = decomp.frame @ nested_coefficients(n, seq, rng)
            rep = psd.nested_frame_det_bound_spectral(a, lam, decomp, seq, frame)
            bad["nested_frame_det_bound"] += not rep.satisfied

            k = int(rng.integers(1, n + 1))
            rep = psd.fan_min_det_spectral(b, lb, random_patterned_isometry(n, k, n, s * 8 + n))
            bad["fan_min_det"] += not rep.satisfied

            m = int(rng.integers(1, n + 1))
            u = random_patterned_isometry(n, k, m, s * 8 + n + 10**6)
            bad["partial_isometry_reduction"] += not bounds.partial_isometry_reduction(lambdas, u, m).satisfied
            for key in counts:
                counts[key] += 1
    ok = all(v == 0 for v in bad.values())
    record_criterion(6, "sampled frames and isometries", ok,
                     ", ".join(f"{k} {bad[k]} violations / {counts[k]}" for k in counts) + f" ({samples} per instance, n=1..8)")
    assert ok


def test_criterion_7_numerical_core():
    rng = make_rng(7)
    worst_rec = worst_orth = worst_spec = 0.0
    for i in range(1000):
        n = 1 + i % 64
        spectrum = np.sort(rng.uniform(-1, 1, n) * 10.0 ** rng.uniform(-2, 2))[::-1]
        u = haar_unitary(rng, n)
        h = linalg.hermitian_part((u * spectrum) @ u.conj().T)
        d = linalg.hermitian_eig(h)
        worst_rec = max(worst_rec, np.max(np.abs(d.reconstruct() - h)) / (1 + np.max(np.abs(h))))
        worst_orth = max(worst_orth, np.max(np.abs(d.frame.conj().T @ d.frame - np.eye(n))))
        worst_spec = max(worst_spec, np.max(np.abs(d.eigenvalues - spectrum)) / np.max(np.abs(spectrum)))
    ok = worst_rec <= 1e-11 and worst_orth <= 1e-12 and worst_spec <= 1e-9
    record_criterion(7, "numerical core", ok,
                     f"1000 Hermitian matrices n=1..64: reconstruction {worst_rec:.1e}/(1+max|A|), "
                     f"orthogonality {worst_orth:.1e}, spectrum round trip {worst_spec:.1e} relative")
    assert ok


@pytest.mark.slow
def test_criterion_8_determinism(default_campaign):
    parallel = run_campaign(CampaignConfig(), workers=8)
    same = parallel.body_json() == default_campaign.body_json()
    record_criterion(8, "determinism", same,
                     f"default campaign body, sequential vs 8 workers byte-identical={same} "
                     f"({len(default_campaign.body_json())} bytes)")
    assert same

