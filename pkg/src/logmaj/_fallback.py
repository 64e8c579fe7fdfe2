"""Pure numpy versions of the compiled kernels in ``_kernels.pyx``.

Same algorithms, same return conventions; used when the extension is not
built or when ``LOGMAJ_PURE=1`` is set.
"""

from __future__ import annotations

import math

import numpy as np


def _rotation(app: float, aqq: float, apq: complex) -> tuple[float, float, float, complex]:
    g = abs(apq)
    if aqq - app > 1e150 * g or app - aqq > 1e150 * g:
        return 1.0, 0.0, 0.0, apq / g
    theta = (aqq - app) / (2.0 * g)
    if abs(theta) > 1e150:
        t = 0.5 / theta
    elif theta >= 0.0:
        t = 1.0 / (theta + math.sqrt(theta * theta + 1.0))
    else:
        t = -1.0 / (-theta + math.sqrt(theta * theta + 1.0))
    c = 1.0 / math.sqrt(t * t + 1.0)
    return c, t * c, t, apq / g


def jacobi_eigh(a_in, tol: float = 1e-14, max_sweeps: int = 100):
    a = np.array(a_in, dtype=np.complex128, copy=True)
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    a[np.diag_indices(n)] = a.diagonal().real
    total = float(np.linalg.norm(a))
    sweep = 0
    while True:
        off = float(np.linalg.norm(a - np.diag(a.diagonal())))
        if off <= tol * (1.0 + total) or sweep >= max_sweeps:
            break
        sweep += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = complex(a[p, q])
                g = abs(apq)
                if g == 0.0:
                    continue
                app = a[p, p].real
                aqq = a[q, q].real
                c, s, t, e = _rotation(app, aqq, apq)
                se = s * e
                sce = s * e.conjugate()
                x = a[:, p].copy()
                y = a[:, q]
                a[:, p] = c * x - sce * y
                a[:, q] = se * x + c * y
                x = a[p, :].copy()
                y = a[q, :]
                a[p, :] = c * x - se * y
                a[q, :] = sce * x + c * y
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = app - t * g
                a[q, q] = aqq + t * g
                x = v[:, p].copy()
                y = v[:, q]
                v[:, p] = c * x - sce * y
                v[:, q] = se * x + c * y
    return a.diagonal().real.copy(), v, sweep


def jacobi_singular_values(a_in, tol: float = 1e-15, max_sweeps: int = 100):
    b = np.array(a_in, dtype=np.complex128, copy=True)
    if b.shape[0] < b.shape[1]:
        b = b.conj().T.copy()
    n = b.shape[1]
    sweep = 0
    rotated = True
    while rotated and sweep < max_sweeps:
        rotated = False
        sweep += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                bp = b[:, p]
                bq = b[:, q]
                alpha = float(np.vdot(bp, bp).real)
                beta = float(np.vdot(bq, bq).real)
                gamma = complex(np.vdot(bp, bq))
                if abs(gamma) <= tol * math.sqrt(alpha * beta) or gamma == 0:
                    continue
                rotated = True
                c, s, _, e = _rotation(alpha, beta, gamma)
                x = bp.copy()
                b[:, p] = c * x - s * e.conjugate() * bq
                b[:, q] = s * e * x + c * bq
    return np.sqrt(np.sum(np.abs(b) ** 2, axis=0)), sweep


def _hessenberg(h: np.ndarray) -> None:
    n = h.shape[0]
    for j in range(n - 2):
        x = h[j + 1:, j].copy()
        norm = float(np.linalg.norm(x))
        if norm == 0.0:
            continue
        phase = x[0] / abs(x[0]) if x[0] != 0 else 1.0
        x[0] += phase * norm
        vnorm2 = float(np.vdot(x, x).real)
        if vnorm2 == 0.0:
            continue
        h[j + 1:, :] -= np.outer(x, (2.0 / vnorm2) * (x.conj() @ h[j + 1:, :]))
        h[:, j + 1:] -= np.outer((2.0 / vnorm2) * (h[:, j + 1:] @ x), x.conj())
        h[j + 2:, j] = 0.0


def _wilkinson(a: complex, b: complex, c: complex, d: complex) -> complex:
    tr = a + d
    det = a * d - b * c
    disc = (tr * tr / 4.0 - det) ** 0.5
    l1 = tr / 2.0 + disc
    l2 = tr / 2.0 - disc
    return l1 if abs(l1 - d) <= abs(l2 - d) else l2


def hessenberg_eigvals(a_in, max_iter_per_value: int = 60):
    h = np.array(a_in, dtype=np.complex128, copy=True)
    n = h.shape[0]
    if n > 64:
        raise ValueError("dimension above 64")
    _hessenberg(h)
    out = np.empty(n, dtype=np.complex128)
    eps = np.finfo(float).eps
    hi = n - 1
    iters = 0
    while hi >= 0:
        if hi == 0:
            out[0] = h[0, 0]
            break
        l = hi
        while l > 0:
            if abs(h[l, l - 1]) <= eps * (abs(h[l, l]) + abs(h[l - 1, l - 1])):
                h[l, l - 1] = 0.0
                break
            l -= 1
        if l == hi:
            out[hi] = h[hi, hi]
            hi -= 1
            iters = 0
            continue
        iters += 1
        if iters > max_iter_per_value:
            raise ArithmeticError("QR iteration did not converge")
        if iters % 11 == 0:
            mu = h[hi, hi] + 0.75 * abs(h[hi, hi - 1])
        else:
            mu = _wilkinson(h[hi - 1, hi - 1], h[hi - 1, hi], h[hi, hi - 1], h[hi, hi])
        lo = l
        idx = np.arange(lo, hi + 1)
        h[idx, idx] -= mu
        rots = []
        for j in range(lo, hi):
            x, y = h[j, j], h[j + 1, j]
            r = math.hypot(abs(x), abs(y))
            cg, sg = (1.0 + 0j, 0j) if r == 0.0 else (x / r, y / r)
            rots.append((cg, sg))
            p0 = h[j, j:hi + 1].copy()
            p1 = h[j + 1, j:hi + 1]
            h[j, j:hi + 1] = cg.conjugate() * p0 + sg.conjugate() * p1
            h[j + 1, j:hi + 1] = -sg * p0 + cg * p1
        for j, (cg, sg) in zip(range(lo, hi), rots):
            top = min(j + 2, hi)
            p0 = h[lo:top + 1, j].copy()
            p1 = h[lo:top + 1, j + 1]
            h[lo:top + 1, j] = cg * p0 + sg * p1
            h[lo:top + 1, j + 1] = -sg.conjugate() * p0 + cg.conjugate() * p1
        h[idx, idx] += mu
    return out
