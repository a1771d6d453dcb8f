"""Dense Hermitian eigensolver: Householder tridiagonalization + implicit QL.

Deterministic by construction (fixed reduction order, fixed shift strategy,
stable sort, fixed eigenvector phase convention), which keeps quasienergy
sweeps bit-reproducible across runs.  Matrices here are small (dimension a
few hundred at most), so the plain O(n^3) dense path is entirely adequate.
"""

import math

import numpy as np

__all__ = ["EigensolverError", "hermitian_eigh"]

_EPS = np.finfo(float).eps


class EigensolverError(RuntimeError):
    """QL iteration failed to converge within the sweep budget."""


def _tridiagonalize(a):
    """Unitary reduction of Hermitian a to real symmetric tridiagonal form.

    Returns (d, e, q) with d the diagonal, e the subdiagonal (both real) and
    q the accumulated transformation, a = q T q^dagger.
    """
    a = np.array(a, dtype=complex)
    n = a.shape[0]
    q = np.eye(n, dtype=complex)
    for k in range(n - 2):
        x = a[k + 1:, k].copy()
        norm_x = np.linalg.norm(x)
        if norm_x == 0.0:
            continue
        alpha = -np.exp(1j * np.angle(x[0])) * norm_x if x[0] != 0 else -norm_x
        v = x.copy()
        v[0] -= alpha
        vn = np.linalg.norm(v)
        if vn == 0.0:
            continue
        v /= vn
        # two-sided reflector on the trailing block: A <- P A P, P = 1 - 2vv+
        sub = a[k + 1:, k + 1:]
        w = sub @ v
        kappa = np.vdot(v, w)
        sub -= 2.0 * np.outer(v, w.conj())
        sub -= 2.0 * np.outer(w, v.conj())
        sub += 4.0 * kappa * np.outer(v, v.conj())
        a[k + 1, k] = alpha
        a[k, k + 1] = np.conj(alpha)
        a[k + 2:, k] = 0.0
        a[k, k + 2:] = 0.0
        q[:, k + 1:] -= 2.0 * np.outer(q[:, k + 1:] @ v, v.conj())
    d = a.diagonal().real.copy()
    e = np.zeros(n, dtype=float)
    if n > 1:
        # rotate residual subdiagonal phases into q so T is real symmetric
        sub = a.diagonal(-1).copy()
        phase = np.ones(n, dtype=complex)
        for j in range(n - 1):
            e[j] = abs(sub[j])
            phase[j + 1] = phase[j] if e[j] == 0.0 else phase[j] * sub[j] / e[j]
        q *= phase[np.newaxis, :]
    return d, e, q


def hermitian_eigh(a, max_sweeps_per_n: int = 30):
    """Eigendecomposition of a Hermitian matrix.

    Returns (w, v) with eigenvalues w ascending and eigenvector columns v
    satisfying a @ v = v @ diag(w).  The phase of each eigenvector is fixed
    by making its largest-magnitude component real and positive.
    """
    a = np.asarray(a, dtype=complex)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("matrix must be square")
    herm_defect = np.abs(a - a.conj().T).max() if n else 0.0
    scale = max(float(np.abs(a).max()), 1.0) if n else 1.0
    if herm_defect > 1e-12 * scale:
        raise ValueError(f"matrix is not Hermitian (defect {herm_defect:.3e})")
    if n == 0:
        return np.empty(0), np.empty((0, 0), dtype=complex)
    if n == 1:
        return np.array([a[0, 0].real]), np.ones((1, 1), dtype=complex)

    d, e, z = _tridiagonalize(a)
    anorm = float(np.max(np.abs(d)) + np.max(np.abs(e))) or 1.0
    budget = max_sweeps_per_n * n
    sweeps = 0
    for l in range(n):
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= _EPS * (dd if dd > 0.0 else anorm):
                    break
                m += 1
            if m == l:
                break
            sweeps += 1
            if sweeps > budget:
                raise EigensolverError(
                    f"eigensolver failure: no convergence after {budget} sweeps"
                )
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            underflow = False
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                col_i = z[:, i].copy()
                col_j = z[:, i + 1].copy()
                z[:, i + 1] = s * col_i + c * col_j
                z[:, i] = c * col_i - s * col_j
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    order = np.argsort(d, kind="stable")
    w = d[order]
    v = z[:, order]
    # deterministic phase: largest component of each column real positive
    idx = np.argmax(np.abs(v), axis=0)
    lead = v[idx, np.arange(n)]
    nz = np.abs(lead) > 0
    ph = np.ones(n, dtype=complex)
    ph[nz] = np.abs(lead[nz]) / lead[nz]
    v = v * ph[np.newaxis, :]
    return w, v
