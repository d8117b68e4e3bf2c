"""Symmetric/Hermitian eigenvalue routines.

Two use cases drive this module: Monte Carlo sampling needs eigenvalues of
many small matrices at once (batched Householder tridiagonalization
followed by a batch-masked implicit-shift QL iteration), and Golub-Welsch
quadrature needs one tridiagonal eigendecomposition with eigenvectors.
The QL iteration is the classical EISPACK tql scheme; the batch variant
runs it with uniform control flow, masking rotations per matrix.
"""

from __future__ import annotations

import numpy as np

from .errors import AccuracyError

_EPS = np.finfo(float).eps


def householder_tridiag_batch(a):
    """Reduce a batch of Hermitian matrices to real symmetric tridiagonal.

    a has shape (B, n, n).  Returns (d, e) with shapes (B, n) and (B, n-1);
    the reduction is unitary so eigenvalues are preserved, and complex
    subdiagonal phases are absorbed (e holds magnitudes).
    """
    a = np.array(a, dtype=complex if np.iscomplexobj(a) else float)
    b, n, _ = a.shape
    if n == 1:
        return a[:, 0, 0].real.reshape(b, 1), np.zeros((b, 0))
    ec = np.zeros((b, n - 1), dtype=a.dtype)
    for k in range(n - 2):
        x = a[:, k + 1:, k]
        normx = np.sqrt(np.sum(np.abs(x) ** 2, axis=1))
        x0 = x[:, 0]
        absx0 = np.abs(x0)
        phase = np.where(absx0 > 0, x0 / np.where(absx0 > 0, absx0, 1.0), 1.0)
        alpha = -phase * normx
        v = x.copy()
        v[:, 0] = x0 - alpha
        sigma = np.sum(np.abs(v) ** 2, axis=1)
        ok = sigma > 1e-300
        tau = np.where(ok, 2.0 / np.where(ok, sigma, 1.0), 0.0)
        asub = a[:, k + 1:, k + 1:]
        p = tau[:, None] * np.einsum("bij,bj->bi", asub, v)
        kk = 0.5 * tau * np.real(np.sum(np.conj(v) * p, axis=1))
        q = p - kk[:, None] * v
        asub -= q[:, :, None] * np.conj(v)[:, None, :]
        asub -= v[:, :, None] * np.conj(q)[:, None, :]
        ec[:, k] = np.where(ok, alpha, x0)
    ec[:, n - 2] = a[:, n - 1, n - 2]
    d = np.real(np.einsum("bii->bi", a))
    return d, np.abs(ec)


def tql_batch(d, e, max_iter=50):
    """Eigenvalues of a batch of real symmetric tridiagonal matrices.

    d: (B, n) diagonals, e: (B, n-1) off-diagonals.  Returns sorted
    eigenvalues, shape (B, n).
    """
    d = np.array(d, dtype=float)
    b, n = d.shape
    if n == 1:
        return d.copy()
    ee = np.zeros((b, n))
    ee[:, :n - 1] = e
    f = np.zeros(b)
    tst1 = np.zeros(b)
    for l in range(n):
        tst1 = np.maximum(tst1, np.abs(d[:, l]) + np.abs(ee[:, l]))
        thresh = _EPS * tst1
        for _ in range(max_iter):
            small = np.abs(ee[:, l:]) <= thresh[:, None]
            m = l + np.argmax(small, axis=1)
            act = m > l
            if not act.any():
                break
            el = ee[:, l].copy()
            safe_el = np.where(act, el, 1.0)
            p = np.where(act, (d[:, l + 1] - d[:, l]) / (2.0 * safe_el), 0.0)
            r = np.hypot(p, 1.0)
            sgnr = np.where(p >= 0, r, -r)
            dl_new = el / (p + sgnr)
            dl1 = el * (p + sgnr)
            h = np.where(act, d[:, l] - dl_new, 0.0)
            d[:, l] = np.where(act, dl_new, d[:, l])
            d[:, l + 1] = np.where(act, dl1, d[:, l + 1])
            if l + 2 < n:
                d[:, l + 2:] -= h[:, None]
            f += h
            p = np.take_along_axis(d, m[:, None], axis=1)[:, 0]
            c = np.ones(b)
            c2 = np.ones(b)
            c3 = np.ones(b)
            s = np.zeros(b)
            s2 = np.zeros(b)
            # copy: the sweep overwrites this column before it is used
            el1 = ee[:, l + 1].copy() if l + 1 < n else np.zeros(b)
            for i in range(int(np.max(m)) - 1, l - 1, -1):
                upd = act & (i <= m - 1)
                c3 = np.where(upd, c2, c3)
                c2 = np.where(upd, c, c2)
                s2 = np.where(upd, s, s2)
                g = c * ee[:, i]
                hh = c * p
                r = np.hypot(p, ee[:, i])
                safe_r = np.where(upd, r, 1.0)
                ee[:, i + 1] = np.where(upd, s * r, ee[:, i + 1])
                s = np.where(upd, ee[:, i] / safe_r, s)
                c = np.where(upd, p / safe_r, c)
                p_new = c * d[:, i] - s * g
                d[:, i + 1] = np.where(upd, hh + s * (c * g + s * d[:, i]), d[:, i + 1])
                p = np.where(upd, p_new, p)
            safe_dl1 = np.where(act, dl1, 1.0)
            p = np.where(act, -s * s2 * c3 * el1 * ee[:, l] / safe_dl1, 0.0)
            ee[:, l] = np.where(act, s * p, ee[:, l])
            d[:, l] = np.where(act, c * p, d[:, l])
        else:
            raise AccuracyError("tridiagonal QL iteration failed to converge",
                                details={"column": l, "active": int(act.sum())})
        d[:, l] += f
    return np.sort(d, axis=1)


def tql_vectors(d, e, z=None, max_iter=50):
    """Eigendecomposition of one real symmetric tridiagonal matrix.

    Returns (values ascending, vectors) with T = V diag(values) V^T; if z
    is given (an n x n array, possibly complex) the rotations accumulate
    onto it, so passing the tridiagonalizing unitary yields eigenvectors
    of the original matrix.
    """
    d = np.array(d, dtype=float)
    n = d.size
    z = np.eye(n) if z is None else np.array(z)
    if n == 1:
        return d, z
    ee = np.zeros(n)
    ee[:n - 1] = e
    f = 0.0
    tst1 = 0.0
    for l in range(n):
        tst1 = max(tst1, abs(d[l]) + abs(ee[l]))
        thresh = _EPS * tst1
        for it in range(max_iter + 1):
            m = l
            while m < n - 1 and abs(ee[m]) > thresh:
                m += 1
            if m == l:
                break
            if it == max_iter:
                raise AccuracyError("tridiagonal QL iteration failed to converge",
                                    details={"column": l})
            g = d[l]
            p = (d[l + 1] - g) / (2.0 * ee[l])
            r = np.hypot(p, 1.0)
            sgnr = r if p >= 0 else -r
            d[l] = ee[l] / (p + sgnr)
            d[l + 1] = ee[l] * (p + sgnr)
            dl1 = d[l + 1]
            h = g - d[l]
            d[l + 2:] -= h
            f += h
            p = d[m]
            c = c2 = c3 = 1.0
            s = s2 = 0.0
            el1 = ee[l + 1]
            for i in range(m - 1, l - 1, -1):
                c3 = c2
                c2 = c
                s2 = s
                g = c * ee[i]
                hh = c * p
                r = np.hypot(p, ee[i])
                ee[i + 1] = s * r
                s = ee[i] / r
                c = p / r
                p = c * d[i] - s * g
                d[i + 1] = hh + s * (c * g + s * d[i])
                zi1 = z[:, i + 1].copy()
                z[:, i + 1] = s * z[:, i] + c * zi1
                z[:, i] = c * z[:, i] - s * zi1
            p = -s * s2 * c3 * el1 * ee[l] / dl1
            ee[l] = s * p
            d[l] = c * p
        d[l] += f
    order = np.argsort(d, kind="stable")
    return d[order], z[:, order]


def eigvalsh_batch(a):
    """Sorted eigenvalues of a batch of Hermitian (or real symmetric) matrices."""
    d, e = householder_tridiag_batch(a)
    return tql_batch(d, e)


def eigh_single(a):
    """Eigenvalues and eigenvectors of one Hermitian matrix: a = V diag(w) V*."""
    a = np.asarray(a)
    n = a.shape[0]
    if n == 1:
        return np.array([a[0, 0].real]), np.ones((1, 1), dtype=a.dtype)
    work = np.array(a, dtype=complex if np.iscomplexobj(a) else float)
    q = np.eye(n, dtype=work.dtype)
    subdiag = np.zeros(n - 1, dtype=work.dtype)
    for k in range(n - 2):
        x = work[k + 1:, k]
        normx = np.sqrt(np.sum(np.abs(x) ** 2))
        x0 = x[0]
        phase = x0 / abs(x0) if abs(x0) > 0 else 1.0
        alpha = -phase * normx
        v = x.copy()
        v[0] = x0 - alpha
        sigma = np.sum(np.abs(v) ** 2)
        if sigma <= 1e-300:
            subdiag[k] = x0
            continue
        tau = 2.0 / sigma
        asub = work[k + 1:, k + 1:]
        p = tau * (asub @ v)
        kk = 0.5 * tau * np.real(np.conj(v) @ p)
        qv = p - kk * v
        asub -= np.outer(qv, np.conj(v)) + np.outer(v, np.conj(qv))
        subdiag[k] = alpha
        qcols = q[:, k + 1:]
        qcols -= np.outer(tau * (qcols @ v), np.conj(v))
    subdiag[n - 2] = work[n - 1, n - 2]
    d = np.real(np.diag(work))
    e = np.abs(subdiag)
    # absorb subdiagonal phases so the tridiagonal matrix is real
    scale = np.ones(n, dtype=complex)
    for i in range(n - 1):
        mag = abs(subdiag[i])
        scale[i + 1] = scale[i] * (mag / subdiag[i]) if mag > 0 else scale[i]
    q = q.astype(complex) * np.conj(scale)[None, :]
    vals, vecs = tql_vectors(d, e, z=q)
    if not np.iscomplexobj(a):
        vecs = vecs.real
    return vals, vecs
