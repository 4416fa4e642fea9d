"""Pure-Python kernels. Same contract as the compiled ``_ext`` module."""
from functools import lru_cache
import math

import numpy as np


@lru_cache(maxsize=64)
def _swap_indices(dim, swap_mask):
    idx = np.arange(dim)
    rows = idx[:, None]
    cols = idx[None, :]
    keep = ~swap_mask
    src_rows = (rows & keep) | (cols & swap_mask)
    src_cols = (cols & keep) | (rows & swap_mask)
    return src_rows, src_cols, rows ^ cols


def selective_transpose(rho, swap_mask, selected):
    """Exchange the ``swap_mask`` bits of row and column labels of every
    element whose flip pattern ``I ^ J`` is marked in ``selected``."""
    rho = np.asarray(rho, dtype=complex)
    src_rows, src_cols, flips = _swap_indices(rho.shape[0], int(swap_mask))
    chosen = np.asarray(selected, dtype=bool)[flips]
    return np.where(chosen, rho[src_rows, src_cols], rho)


def jacobi_eigh(a, tol, max_sweeps):
    """Cyclic Jacobi diagonalisation of a Hermitian matrix.

    Returns ``(eigenvalues, eigenvectors, sweeps)`` with eigenvalues in
    ascending order; ``sweeps`` is -1 if the off-diagonal norm did not fall
    below ``tol * ||a||_F`` within ``max_sweeps`` sweeps.
    """
    a = np.array(a, dtype=complex, copy=True)
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    fro = math.sqrt(float(np.sum(np.abs(a) ** 2)))
    target = tol * fro
    tiny = 1e-300 + 1e-18 * fro
    offdiag = ~np.eye(n, dtype=bool)
    sweeps = -1
    for sweep in range(max_sweeps + 1):
        off = math.sqrt(float(np.sum(np.abs(a[offdiag]) ** 2)))
        if off <= target:
            sweeps = sweep
            break
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                g = abs(apq)
                if g <= tiny:
                    continue
                ph = apq / g
                theta = (a[q, q].real - a[p, p].real) / (2.0 * g)
                t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                cph = ph.conjugate()
                col_p = a[:, p].copy()
                col_q = a[:, q]
                a[:, p] = c * col_p - s * cph * col_q
                a[:, q] = s * col_p + c * cph * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :]
                a[p, :] = c * row_p - s * ph * row_q
                a[q, :] = s * row_p + c * ph * row_q
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                vp = v[:, p].copy()
                vq = v[:, q]
                v[:, p] = c * vp - s * cph * vq
                v[:, q] = s * vp + c * cph * vq
    w = np.diag(a).real.copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order], sweeps
