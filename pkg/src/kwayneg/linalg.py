"""Dense linear algebra on small qubit registers.

Basis label ``I`` of an ``n``-qubit register stores qubit 0 (party A) in the
most significant bit, so ``|i1 i2 i3 i4>`` reads left to right as the binary
digits of ``I``.
"""
from typing import NamedTuple

import numpy as np

from . import _backend
from ._config import resolve
from .errors import ContractError, InputError, NormalizationError, NumericalError

LETTERS = "ABCDEFGH"
MAX_QUBITS = 8
MAX_SWEEPS = 100


def n_qubits_of(dim):
    n = int(dim).bit_length() - 1
    if n < 1 or 1 << n != dim or n > MAX_QUBITS:
        raise InputError(f"dimension {dim} is not 2**n with 1 <= n <= {MAX_QUBITS}")
    return n


def qubit_index(q, n):
    """Accept ``'A'``..``'H'`` (case-insensitive) or a 0-based integer."""
    if isinstance(q, str):
        label = q.strip().upper()
        if len(label) != 1 or label not in LETTERS[:n]:
            raise InputError(f"unknown qubit label {q!r} for a {n}-qubit register")
        return LETTERS.index(label)
    if isinstance(q, (int, np.integer)) and not isinstance(q, bool) and 0 <= q < n:
        return int(q)
    raise InputError(f"qubit {q!r} out of range for a {n}-qubit register")


def qubit_label(q):
    return LETTERS[q]


def bit_mask(qubits, n):
    """Bitmask of basis-label bits belonging to ``qubits``."""
    mask = 0
    for q in qubits:
        mask |= 1 << (n - 1 - qubit_index(q, n))
    return mask


def pure_state(amplitudes, normalize=False, tol=None):
    """Validate an amplitude vector and return it as a complex array.

    Raises NormalizationError if the norm deviates from one by more than
    ``norm_tol`` and ``normalize`` is false.
    """
    tol = resolve(tol)
    psi = np.asarray(amplitudes, dtype=complex).reshape(-1)
    n_qubits_of(psi.size)
    if not np.all(np.isfinite(psi)):
        raise InputError("amplitudes must be finite")
    norm = np.linalg.norm(psi)
    if normalize:
        if norm == 0:
            raise NormalizationError("cannot normalize the zero vector")
        return psi / norm
    if abs(norm**2 - 1.0) > tol.norm_tol:
        raise NormalizationError(f"state norm^2 = {float(norm) ** 2!r} deviates from 1 by more than {tol.norm_tol}")
    return psi


def density_from_state(psi, tol=None):
    psi = pure_state(psi, tol=tol)
    return np.outer(psi, psi.conj())


def hermiticity_residual(m):
    m = np.asarray(m)
    return float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0


def check_hermitian(m, tol=None):
    tol = resolve(tol)
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ContractError(f"expected a square matrix, got shape {m.shape}")
    res = hermiticity_residual(m)
    if res > tol.herm_tol:
        raise ContractError(f"matrix is not Hermitian (residual {res:.3e} > {tol.herm_tol})")
    return m


class EigenDecomposition(NamedTuple):
    eigenvalues: np.ndarray  # ascending
    eigenvectors: np.ndarray  # orthonormal columns
    sweeps: int


def hermitian_eigen(m, tol=None, kernels=None):
    """Full spectrum of a Hermitian matrix by cyclic Jacobi rotations.

    Parameters
    ----------
    m : (d, d) array_like
        Hermitian within ``herm_tol``.
    tol : Tolerances, optional
    kernels : module, optional
        Kernel backend; defaults to the compiled one when available.

    Returns
    -------
    EigenDecomposition
        Eigenvalues ascending, eigenvectors as orthonormal columns.
    """
    tol = resolve(tol)
    m = check_hermitian(m, tol)
    kernels = kernels or _backend.kernels
    # symmetrise so rounding-level asymmetry cannot leak into the rotations
    m = 0.5 * (m + m.conj().T)
    w, v, sweeps = kernels.jacobi_eigh(m, tol.eig_tol, MAX_SWEEPS)
    if sweeps < 0:
        raise NumericalError(f"Jacobi eigensolver did not converge in {MAX_SWEEPS} sweeps")
    return EigenDecomposition(np.asarray(w), np.asarray(v), int(sweeps))


def trace_norm(m, tol=None):
    return float(np.sum(np.abs(hermitian_eigen(m, tol).eigenvalues)))


def partial_trace(m, keep):
    """Reduce an operator to the qubits in ``keep`` (kept in ascending order)."""
    m = np.asarray(m, dtype=complex)
    n = n_qubits_of(m.shape[0])
    keep = sorted({qubit_index(q, n) for q in keep})
    if not keep:
        raise InputError("partial_trace needs at least one qubit to keep")
    traced = [q for q in range(n) if q not in keep]
    t = m.reshape([2] * (2 * n))
    # trace pairs from the highest index down so earlier axis numbers stay valid
    for q in sorted(traced, reverse=True):
        cur = t.ndim // 2
        t = np.trace(t, axis1=q, axis2=q + cur)
    d = 1 << len(keep)
    return t.reshape(d, d)


def reduced_single(psi, p):
    """Single-qubit reduced density matrix of a pure state."""
    psi = np.asarray(psi, dtype=complex)
    n = n_qubits_of(psi.size)
    p = qubit_index(p, n)
    t = np.moveaxis(psi.reshape([2] * n), p, 0).reshape(2, -1)
    return t @ t.conj().T


def schmidt_pair(psi, p, tol=None):
    """Schmidt weights ``(mu0, mu1)`` of qubit ``p``, ``mu0 >= mu1``."""
    psi = pure_state(psi, tol=tol)
    w = hermitian_eigen(reduced_single(psi, p), tol).eigenvalues
    mu1, mu0 = (max(float(x), 0.0) for x in w)
    total = mu0 + mu1
    return mu0 / total, mu1 / total
