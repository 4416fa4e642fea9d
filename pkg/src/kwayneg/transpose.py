"""Selective partial transposition.

Every transpose here has the same shape: for each matrix element ``(I, J)``
look at the flip pattern ``I ^ J`` (which qubits differ between bra and
ket); if the pattern is selected, exchange the transposed qubits' bits
between ``I`` and ``J``. Only the selection rule differs between modes.
"""
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from . import _backend
from .errors import InputError
from .linalg import bit_mask, n_qubits_of, qubit_index


class FlipClass(NamedTuple):
    count: int
    p_flipped: bool


def flip_class(i, j, p, n=4):
    """Number of qubits whose labels differ between ``i`` and ``j``, and
    whether qubit ``p`` is one of them."""
    p = qubit_index(p, n)
    x = int(i) ^ int(j)
    return FlipClass(bin(x).count("1"), bool(x & bit_mask([p], n)))


def _popcounts(dim):
    return np.array([bin(x).count("1") for x in range(dim)])


@lru_cache(maxsize=None)
def _select_all(n):
    return np.ones(1 << n, dtype=np.uint8)


@lru_cache(maxsize=None)
def _select_kway(n, p, k):
    x = np.arange(1 << n)
    counts = _popcounts(1 << n)
    p_flipped = (x & bit_mask([p], n)) != 0
    wanted = np.isin(counts, (1, 2)) if k == 2 else counts == k
    return (p_flipped & wanted).astype(np.uint8)


@lru_cache(maxsize=None)
def _select_confined(n, qubits, exact):
    # exact: pattern must equal the mask; otherwise any nonzero sub-pattern
    x = np.arange(1 << n)
    mask = bit_mask(qubits, n)
    if exact:
        return (x == mask).astype(np.uint8)
    return ((x != 0) & ((x & ~mask) == 0)).astype(np.uint8)


def _apply(rho, swap_mask, selected):
    return _backend.kernels.selective_transpose(np.asarray(rho, dtype=complex), swap_mask, selected)


def _dims(rho):
    rho = np.asarray(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise InputError(f"expected a square matrix, got shape {rho.shape}")
    return n_qubits_of(rho.shape[0])


def global_pt(rho, subset):
    """Partial transpose of every matrix element over the qubits in ``subset``."""
    n = _dims(rho)
    listed = [qubit_index(q, n) for q in subset]
    qubits = sorted(set(listed))
    if len(qubits) != len(listed):
        raise InputError("global_pt subset lists a qubit twice")
    if not qubits or len(qubits) == n:
        raise InputError("global_pt needs a nonempty proper subset of qubits")
    return _apply(rho, bit_mask(qubits, n), _select_all(n))


def kway_pt(rho, p, k):
    """K-way partial transpose with respect to qubit ``p``.

    For ``k > 2`` only elements with exactly ``k`` flipped qubits (``p`` among
    them) are transposed; ``k == 2`` also takes the single-flip elements.
    """
    n = _dims(rho)
    p = qubit_index(p, n)
    if not (isinstance(k, (int, np.integer)) and 2 <= k <= n):
        raise InputError(f"K must be an integer in [2, {n}], got {k!r}")
    return _apply(rho, bit_mask([p], n), _select_kway(n, p, int(k)))


def pair_pt(rho, p, q):
    """Transpose ``p`` on elements whose flips are confined to ``{p, q}``."""
    n = _dims(rho)
    p, q = qubit_index(p, n), qubit_index(q, n)
    if p == q:
        raise InputError("pair_pt needs two distinct qubits")
    return _apply(rho, bit_mask([p], n), _select_confined(n, tuple(sorted((p, q))), False))


def triple_pt(rho, p, others):
    """Transpose ``p`` on elements where exactly ``p`` and both ``others`` flip."""
    n = _dims(rho)
    p = qubit_index(p, n)
    others = tuple(qubit_index(q, n) for q in others)
    if len(others) != 2 or len({p, *others}) != 3:
        raise InputError("triple_pt needs three distinct qubits")
    return _apply(rho, bit_mask([p], n), _select_confined(n, tuple(sorted((p, *others))), True))


@dataclass(frozen=True)
class TransposeSpec:
    """Which selective transpose to apply.

    ``mode`` is one of ``"global"`` (``qubits`` = subset), ``"kway"``
    (``qubits`` = (p,), ``k``), ``"pair"`` (``qubits`` = (p, q)) or
    ``"triple"`` (``qubits`` = (p, q, r)).
    """

    mode: str
    qubits: tuple
    k: int = 0

    def apply(self, rho):
        arity = {"kway": 1, "pair": 2, "triple": 3}
        if self.mode in arity and len(self.qubits) != arity[self.mode]:
            raise InputError(f"{self.mode} transpose takes {arity[self.mode]} qubits, got {len(self.qubits)}")
        if self.mode == "global":
            return global_pt(rho, self.qubits)
        if self.mode == "kway":
            (p,) = self.qubits
            return kway_pt(rho, p, self.k)
        if self.mode == "pair":
            p, q = self.qubits
            return pair_pt(rho, p, q)
        if self.mode == "triple":
            p, q, r = self.qubits
            return triple_pt(rho, p, (q, r))
        raise InputError(f"unknown transpose mode {self.mode!r}")
