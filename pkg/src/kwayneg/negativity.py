"""Global, K-way and partial K-way negativities.

Partial negativities are evaluated as traces against the projector onto the
negative eigenspace of the global partial transpose. That is the same number
as summing over negative eigenvectors, but it does not depend on how a
degenerate eigenspace happens to be spanned.
"""
from dataclasses import asdict, dataclass, field
from itertools import combinations
import re
from typing import NamedTuple

import numpy as np

from ._config import resolve
from .errors import InputError
from .linalg import (
    check_hermitian,
    density_from_state,
    hermitian_eigen,
    n_qubits_of,
    qubit_index,
    qubit_label,
)
from .transpose import global_pt, kway_pt, pair_pt, triple_pt

REPORT_QUBITS = 4


def _clamp(x, tol):
    x = float(x)
    return 0.0 if abs(x) <= tol.neg_threshold else x


class NegativeProjector(NamedTuple):
    rank: int
    projector: np.ndarray
    eigenvalues: np.ndarray  # the negative ones, ascending


def negative_projector(m, tol=None):
    """Projector onto eigenvectors of ``m`` with eigenvalue below ``-neg_threshold``."""
    tol = resolve(tol)
    eig = hermitian_eigen(m, tol)
    neg = eig.eigenvalues < -tol.neg_threshold
    vecs = eig.eigenvectors[:, neg]
    return NegativeProjector(int(neg.sum()), vecs @ vecs.conj().T, eig.eigenvalues[neg])


def _subsystem_factor(n_transposed):
    return 1.0 / ((1 << n_transposed) - 1)


def global_negativity(rho, subset, tol=None):
    """``(||rho^T_S||_1 - 1) / (d_S - 1)`` for any density matrix."""
    tol = resolve(tol)
    rho = check_hermitian(rho, tol)
    n = n_qubits_of(rho.shape[0])
    subset = {qubit_index(q, n) for q in subset}
    pt = global_pt(rho, subset)
    w = hermitian_eigen(pt, tol).eigenvalues
    value = _subsystem_factor(len(subset)) * (float(np.sum(np.abs(w))) - float(np.trace(rho).real))
    return max(_clamp(value, tol), 0.0)


def kway_negativity(rho, p, k, tol=None):
    tol = resolve(tol)
    w = hermitian_eigen(kway_pt(rho, p, k), tol).eigenvalues
    neg = w[w < -tol.neg_threshold]
    return _clamp(2.0 * _subsystem_factor(1) * float(-neg.sum()), tol)


def _projected(projector, m, tol):
    if projector.rank == 0:
        return 0.0
    return -2.0 * _subsystem_factor(1) * float(np.trace(projector.projector @ m).real)


def _projector_for(rho, p, projector, tol):
    if projector is None:
        projector = negative_projector(global_pt(rho, [p]), tol)
    return projector


def partial_kway_negativity(rho, p, k, tol=None, projector=None):
    """Contribution ``E_K`` of the K-way transpose to the global negativity of ``p``."""
    tol = resolve(tol)
    projector = _projector_for(rho, p, projector, tol)
    return _projected(projector, kway_pt(rho, p, k), tol)


def e_zero(rho, p, tol=None, projector=None):
    """Contribution of the untransposed state; never positive for a density matrix."""
    tol = resolve(tol)
    projector = _projector_for(rho, p, projector, tol)
    return _projected(projector, np.asarray(rho, dtype=complex), tol)


def partial_pair_negativity(rho, p, q, tol=None, projector=None):
    tol = resolve(tol)
    projector = _projector_for(rho, p, projector, tol)
    return _projected(projector, pair_pt(rho, p, q), tol)


def partial_triple_negativity(rho, p, others, tol=None, projector=None):
    tol = resolve(tol)
    projector = _projector_for(rho, p, projector, tol)
    return _projected(projector, triple_pt(rho, p, others), tol)


def partial_kway_negativity_spectral(rho, p, k, tol=None):
    """``E_K`` from the eigen-expansion of the K-way transpose: every
    eigenvalue weighted by its overlap with the global negative eigenspace."""
    tol = resolve(tol)
    projector = negative_projector(global_pt(rho, [p]), tol)
    if projector.rank == 0:
        return 0.0
    eig = hermitian_eigen(kway_pt(rho, p, k), tol)
    vecs = eig.eigenvectors
    overlaps = np.einsum("im,ij,jm->m", vecs.conj(), projector.projector, vecs).real
    return -2.0 * _subsystem_factor(1) * float(np.dot(eig.eigenvalues, overlaps))


def group_label(p, partners):
    """``"A-AB"`` style label: reference, then the sorted group."""
    return qubit_label(p) + "-" + "".join(sorted(qubit_label(q) for q in (p, *partners)))


@dataclass
class NegativityReport:
    """All negativities of one pure four-qubit state for one reference qubit."""

    reference_qubit: str
    N_G: float
    N_K: dict
    E_K: dict
    E_0: float
    E_pair: dict
    E_triple: dict
    products: dict
    residuals: dict
    negative_rank: int = 0
    extra: dict = field(default_factory=dict)

    def flat(self):
        """Ordered quantity name -> value mapping (CSV columns, sweep quantities)."""
        out = {"NG": self.N_G, "NG2": self.products["NG2"], "E0": self.E_0}
        for k in sorted(self.N_K):
            out[f"N{k}"] = self.N_K[k]
        for k in sorted(self.E_K):
            out[f"E{k}"] = self.E_K[k]
        for name, value in self.E_pair.items():
            out[f"E2[{name}]"] = value
        for name, value in self.E_triple.items():
            out[f"E3[{name}]"] = value
        out.update(self.products)
        return out

    def to_dict(self):
        d = asdict(self)
        d["N_K"] = {str(k): v for k, v in self.N_K.items()}
        d["E_K"] = {str(k): v for k, v in self.E_K.items()}
        return d

    @classmethod
    def from_dict(cls, d):
        d = dict(d)
        d["N_K"] = {int(k): v for k, v in d["N_K"].items()}
        d["E_K"] = {int(k): v for k, v in d["E_K"].items()}
        return cls(**d)


def _max_abs(m):
    return float(np.max(np.abs(m)))


class _Evaluator:
    """Lazily computed pieces of a report; each matrix and trace is built once."""

    def __init__(self, psi, p, tol):
        self.tol = tol
        self.rho = density_from_state(psi, tol)
        n = n_qubits_of(self.rho.shape[0])
        if n != REPORT_QUBITS:
            raise InputError(f"reports need a {REPORT_QUBITS}-qubit state, got {n} qubits")
        self.n = n
        self.p = qubit_index(p, n)
        self.others = [q for q in range(n) if q != self.p]
        self._cache = {}

    def _get(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    @property
    def gpt(self):
        return self._get("gpt", lambda: global_pt(self.rho, [self.p]))

    @property
    def projector(self):
        return self._get("proj", lambda: negative_projector(self.gpt, self.tol))

    @property
    def n_g(self):
        def compute():
            s = -2.0 * _subsystem_factor(1) * float(self.projector.eigenvalues.sum())
            return max(_clamp(s, self.tol), 0.0)

        return self._get("ng", compute)

    def kpt(self, k):
        return self._get(("kpt", k), lambda: kway_pt(self.rho, self.p, k))

    def pair(self, q):
        return self._get(("pair", q), lambda: pair_pt(self.rho, self.p, q))

    def triple(self, qr):
        return self._get(("triple", qr), lambda: triple_pt(self.rho, self.p, qr))

    # raw (unclamped) partial negativities
    def e0_raw(self):
        return self._get("e0", lambda: _projected(self.projector, self.rho, self.tol))

    def ek_raw(self, k):
        return self._get(("ek", k), lambda: _projected(self.projector, self.kpt(k), self.tol))

    def epair_raw(self, q):
        return self._get(("ep", q), lambda: _projected(self.projector, self.pair(q), self.tol))

    def etriple_raw(self, qr):
        return self._get(("et", qr), lambda: _projected(self.projector, self.triple(qr), self.tol))

    def nk(self, k):
        return self._get(("nk", k), lambda: kway_negativity(self.rho, self.p, k, self.tol))

    def label(self, partners):
        return group_label(self.p, partners)

    def pair_for(self, label):
        for q in self.others:
            if self.label([q]) == label:
                return q
        raise KeyError(label)

    def triple_for(self, label):
        for qr in combinations(self.others, 2):
            if self.label(qr) == label:
                return qr
        raise KeyError(label)

    def quantity(self, name):
        """One entry of :meth:`NegativityReport.flat`, computing only what it needs."""
        c = lambda x: _clamp(x, self.tol)  # noqa: E731
        ks = range(2, self.n + 1)
        if name == "NG":
            return self.n_g
        if name == "NG2":
            return c(self.n_g * self.n_g)
        if name == "E0":
            return c(self.e0_raw())
        m = re.fullmatch(r"([NE])(\d)", name)
        if m and int(m.group(2)) in ks:
            k = int(m.group(2))
            return self.nk(k) if m.group(1) == "N" else c(self.ek_raw(k))
        m = re.fullmatch(r"E([23])\[(\w-\w+)\]", name)
        if m:
            try:
                if m.group(1) == "2":
                    return c(self.epair_raw(self.pair_for(m.group(2))))
                return c(self.etriple_raw(self.triple_for(m.group(2))))
            except KeyError:
                pass
        m = re.fullmatch(r"NG\*\(E(\d)-E0\)", name)
        if m and int(m.group(1)) in ks:
            return c(self.n_g * (c(self.ek_raw(int(m.group(1)))) - c(self.e0_raw())))
        if name.startswith("NG*") and name[3:] not in ("NG", "NG2") and not name[3:].startswith("N"):
            return c(self.n_g * self.quantity(name[3:]))
        raise InputError(f"unknown quantity {name!r}")


def evaluate_quantities(psi, p, names, tol=None):
    """Selected report quantities (same names and values as ``flat()``)."""
    ev = _Evaluator(psi, p, resolve(tol))
    return [ev.quantity(name) for name in names]


def build_report(psi, p, tol=None):
    """Compute every negativity, product and identity residual for qubit ``p``.

    Parameters
    ----------
    psi : array_like, shape (16,)
        Normalized four-qubit state.
    p : str or int
        Reference qubit.
    """
    tol = resolve(tol)
    ev = _Evaluator(psi, p, tol)
    rho, p, others, n = ev.rho, ev.p, ev.others, ev.n
    ks = range(2, n + 1)
    n_g = ev.n_g
    e0 = ev.e0_raw()
    e_k = {k: ev.ek_raw(k) for k in ks}
    n_k = {k: ev.nk(k) for k in ks}
    e_pair = {ev.label([q]): ev.epair_raw(q) for q in others}
    e_triple = {ev.label(qr): ev.etriple_raw(qr) for qr in combinations(others, 2)}

    residuals = {
        "eq3n": _max_abs(ev.gpt - (sum(ev.kpt(k) for k in ks) - 2 * rho)),
        "eq5n": abs(n_g - (sum(e - e0 for e in e_k.values()) + e0)),
        "ro2tsum": _max_abs(ev.kpt(2) - (sum(ev.pair(q) for q in others) - 2 * rho)),
        "ro3tsum": _max_abs(ev.kpt(3) - (sum(ev.triple(qr) for qr in combinations(others, 2)) - 2 * rho)),
        "pair_split": abs((e_k[2] - e0) - sum(e - e0 for e in e_pair.values())),
        "triple_split": abs((e_k[3] - e0) - sum(e - e0 for e in e_triple.values())),
        "monogamy": abs(n_g * n_g - n_g * e_k[4] - n_g * e_k[2]),
    }

    clamp = lambda x: _clamp(x, tol)  # noqa: E731
    e0 = clamp(e0)
    e_k = {k: clamp(v) for k, v in e_k.items()}
    e_pair = {k: clamp(v) for k, v in e_pair.items()}
    e_triple = {k: clamp(v) for k, v in e_triple.items()}

    products = {"NG2": clamp(n_g * n_g), "NG*E0": clamp(n_g * e0)}
    for k, e in e_k.items():
        products[f"NG*E{k}"] = clamp(n_g * e)
        products[f"NG*(E{k}-E0)"] = clamp(n_g * (e - e0))
    for name, e in e_pair.items():
        products[f"NG*E2[{name}]"] = clamp(n_g * e)
    for name, e in e_triple.items():
        products[f"NG*E3[{name}]"] = clamp(n_g * e)

    return NegativityReport(
        reference_qubit=qubit_label(p),
        N_G=n_g,
        N_K=n_k,
        E_K=e_k,
        E_0=e0,
        E_pair=e_pair,
        E_triple=e_triple,
        products=products,
        residuals={k: float(v) for k, v in residuals.items()},
        negative_rank=ev.projector.rank,
    )


class MonogamyCheck(NamedTuple):
    lhs4: float
    lhs2: float
    rhs: float
    holds: bool


def monogamy_check(report, tol=None):
    """``N_G E_4 <= N_G^2`` and ``N_G E_2 <= N_G^2``."""
    tol = resolve(tol)
    lhs4 = report.products["NG*E4"]
    lhs2 = report.products["NG*E2"]
    rhs = report.products["NG2"]
    return MonogamyCheck(lhs4, lhs2, rhs, lhs4 <= rhs + tol.report_tol and lhs2 <= rhs + tol.report_tol)
