"""Single-qubit projective measurements and the negativities of the
resulting pure-state decompositions."""
from typing import NamedTuple

import numpy as np

from ._config import resolve
from .errors import InputError
from .linalg import density_from_state, n_qubits_of, partial_trace, pure_state, qubit_index
from .negativity import build_report, global_negativity, group_label


class MeasurementOutcome(NamedTuple):
    outcome: int
    probability: float
    collapsed: np.ndarray  # empty when the outcome has zero probability


def measure_qubit(psi, p, tol=None):
    """Computational-basis measurement of qubit ``p``.

    Returns both outcomes with their probabilities and the normalized state
    of the remaining qubits (in their original order).
    """
    tol = resolve(tol)
    psi = pure_state(psi, tol=tol)
    n = n_qubits_of(psi.size)
    p = qubit_index(p, n)
    if n < 2:
        raise InputError("measuring leaves nothing when the register has one qubit")
    t = psi.reshape([2] * n)
    outcomes = []
    for k in (0, 1):
        branch = np.take(t, k, axis=p).reshape(-1)
        prob = float(np.vdot(branch, branch).real)
        if prob > tol.neg_threshold:
            collapsed = branch / np.sqrt(prob)
        else:
            collapsed = np.zeros(0, dtype=complex)
        outcomes.append(MeasurementOutcome(k, prob, collapsed))
    return outcomes


def _reduced_index(q, removed):
    return q - 1 if q > removed else q


def psd_negativity_sq(psi, measured, reference, tol=None):
    """Sum over outcomes of ``(P_k * N_G(collapsed_k))**2`` w.r.t. ``reference``."""
    tol = resolve(tol)
    psi = pure_state(psi, tol=tol)
    n = n_qubits_of(psi.size)
    measured, reference = qubit_index(measured, n), qubit_index(reference, n)
    if measured == reference:
        raise InputError("measured and reference qubits must differ")
    ref = _reduced_index(reference, measured)
    total = 0.0
    for out in measure_qubit(psi, measured, tol):
        if out.collapsed.size == 0:
            continue
        ng = global_negativity(density_from_state(out.collapsed, tol), [ref], tol)
        total += (out.probability * ng) ** 2
    return total


class BoundCheck(NamedTuple):
    lhs: float
    rhs: float
    holds: bool


def reduced_negativity_bound_check(psi, traced, reference, tol=None):
    """Compare the squared negativity of ``Tr_traced(rho)`` w.r.t. ``reference``
    with the sum of the reference's surviving pairwise products ``NG*E2``."""
    tol = resolve(tol)
    psi = pure_state(psi, tol=tol)
    n = n_qubits_of(psi.size)
    traced, reference = qubit_index(traced, n), qubit_index(reference, n)
    if traced == reference:
        raise InputError("traced and reference qubits must differ")
    keep = [q for q in range(n) if q != traced]
    reduced = partial_trace(density_from_state(psi, tol), keep)
    lhs = global_negativity(reduced, [keep.index(reference)], tol) ** 2
    report = build_report(psi, reference, tol)
    partners = [q for q in keep if q != reference]
    rhs = sum(report.products[f"NG*E2[{group_label(reference, [q])}]"] for q in partners)
    return BoundCheck(lhs, rhs, lhs <= rhs + tol.report_tol)
