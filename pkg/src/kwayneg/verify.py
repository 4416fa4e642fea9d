"""Seeded verification suites behind ``kwayneg verify``.

Every suite is deterministic for a given seed and returns a
:class:`SuiteResult`; ``run("all")`` executes them in registry order.
"""
from dataclasses import dataclass, field
import math

import numpy as np

from . import _backend
from ._config import resolve
from .families import (
    CLASS_I,
    FAMILY_NAMES,
    REPRESENTATIVES,
    build_family,
    build_general_class1,
    class1_coefficients,
    fixed_state_expected,
    make_params,
    oracle_class1,
    oracle_la4,
    oracle_pairwise,
    oracle_schmidt,
)
from .linalg import density_from_state, hermitian_eigen, schmidt_pair
from .negativity import (
    build_report,
    evaluate_quantities,
    global_negativity,
    group_label,
    monogamy_check,
    partial_kway_negativity,
    partial_kway_negativity_spectral,
)
from .reduction import measure_qubit, psd_negativity_sq
from .sampling import (
    haar_unitary,
    random_class1_coefficients,
    random_family_params,
    random_local_unitary,
    random_state,
)
from .transpose import global_pt, kway_pt

QUBITS = "ABCD"
N_RANDOM = 100
N_DRAWS = 50
IDENTITY_TOL = 1e-8
ORACLE_TOL = 1e-8
VANISH_TOL = 1e-9
PROJECTOR_TOL = 1e-10


@dataclass
class SuiteResult:
    name: str
    passed: bool
    checks: int
    worst: float
    detail: str = ""
    notes: dict = field(default_factory=dict)

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name:<20} checks={self.checks:<6} worst={self.worst:.3e}  {self.detail}"


class _Tally:
    """Accumulates ``|got - want|`` against a tolerance."""

    def __init__(self, tol):
        self.tol = tol
        self.checks = 0
        self.worst = 0.0
        self.first_failure = ""

    def add(self, err, where=""):
        err = float(err)
        self.checks += 1
        if not err <= self.worst:
            self.worst = err
        if not err <= self.tol and not self.first_failure:
            self.first_failure = f"{where}: error {err:.3e} > {self.tol:g}"

    def close(self, got, want, where=""):
        self.add(abs(got - want), where)

    def result(self, name, detail="", **notes):
        ok = self.checks > 0 and not self.first_failure
        return SuiteResult(name, ok, self.checks, self.worst, self.first_failure or detail, notes)


def _representatives(tol):
    return {f: build_family(f, tol, **REPRESENTATIVES[f]) for f in FAMILY_NAMES}


def _random_states(rng, count=N_RANDOM, real=False):
    return [random_state(rng, real=real) for _ in range(count)]


def _identity_suite(name, key, rng, tol, states=None):
    t = _Tally(IDENTITY_TOL)
    reps = _representatives(tol)
    cases = list(reps.items()) + [(f"random#{i}", s) for i, s in enumerate(_random_states(rng))]
    if states is not None:
        cases = states
    for label, psi in cases:
        for p in QUBITS:
            t.add(build_report(psi, p, tol).residuals[key], f"{label} qubit {p}")
    return t.result(name, f"{len(cases)} states x 4 qubits")


def suite_identities_3n(rng, tol):
    """Global transpose as the sum of K-way transposes minus twice the state."""
    return _identity_suite("identities-3n", "eq3n", rng, tol)


def suite_identities_5n(rng, tol):
    """``N_G`` as the sum of the ``E_K - E_0`` plus ``E_0``."""
    return _identity_suite("identities-5n", "eq5n", rng, tol)


def suite_identities_ro3tsum(rng, tol):
    """Three-way transpose as the sum of triple-selective transposes."""
    return _identity_suite("identities-ro3tsum", "ro3tsum", rng, tol)


def single_flip_imaginary(psi):
    """Largest imaginary part among density-matrix elements whose row and
    column labels differ in exactly one qubit."""
    rho = np.outer(psi, np.conj(psi))
    idx = np.arange(rho.shape[0])
    flips = idx[:, None] ^ idx[None, :]
    single = (flips != 0) & ((flips & (flips - 1)) == 0)
    return float(np.max(np.abs(rho.imag[single]), initial=0.0))


def suite_identities_ro2tsum(rng, tol):
    """Two-way transpose as the sum of pair-selective transposes.

    Exact when every single-flip element is real, and asserted there; the
    residual of any other state is reported only.
    """
    t = _Tally(IDENTITY_TOL)
    reported = {}
    cases = [(f, s) for f, s in _representatives(tol).items()]
    cases += [(f"real#{i}", s) for i, s in enumerate(_random_states(rng, real=True))]
    cases += [
        (f"class1#{i}", build_general_class1(**random_class1_coefficients(rng), tol=tol)) for i in range(N_DRAWS)
    ]
    for label, psi in cases:
        worst = max(build_report(psi, p, tol).residuals["ro2tsum"] for p in QUBITS)
        if single_flip_imaginary(psi) <= tol.herm_tol:
            t.add(worst, label)
        else:
            reported[label] = worst
    shown = ", ".join(f"{k}={v:.3g}" for k, v in reported.items())
    return t.result("identities-ro2tsum", f"reported only: {shown}", reported=reported)


def _class1_draws(rng, tol):
    for family in CLASS_I:
        for i in range(N_DRAWS):
            params = make_params(family, tol=tol, **random_family_params(rng, family))
            yield f"{family}#{i}", params, build_family(params, tol)


def suite_class1_schmidt(rng, tol):
    """Squared global negativity of qubit A for every class-I family."""
    t = _Tally(ORACLE_TOL)
    for label, params, psi in _class1_draws(rng, tol):
        t.close(build_report(psi, "A", tol).products["NG2"], oracle_schmidt(params)[2], label)
    return t.result("class1-schmidt", f"{N_DRAWS} draws x {len(CLASS_I)} families")


def suite_class1_oracles(rng, tol):
    """Closed-form ``E_4``, ``E_2`` and pairwise values; ``E_3`` and ``E_0`` vanish."""
    t = _Tally(ORACLE_TOL)
    v = _Tally(VANISH_TOL)
    for label, params, psi in _class1_draws(rng, tol):
        rep = build_report(psi, "A", tol)
        o = oracle_class1(**class1_coefficients(params))
        t.close(rep.E_K[4], o.E_4, label + " E4")
        t.close(rep.E_K[2], o.E_2, label + " E2")
        for lab, (e, _) in oracle_pairwise(params).items():
            t.close(rep.E_pair[lab], e, f"{label} E2[{lab}]")
        v.add(abs(rep.E_K[3]), label + " E3")
        v.add(abs(rep.E_0), label + " E0")
    for i in range(N_DRAWS):
        coeffs = random_class1_coefficients(rng)
        rep = build_report(build_general_class1(**coeffs, tol=tol), "A", tol)
        o = oracle_class1(**coeffs)
        t.close(rep.N_G, o.N_G, f"general#{i} NG")
        t.close(rep.E_K[4], o.E_4, f"general#{i} E4")
        t.close(rep.E_K[2], o.E_2, f"general#{i} E2")
    out = t.result("class1-oracles", "family draws and general class-I draws")
    if out.passed and v.first_failure:
        out.passed, out.detail = False, "vanishing: " + v.first_failure
    out.checks += v.checks
    out.notes["vanishing_worst"] = v.worst
    return out


def suite_la4(rng, tol):
    """Four qubit-A polynomials at eleven points of ``[0, 1/2]``."""
    t = _Tally(ORACLE_TOL)
    for a in np.linspace(0.0, 0.5, 11):
        rep = build_report(build_family("la4", tol, a=a), "A", tol)
        o = oracle_la4(a)
        for key, want in (("NG2", o.NG2), ("NG*E4", o.NGE4), ("NG*E3", o.NGE3), ("NG*E2", o.NGE2)):
            t.close(rep.products[key], want, f"a={a:g} {key}")
    return t.result("la4", "11 points")


def lab3_grid_max(tol=None, steps=101):
    """Grid scan of ``NG*E4`` for qubit A over the feasible ``(a, b)`` domain.

    Returns ``(max, argmax_list, value_at_corner)`` where ``argmax_list``
    holds every grid point within 1e-9 of the maximum and the corner is
    ``(1/sqrt(3), 0)``.
    """
    from .sweep import Axis, SweepSpec, run_sweep

    tol = resolve(tol)
    a_max = 1 / math.sqrt(3)
    spec = SweepSpec("lab3", (Axis("a", 0.0, a_max, steps), Axis("b", 0.0, 1.0, steps)), "A", ("NG*E4",))
    _, rows = run_sweep(spec, tol)
    feasible = [(a, b, v) for a, b, v in rows if v is not None]
    best = max(v for _, _, v in feasible)
    argmax = [(a, b) for a, b, v in feasible if v >= best - 1e-9]
    corner = next(v for a, b, v in feasible if a == a_max and b == 0.0)
    return best, argmax, corner


def suite_lab3_max(rng, tol):
    """Maximum of ``NG*E4`` over the grid is 1/2, reached at ``(1/sqrt(3), 0)``."""
    best, argmax, corner = lab3_grid_max(tol)
    t = _Tally(1e-6)
    t.close(best, 0.5, "grid max")
    t.close(corner, best, "value at (1/sqrt(3), 0)")
    pts = ", ".join(f"({a:.4f},{b:.4f})" for a, b in argmax)
    return t.result("lab3-max", f"max={best:.12f} at {pts}", argmax=argmax)


def suite_fixed_states(rng, tol):
    """Golden values of the parameter-free families."""
    t = _Tally(ORACLE_TOL)
    cache = {}
    for (family, p, key), want in fixed_state_expected().items():
        if (family, p) not in cache:
            cache[family, p] = build_report(build_family(family, tol), p, tol).flat()
        t.close(cache[family, p][key], want, f"{family} {p} {key}")
    return t.result("fixed-states", f"{t.checks} golden values")


def suite_monogamy(rng, tol):
    """``NG^2 = NG*E4 + NG*E2`` on general class-I states, plus both inequalities."""
    t = _Tally(IDENTITY_TOL)
    for i in range(N_RANDOM):
        psi = build_general_class1(**random_class1_coefficients(rng), tol=tol)
        rep = build_report(psi, "A", tol)
        pr = rep.products
        t.close(pr["NG*E4"] + pr["NG*E2"], pr["NG2"], f"general#{i}")
        if not monogamy_check(rep, tol).holds:
            t.add(math.inf, f"general#{i} inequality")
    return t.result("monogamy", f"{N_RANDOM} general class-I states")


def suite_psd(rng, tol):
    """Measurement of D: PSD negativity of A against the pairwise products.

    For the general class-I state the squared PSD negativity of A equals
    ``NG*E2 - NG*E2[A-AD]``. For the G_abcd family the qubit-C version is
    ``2 (|a|^2 + |d|^2)(|b|^2 + |c|^2)``. Outcome probabilities sum to one.
    """
    t = _Tally(ORACLE_TOL)
    for i in range(N_DRAWS):
        psi = build_general_class1(**random_class1_coefficients(rng), tol=tol)
        pr = build_report(psi, "A", tol).products
        want = pr["NG*E2"] - pr[f"NG*E2[{group_label(0, [3])}]"]
        t.close(psd_negativity_sq(psi, "D", "A", tol), want, f"general#{i}")
        t.close(sum(o.probability for o in measure_qubit(psi, "D", tol)), 1.0, f"general#{i} probabilities")
    for i in range(N_DRAWS):
        par = random_family_params(rng, "gabcd")
        psi = build_family("gabcd", tol, **par)
        s_ad = abs(par["a"]) ** 2 + abs(par["d"]) ** 2
        s_bc = abs(par["b"]) ** 2 + abs(par["c"]) ** 2
        t.close(psd_negativity_sq(psi, "D", "C", tol), 2 * s_ad * s_bc, f"gabcd#{i} reference C")
    return t.result("psd", f"{N_DRAWS} general class-I + {N_DRAWS} gabcd draws")


def suite_lu_invariance(rng, tol):
    """``N_G`` of every qubit is unchanged by local unitaries."""
    t = _Tally(IDENTITY_TOL)
    for i in range(N_RANDOM):
        psi = random_state(rng)
        u = random_local_unitary(rng)
        rho, rho_u = density_from_state(psi, tol), density_from_state(u @ psi, tol)
        for p in range(4):
            t.close(global_negativity(rho_u, [p], tol), global_negativity(rho, [p], tol), f"state#{i} qubit {p}")
    return t.result("lu-invariance", f"{N_RANDOM} random local unitaries")


def suite_schmidt(rng, tol):
    """``N_G = 2 sqrt(mu0 mu1)`` from the single-qubit Schmidt weights."""
    t = _Tally(IDENTITY_TOL)
    for i, psi in enumerate(_random_states(rng)):
        rho = density_from_state(psi, tol)
        for p in range(4):
            mu0, mu1 = schmidt_pair(psi, p, tol)
            t.close(global_negativity(rho, [p], tol), 2 * math.sqrt(mu0 * mu1), f"state#{i} qubit {p}")
    return t.result("schmidt", f"{N_RANDOM} random states x 4 qubits")


def _rank2_mixture(rng):
    a, b = random_state(rng), random_state(rng)
    w = rng.uniform(0.2, 0.8)
    return w * np.outer(a, a.conj()) + (1 - w) * np.outer(b, b.conj())


def suite_projector_basis(rng, tol):
    """``E_K`` does not depend on the basis chosen inside the negative eigenspace."""
    t = _Tally(PROJECTOR_TOL)
    ranks = set()
    for i in range(N_RANDOM):
        rho = density_from_state(random_state(rng), tol) if i % 2 else _rank2_mixture(rng)
        p = int(rng.integers(4))
        eig = hermitian_eigen(global_pt(rho, [p]), tol)
        vecs = eig.eigenvectors[:, eig.eigenvalues < -tol.neg_threshold]
        r = vecs.shape[1]
        ranks.add(r)
        rotated = vecs @ haar_unitary(rng, r) if r else vecs
        for k in (2, 3, 4):
            m = kway_pt(rho, p, k)
            by_basis = -2.0 * float(np.einsum("im,ij,jm->", rotated.conj(), m, rotated).real)
            t.close(partial_kway_negativity(rho, p, k, tol), by_basis, f"case#{i} K={k}")
    return t.result("projector-basis", f"negative ranks seen {sorted(ranks)}", ranks=sorted(ranks))


def _permute_state(psi, perm):
    """Move qubit ``q`` to position ``perm[q]``."""
    t = psi.reshape([2] * 4)
    inv = np.argsort(perm)
    return np.transpose(t, inv).reshape(-1)


def _relabel(label, perm):
    ref, group = label.split("-")
    move = lambda c: QUBITS[perm[QUBITS.index(c)]]  # noqa: E731
    return f"{move(ref)}-{''.join(sorted(move(c) for c in group))}"


def suite_permutation(rng, tol):
    """Relabelling qubits relabels every report entry and changes nothing else."""
    t = _Tally(IDENTITY_TOL)
    for i in range(N_RANDOM // 4):
        psi = random_state(rng)
        perm = [int(x) for x in rng.permutation(4)]
        moved = _permute_state(psi, perm)
        for p in range(4):
            a = build_report(psi, p, tol)
            b = build_report(moved, perm[p], tol)
            t.close(a.N_G, b.N_G, f"state#{i} NG")
            t.close(a.E_0, b.E_0, f"state#{i} E0")
            for k in a.E_K:
                t.close(a.E_K[k], b.E_K[k], f"state#{i} E{k}")
                t.close(a.N_K[k], b.N_K[k], f"state#{i} N{k}")
            for lab, e in a.E_pair.items():
                t.close(e, b.E_pair[_relabel(lab, perm)], f"state#{i} {lab}")
            for lab, e in a.E_triple.items():
                t.close(e, b.E_triple[_relabel(lab, perm)], f"state#{i} {lab}")
    return t.result("permutation", f"{N_RANDOM // 4} states, random relabellings")


def suite_spectral_form(rng, tol):
    """Projector form of ``E_K`` equals the eigen-overlap form."""
    t = _Tally(PROJECTOR_TOL)
    for i, psi in enumerate(_random_states(rng, N_RANDOM // 4)):
        rho = density_from_state(psi, tol)
        for p in range(4):
            for k in (2, 3, 4):
                t.close(
                    partial_kway_negativity(rho, p, k, tol),
                    partial_kway_negativity_spectral(rho, p, k, tol),
                    f"state#{i} qubit {p} K={k}",
                )
    return t.result("spectral-form", f"{N_RANDOM // 4} random states")


def suite_backends(rng, tol):
    """Every available kernel backend gives the same spectra and transposes."""
    t = _Tally(PROJECTOR_TOL)
    names = _backend.available()
    ref = _backend.get("python")
    for i in range(20):
        psi = random_state(rng)
        rho = density_from_state(psi, tol)
        sel = (rng.random(16) < 0.5).astype(np.uint8)
        mask = int(rng.integers(1, 16))
        m = global_pt(rho, [int(rng.integers(4))])
        w_ref = hermitian_eigen(m, tol, kernels=ref).eigenvalues
        s_ref = ref.selective_transpose(rho, mask, sel)
        for name in names:
            k = _backend.get(name)
            t.add(np.max(np.abs(hermitian_eigen(m, tol, kernels=k).eigenvalues - w_ref)), f"{name} case#{i} eig")
            t.add(np.max(np.abs(k.selective_transpose(rho, mask, sel) - s_ref)), f"{name} case#{i} transpose")
    return t.result("backends", f"backends {names}, active {_backend.BACKEND}")


def suite_quantities(rng, tol):
    """The lazy per-quantity path used by sweeps equals the full report."""
    t = _Tally(0.0)
    for i, psi in enumerate(_random_states(rng, 10)):
        for p in QUBITS:
            flat = build_report(psi, p, tol).flat()
            for key, got in zip(flat, evaluate_quantities(psi, p, list(flat), tol)):
                t.close(got, flat[key], f"state#{i} {p} {key}")
    return t.result("quantities", "sweep path vs full report")


SUITES = {
    "identities-3n": suite_identities_3n,
    "identities-5n": suite_identities_5n,
    "identities-ro3tsum": suite_identities_ro3tsum,
    "identities-ro2tsum": suite_identities_ro2tsum,
    "class1-schmidt": suite_class1_schmidt,
    "class1-oracles": suite_class1_oracles,
    "la4": suite_la4,
    "lab3-max": suite_lab3_max,
    "fixed-states": suite_fixed_states,
    "monogamy": suite_monogamy,
    "psd": suite_psd,
    "lu-invariance": suite_lu_invariance,
    "schmidt": suite_schmidt,
    "projector-basis": suite_projector_basis,
    "permutation": suite_permutation,
    "spectral-form": suite_spectral_form,
    "backends": suite_backends,
    "quantities": suite_quantities,
}


def suite_rng(seed, name):
    """Independent stream per suite so one suite's draws never shift another's."""
    return np.random.default_rng([int(seed), list(SUITES).index(name)])


def run(suite="all", seed=0, tol=None):
    """Run one suite or all of them; returns a list of :class:`SuiteResult`."""
    from .errors import InputError

    tol = resolve(tol)
    names = list(SUITES) if suite == "all" else [suite]
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise InputError(f"unknown suite {unknown[0]!r}; choose from all, {', '.join(SUITES)}")
    return [SUITES[n](suite_rng(seed, n), tol) for n in names]
