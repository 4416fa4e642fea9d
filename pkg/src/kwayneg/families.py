"""The nine four-qubit family representatives and their closed-form values.

Parameters of ``gabcd``, ``labc2``, ``la2b2`` and ``la2-0-31`` may be
complex; ``lab3`` and ``la4`` take real parameters. Normalization
coefficients fixed by the other parameters (``d`` of ``labc2``, ``c`` of
``la2b2``/``lab3``/``la4``, ``b`` of ``la2-0-31``) are the nonnegative real
root of their square.
"""
from dataclasses import dataclass, field
import math
from typing import NamedTuple

import numpy as np

from ._config import resolve
from .errors import DomainError, InputError, NormalizationError
from .linalg import pure_state

FAMILY_NAMES = ("gabcd", "labc2", "la2b2", "la2-0-31", "lab3", "la4", "l0-53", "l0-71", "l0-31-0-31")

_FREE_PARAMS = {
    "gabcd": ("a", "b", "c", "d"),
    "labc2": ("a", "b", "c"),
    "la2b2": ("a", "b"),
    "la2-0-31": ("a",),
    "lab3": ("a", "b"),
    "la4": ("a",),
    "l0-53": (),
    "l0-71": (),
    "l0-31-0-31": (),
}
REAL_ONLY = frozenset({"lab3", "la4"})
CLASS_I = ("gabcd", "labc2", "la2b2", "la2-0-31")

# representative parameters used by verification suites and examples
REPRESENTATIVES = {
    "gabcd": {"a": 0.5, "b": 0.5, "c": 0.5, "d": 0.5},
    "labc2": {"a": 0.4, "b": 0.3, "c": 0.35},
    "la2b2": {"a": 0.45, "b": 0.3},
    "la2-0-31": {"a": 0.5},
    "lab3": {"a": 0.3, "b": 0.5},
    "la4": {"a": 0.3},
    "l0-53": {},
    "l0-71": {},
    "l0-31-0-31": {},
}


def canonical_name(name):
    key = str(name).strip().lower().replace("_", "-")
    if key not in _FREE_PARAMS:
        raise InputError(f"unknown family {name!r}; expected one of {', '.join(FAMILY_NAMES)}")
    return key


def free_parameters(name):
    return _FREE_PARAMS[canonical_name(name)]


class ClassLabel(NamedTuple):
    klass: str
    e3_zero: bool
    e4_zero: bool


def class_label(name):
    name = canonical_name(name)
    if name in CLASS_I:
        return ClassLabel("I", True, False)
    return ClassLabel("II", False, name in ("l0-53", "l0-71", "l0-31-0-31"))


def _root(square, what, tol):
    if square < -tol.norm_tol:
        raise DomainError(f"infeasible parameters: {what} = {square!r} < 0")
    return math.sqrt(max(square, 0.0))


def _check_abs(value, bound, what, tol):
    if abs(value) > bound + tol.norm_tol:
        raise DomainError(f"|{what}| = {abs(value)!r} exceeds {bound!r}")


@dataclass(frozen=True)
class FamilyParams:
    """A family name, its free parameters, and derived normalization values."""

    family: str
    params: dict = field(default_factory=dict)
    derived: dict = field(default_factory=dict)


def make_params(family, tol=None, **params):
    """Validate parameters for ``family`` and compute the derived coefficients.

    Raises
    ------
    InputError
        Unknown family or parameter names.
    DomainError
        Parameters outside the feasible region, including complex values
        for a real-parameter family.
    """
    tol = resolve(tol)
    name = canonical_name(family)
    expected = _FREE_PARAMS[name]
    unknown = set(params) - set(expected)
    missing = set(expected) - set(params)
    if unknown or missing:
        raise InputError(
            f"family {name} takes parameters {expected}; unknown {sorted(unknown)}, missing {sorted(missing)}"
        )
    values = {}
    for key in expected:
        v = complex(params[key])
        if not (math.isfinite(v.real) and math.isfinite(v.imag)):
            raise InputError(f"parameter {key} must be finite")
        if name in REAL_ONLY:
            if v.imag != 0:
                raise DomainError(f"family {name} takes real parameters; got {key}={v}")
            values[key] = v.real
        else:
            values[key] = v
    sq = {k: abs(v) ** 2 for k, v in values.items()}
    derived = {}
    if name == "gabcd":
        total = sum(sq.values())
        if abs(total - 1.0) > tol.norm_tol:
            raise DomainError(f"gabcd needs |a|^2+|b|^2+|c|^2+|d|^2 = 1, got {total!r}")
    elif name == "labc2":
        derived["d2"] = 1.0 - 2 * sq["c"] - sq["b"] - sq["a"]
        derived["d"] = _root(derived["d2"], "d^2", tol)
    elif name == "la2b2":
        _check_abs(values["a"], 1 / math.sqrt(2), "a", tol)
        _check_abs(values["b"], 1 / math.sqrt(2), "b", tol)
        derived["c2"] = (1.0 - 2 * sq["a"] - 2 * sq["b"]) / 2
        derived["c"] = _root(derived["c2"], "c^2", tol)
    elif name == "la2-0-31":
        derived["b2"] = (1.0 - 2 * sq["a"]) / 3
        derived["b"] = _root(derived["b2"], "b^2", tol)
    elif name == "lab3":
        _check_abs(values["a"], 1 / math.sqrt(3), "a", tol)
        _check_abs(values["b"], 1.0, "b", tol)
        derived["c2"] = (1.0 - values["b"] ** 2 - 3 * values["a"] ** 2) / 2
        derived["c"] = _root(derived["c2"], "c^2", tol)
    elif name == "la4":
        a = values["a"]
        if a < -tol.norm_tol or a > 0.5 + tol.norm_tol:
            raise DomainError(f"la4 needs 0 <= a <= 1/2, got {a!r}")
        derived["c2"] = (1.0 - 4 * a * a) / 3
        derived["c"] = _root(derived["c2"], "(1-4a^2)/3", tol)
    for key in ("d2", "c2", "b2"):
        if key in derived:
            derived[key] = max(derived[key], 0.0)
    return FamilyParams(name, values, derived)


def _ket(terms):
    psi = np.zeros(16, dtype=complex)
    for label, amp in terms:
        psi[int(label, 2)] += amp
    return psi


def _terms(fp):
    p, dv = fp.params, fp.derived
    name = fp.family
    if name == "gabcd":
        a, b, c, d = p["a"], p["b"], p["c"], p["d"]
        return [
            ("0000", (a + d) / 2), ("1111", (a + d) / 2),
            ("1100", (a - d) / 2), ("0011", (a - d) / 2),
            ("1010", (b + c) / 2), ("0101", (b + c) / 2),
            ("0110", (b - c) / 2), ("1001", (b - c) / 2),
        ]
    if name == "labc2":
        a, b, c, d = p["a"], p["b"], p["c"], dv["d"]
        return [
            ("0000", (a + b) / 2), ("1111", (a + b) / 2),
            ("1100", (a - b) / 2), ("0011", (a - b) / 2),
            ("1010", c), ("0101", c), ("0110", d),
        ]
    if name == "la2b2":
        a, b, c = p["a"], p["b"], dv["c"]
        return [("0000", a), ("1111", a), ("0101", b), ("1010", b), ("0110", c), ("0011", c)]
    if name == "la2-0-31":
        a, b = p["a"], dv["b"]
        return [("0000", a), ("1111", a), ("0101", b), ("0110", b), ("0011", b)]
    if name == "lab3":
        a, b, c = p["a"], p["b"], dv["c"]
        ic = 1j * c / math.sqrt(2)
        return [
            ("0000", a), ("1111", a),
            ("0101", (a + b) / 2), ("1010", (a + b) / 2),
            ("0110", (a - b) / 2), ("1001", (a - b) / 2),
            ("0001", ic), ("0010", ic), ("0111", ic), ("1011", ic),
        ]
    if name == "la4":
        a, c = p["a"], dv["c"]
        return [
            ("0000", a), ("0101", a), ("1010", a), ("1111", a),
            ("0001", 1j * c), ("0110", c), ("1011", -1j * c),
        ]
    if name == "l0-53":
        return [(s, 0.5) for s in ("0000", "0101", "1000", "1110")]
    if name == "l0-71":
        return [(s, 0.5) for s in ("0000", "1011", "1101", "1110")]
    if name == "l0-31-0-31":
        return [(s, 1 / math.sqrt(2)) for s in ("0000", "0111")]
    raise InputError(f"unknown family {name!r}")  # pragma: no cover


def build_family(params, tol=None, **kwargs):
    """Normalized 16-amplitude state of a family.

    ``params`` is a FamilyParams or a family name (parameters as keywords).
    """
    tol = resolve(tol)
    if not isinstance(params, FamilyParams):
        params = make_params(params, tol=tol, **kwargs)
    psi = _ket(_terms(params))
    norm2 = float(np.vdot(psi, psi).real)
    # clamped derived squares may leave a few norm_tol of slack
    if abs(norm2 - 1.0) > 4 * tol.norm_tol:
        raise NormalizationError(f"{params.family} built with norm^2 {norm2!r}; parameters inconsistent")
    return psi / math.sqrt(norm2)


CLASS1_KEYS = ("alpha", "beta", "chi", "delta", "A", "B", "C", "D")
_CLASS1_LABELS = ("0000", "0011", "0101", "0110", "1111", "1100", "1010", "1001")


def build_general_class1(alpha, beta, chi, delta, A, B, C, D, tol=None):
    """The eight-amplitude even-weight state spanning every class-I family."""
    coeffs = (alpha, beta, chi, delta, A, B, C, D)
    total = sum(abs(complex(x)) ** 2 for x in coeffs)
    if abs(total - 1.0) > resolve(tol).norm_tol:
        raise NormalizationError(f"class-I coefficients have norm^2 {total!r}")
    return pure_state(_ket(zip(_CLASS1_LABELS, (complex(x) for x in coeffs))), tol=tol)


def class1_coefficients(params):
    """Map a class-I family onto ``build_general_class1`` arguments."""
    if not isinstance(params, FamilyParams):
        raise InputError("class1_coefficients takes FamilyParams")
    p, dv, name = params.params, params.derived, params.family
    if name == "gabcd":
        a, b, c, d = p["a"], p["b"], p["c"], p["d"]
        vals = ((a + d) / 2, (a - d) / 2, (b + c) / 2, (b - c) / 2) * 2
    elif name == "labc2":
        a, b, c, d = p["a"], p["b"], p["c"], dv["d"]
        vals = ((a + b) / 2, (a - b) / 2, c, d, (a + b) / 2, (a - b) / 2, c, 0)
    elif name == "la2b2":
        a, b, c = p["a"], p["b"], dv["c"]
        vals = (a, c, b, c, a, 0, b, 0)
    elif name == "la2-0-31":
        a, b = p["a"], dv["b"]
        vals = (a, b, b, b, a, 0, 0, 0)
    else:
        raise InputError(f"{name} is not a class-I family")
    return dict(zip(CLASS1_KEYS, (complex(v) for v in vals)))


class Class1Oracle(NamedTuple):
    N_G: float
    E_4: float
    E_2: float
    mu0: float
    mu1: float


def oracle_class1(alpha, beta, chi, delta, A, B, C, D):
    """Closed forms for qubit A of the general class-I state."""
    s = [abs(complex(x)) ** 2 for x in (alpha, beta, chi, delta, A, B, C, D)]
    al, be, ch, de, sA, sB, sC, sD = s
    mu0 = al + be + ch + de
    mu1 = sA + sB + sC + sD
    n_g = 2 * math.sqrt(mu0 * mu1)
    if n_g == 0:
        return Class1Oracle(0.0, 0.0, 0.0, mu0, mu1)
    e4 = 4 / n_g * (sA * al + sB * be + sC * ch + sD * de)
    return Class1Oracle(n_g, e4, n_g - e4, mu0, mu1)


def oracle_schmidt(params):
    """Closed-form ``(mu0, mu1, NG^2)`` of qubit A for the class-I families."""
    p, dv, name = params.params, params.derived, params.family
    if name == "gabcd":
        return 0.5, 0.5, 1.0
    if name == "labc2":
        d2 = dv["d2"]
        return (1 + d2) / 2, (1 - d2) / 2, 1 - d2 * d2
    if name == "la2b2":
        c2 = dv["c2"]
        return 0.5 + c2, 0.5 - c2, 1 - 4 * c2 * c2
    if name == "la2-0-31":
        a2 = abs(p["a"]) ** 2
        return 1 - a2, a2, 4 * (a2 - a2 * a2)
    raise InputError(f"{name} is not a class-I family")


def _pair_labels():
    return ("A-AB", "A-AC", "A-AD")


def oracle_pairwise(params):
    """Closed-form pairwise values for qubit A.

    Returns
    -------
    dict
        ``{"A-AB": (E, NG*E), "A-AC": ..., "A-AD": ...}``.
    """
    p, dv, name = params.params, params.derived, params.family
    n_g = math.sqrt(oracle_schmidt(params)[2])
    if name == "gabcd":
        a, b, c, d = p["a"], p["b"], p["c"], p["d"]
        apd, amd, bpc, bmc = (abs(x) ** 2 for x in (a + d, a - d, b + c, b - c))
        es = (0.5 * (apd * amd + bpc * bmc), 0.5 * (apd * bpc + amd * bmc), 0.5 * (apd * bmc + amd * bpc))
        return {lab: (e, n_g * e) for lab, e in zip(_pair_labels(), es)}
    if name == "labc2":
        a, b, c = p["a"], p["b"], p["c"]
        apb, amb, c2, d2 = abs(a + b) ** 2, abs(a - b) ** 2, abs(c) ** 2, dv["d2"]
        # the |c|^2 d^2 term of the A-AB pair carries a factor 4; without it
        # the three pairs do not add up to NG^2 - NG*E4
        prods = (0.5 * apb * amb + 4 * c2 * d2, 2 * apb * c2 + amb * d2, 2 * amb * c2 + apb * d2)
    elif name == "la2b2":
        a2, b2, c2 = abs(p["a"]) ** 2, abs(p["b"]) ** 2, dv["c2"]
        prods = (4 * c2 * (a2 + b2), 8 * a2 * b2, 4 * c2 * (a2 + b2))
    elif name == "la2-0-31":
        v = 4 * abs(p["a"]) ** 2 * dv["b2"]
        prods = (v, v, v)
    else:
        raise InputError(f"no pairwise closed form for {name}")
    return {lab: ((pr / n_g) if n_g > 0 else 0.0, pr) for lab, pr in zip(_pair_labels(), prods)}


class La4Oracle(NamedTuple):
    NG2: float
    NGE4: float
    NGE3: float
    NGE2: float


def oracle_la4(a):
    """Qubit-A polynomials of the single-parameter family, ``0 <= a <= 1/2``."""
    a = float(a)
    if not 0.0 <= a <= 0.5:
        raise DomainError(f"la4 oracle needs 0 <= a <= 1/2, got {a!r}")
    a2, a4 = a * a, a**4
    return La4Oracle(
        8 / 9 * (a2 - 2 * a4 + 1),
        8 * a4,
        4 / 9 * (4 * a2 - 32 * a4 + 1),
        4 / 9 * (10 * a4 - 2 * a2 + 1),
    )


def oracle_products(params):
    """Closed forms for qubit-A products, keyed like report products.

    Empty for families without closed forms (``lab3``).
    """
    p, dv, name = params.params, params.derived, params.family
    if name in CLASS_I:
        ng2 = oracle_schmidt(params)[2]
        pairs = oracle_pairwise(params)
        out = {"NG2": ng2}
        if name == "gabcd":
            a, b, c, d = p["a"], p["b"], p["c"], p["d"]
            out["NG*E4"] = 0.25 * sum(abs(x) ** 4 for x in (a + d, a - d, b + c, b - c))
        elif name == "labc2":
            a, b, c = p["a"], p["b"], p["c"]
            out["NG*E4"] = 4 * (abs((a + b) / 2) ** 4 + abs((a - b) / 2) ** 4 + abs(c) ** 4)
        elif name == "la2b2":
            out["NG*E4"] = 4 * (abs(p["a"]) ** 4 + abs(p["b"]) ** 4)
        else:
            out["NG*E4"] = 4 * abs(p["a"]) ** 4
        out["NG*E2"] = sum(pr for _, pr in pairs.values())
        out["NG*E3"] = 0.0
        for lab, (_, pr) in pairs.items():
            out[f"NG*E2[{lab}]"] = pr
        return out
    if name == "la4":
        o = oracle_la4(p["a"])
        return {"NG2": o.NG2, "NG*E4": o.NGE4, "NG*E3": o.NGE3, "NG*E2": o.NGE2}
    if name in ("l0-53", "l0-71", "l0-31-0-31"):
        return {q: v for (s, ref, q), v in fixed_state_expected().items() if s == name and ref == "A"}
    return {}


def fixed_state_expected():
    """Golden values for the three parameter-free families.

    Keys are ``(family, reference_qubit, quantity)`` with quantity names as in
    :meth:`NegativityReport.flat`.
    """
    g = {}
    g[("l0-53", "A", "NG2")] = 0.75
    g[("l0-53", "D", "NG2")] = 0.75
    g[("l0-53", "A", "NG*E3[A-ABC]")] = 0.25
    g[("l0-53", "A", "NG*E3[A-ABD]")] = 0.25
    g[("l0-53", "D", "NG*E3[D-ACD]")] = 0.25
    g[("l0-53", "D", "NG*E2[D-BD]")] = 0.25
    g[("l0-71", "A", "NG2")] = 0.75
    g[("l0-71", "A", "NG*E3")] = 0.75
    for t in ("A-ABC", "A-ABD", "A-ACD"):
        g[("l0-71", "A", f"NG*E3[{t}]")] = 0.25
    g[("l0-71", "D", "NG2")] = 1.0
    g[("l0-71", "D", "NG*E3")] = 0.5
    g[("l0-71", "D", "NG*E2")] = 0.5
    g[("l0-71", "D", "NG*E3[D-ABD]")] = 0.25
    g[("l0-71", "D", "NG*E3[D-ACD]")] = 0.25
    g[("l0-71", "D", "NG*E2[D-BD]")] = 0.25
    g[("l0-71", "D", "NG*E2[D-CD]")] = 0.25
    g[("l0-31-0-31", "A", "NG2")] = 0.0
    for q in "BCD":
        g[("l0-31-0-31", q, "NG2")] = 1.0
        g[("l0-31-0-31", q, "NG*E3")] = 1.0
    return g


def oracle_quantities(params, qubit):
    """Every closed-form or golden value available for ``qubit``.

    Keys follow :meth:`NegativityReport.flat`; empty when nothing is known.
    """
    name = params.family
    qubit = str(qubit).upper()
    out = {}
    if name in ("l0-53", "l0-71", "l0-31-0-31"):
        return {q: v for (s, ref, q), v in fixed_state_expected().items() if s == name and ref == qubit}
    if qubit != "A":
        return out
    if name in CLASS_I:
        o = oracle_class1(**class1_coefficients(params))
        out.update({"NG": o.N_G, "E4": o.E_4, "E2": o.E_2, "E3": 0.0, "E0": 0.0})
        for lab, (e, _) in oracle_pairwise(params).items():
            out[f"E2[{lab}]"] = e
    out.update(oracle_products(params))
    return out
