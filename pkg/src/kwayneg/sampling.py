"""Seeded random states, local unitaries and in-domain family parameters."""
import math

import numpy as np

from .families import CLASS1_KEYS, canonical_name


def random_state(rng, n=4, real=False):
    v = rng.normal(size=1 << n)
    if not real:
        v = v + 1j * rng.normal(size=1 << n)
    return (v / np.linalg.norm(v)).astype(complex)


def haar_unitary(rng, d=2):
    z = (rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    ph = np.diag(r) / np.abs(np.diag(r))
    return q * ph


def random_local_unitary(rng, n=4):
    u = np.ones((1, 1), dtype=complex)
    for _ in range(n):
        u = np.kron(u, haar_unitary(rng))
    return u


def random_class1_coefficients(rng, real=False):
    v = rng.normal(size=8)
    if not real:
        v = v + 1j * rng.normal(size=8)
    v = v / np.linalg.norm(v)
    return dict(zip(CLASS1_KEYS, (complex(x) for x in v)))


def _cnormal(rng, size, real):
    z = rng.normal(size=size)
    return z if real else z + 1j * rng.normal(size=size)


def random_family_params(rng, family, real=False):
    """Parameters drawn uniformly enough from the interior of the family's domain."""
    name = canonical_name(family)
    if name == "gabcd":
        v = _cnormal(rng, 4, real)
        v = v / np.linalg.norm(v)
        return dict(zip("abcd", (complex(x) for x in v)))
    if name == "labc2":
        z = _cnormal(rng, 3, real)
        d = abs(rng.normal())
        s = math.sqrt(abs(z[0]) ** 2 + abs(z[1]) ** 2 + 2 * abs(z[2]) ** 2 + d * d)
        return {"a": complex(z[0] / s), "b": complex(z[1] / s), "c": complex(z[2] / s)}
    if name == "la2b2":
        z = _cnormal(rng, 2, real)
        c = abs(rng.normal())
        s = math.sqrt(2 * (abs(z[0]) ** 2 + abs(z[1]) ** 2 + c * c))
        return {"a": complex(z[0] / s), "b": complex(z[1] / s)}
    if name == "la2-0-31":
        r = math.sqrt(rng.uniform()) / math.sqrt(2)
        phase = 1.0 if real else np.exp(1j * rng.uniform(0, 2 * math.pi))
        return {"a": complex(r * phase)}
    if name == "lab3":
        while True:
            a = rng.uniform(0, 1 / math.sqrt(3))
            b = rng.uniform(-1, 1)
            if b * b + 3 * a * a <= 1:
                return {"a": a, "b": b}
    if name == "la4":
        return {"a": rng.uniform(0, 0.5)}
    return {}
