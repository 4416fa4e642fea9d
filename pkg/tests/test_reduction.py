import math

import numpy as np
from numpy.testing import assert_allclose
import pytest

import oracles
from kwayneg import (
    InputError,
    build_family,
    build_general_class1,
    build_report,
    measure_qubit,
    partial_trace,
    psd_negativity_sq,
    reduced_negativity_bound_check,
)
from kwayneg.sampling import random_class1_coefficients, random_state


class TestMeasure:
    def test_gabcd_d_half(self):
        outs = measure_qubit(build_family("gabcd", a=0.1, b=0.5, c=0.3, d=math.sqrt(0.65)), "D")
        assert_allclose([o.probability for o in outs], [0.5, 0.5], atol=1e-14)

    def test_general_probability_and_state(self, rng):
        c = random_class1_coefficients(rng)
        outs = measure_qubit(build_general_class1(**c), "D")
        p0 = sum(abs(c[k]) ** 2 for k in ("B", "C", "alpha", "delta"))
        assert_allclose(outs[0].probability, p0, atol=1e-14)
        # |000>, |011>, |110>, |101> of the remaining qubits ABC
        phi0 = np.zeros(8, dtype=complex)
        phi0[[0b000, 0b011, 0b110, 0b101]] = [c["alpha"], c["delta"], c["B"], c["C"]]
        assert_allclose(outs[0].collapsed, phi0 / math.sqrt(p0), atol=1e-14)

    def test_basis_state(self, zero_state):
        outs = measure_qubit(zero_state, "B")
        assert [o.probability for o in outs] == [1.0, 0.0]
        assert outs[1].collapsed.size == 0

    def test_dephasing_reconstruction(self, rng):
        psi = random_state(rng)
        rho = oracles.proj(psi)
        outs = measure_qubit(psi, "B")
        recon = np.zeros((16, 16), dtype=complex)
        for o in outs:
            ket = np.zeros(2)
            ket[o.outcome] = 1
            full = np.moveaxis(np.multiply.outer(ket, o.collapsed.reshape(2, 2, 2)), 0, 1).reshape(-1)
            recon += o.probability * np.outer(full, full.conj())
        t = rho.reshape([2] * 8).copy()
        t[:, 0, :, :, :, 1] = 0
        t[:, 1, :, :, :, 0] = 0
        assert_allclose(recon, t.reshape(16, 16), atol=1e-14)

    def test_probabilities_sum(self, rng):
        for q in "ABCD":
            assert_allclose(sum(o.probability for o in measure_qubit(random_state(rng), q)), 1.0)


class TestPsd:
    def test_general_relation(self, rng):
        for _ in range(10):
            psi = build_general_class1(**random_class1_coefficients(rng))
            pr = build_report(psi, "A").products
            assert_allclose(psd_negativity_sq(psi, "D", "A"), pr["NG*E2"] - pr["NG*E2[A-AD]"], atol=1e-12)

    def test_gabcd_reference_c(self, rng):
        a, b, c = 0.3 + 0.1j, 0.5, -0.2j
        d = math.sqrt(1 - abs(a) ** 2 - abs(b) ** 2 - abs(c) ** 2)
        psi = build_family("gabcd", a=a, b=b, c=c, d=d)
        want = 2 * (abs(a) ** 2 + abs(d) ** 2) * (abs(b) ** 2 + abs(c) ** 2)
        assert_allclose(psd_negativity_sq(psi, "D", "C"), want, atol=1e-12)

    def test_product(self, product_state):
        assert psd_negativity_sq(product_state, "A", "B") == 0.0

    def test_same_qubit(self, ghz):
        with pytest.raises(InputError):
            psd_negativity_sq(ghz, "A", "A")


class TestBound:
    def test_ghz(self, ghz):
        chk = reduced_negativity_bound_check(ghz, "D", "A")
        assert (chk.lhs, chk.rhs, chk.holds) == (0.0, 0.0, True)

    def test_la2_0_31(self):
        chk = reduced_negativity_bound_check(build_family("la2-0-31", a=0.5), "D", "A")
        assert chk.holds
        assert chk.lhs > 0.01

    def test_gabcd_uniform_reported(self):
        # the reduced state is a Bell pair on AC next to a maximally mixed B:
        # its negativity squared is 1 while the pairwise products sum to 1/2
        psi = build_family("gabcd", a=0.5, b=0.5, c=0.5, d=0.5)
        red = partial_trace(oracles.proj(psi), "ABC")
        bell = np.zeros(4)
        bell[[0, 3]] = 1 / math.sqrt(2)
        assert_allclose(red, np.kron(np.outer(bell, bell), np.eye(2) / 2).reshape(2, 2, 2, 2, 2, 2)
                        .transpose(0, 2, 1, 3, 5, 4).reshape(8, 8), atol=1e-14)
        chk = reduced_negativity_bound_check(psi, "D", "A")
        assert_allclose([chk.lhs, chk.rhs], [1.0, 0.5], atol=1e-12)
        assert not chk.holds

    def test_distinct(self, ghz):
        with pytest.raises(InputError):
            reduced_negativity_bound_check(ghz, "B", "B")
