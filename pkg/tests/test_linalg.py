import math

import numpy as np
from numpy.testing import assert_allclose
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

import oracles
from kwayneg import (
    ContractError,
    InputError,
    NormalizationError,
    NumericalError,
    build_family,
    density_from_state,
    hermitian_eigen,
    partial_trace,
    pure_state,
    schmidt_pair,
)
from kwayneg._config import DEFAULT_TOLERANCES, Tolerances
from kwayneg.linalg import bit_mask, n_qubits_of, qubit_index, qubit_label, reduced_single, trace_norm
from kwayneg.sampling import random_state


def random_hermitian(rng, d):
    z = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return (z + z.conj().T) / 2


class TestQubits:
    def test_letters_and_ints(self):
        assert qubit_index("A", 4) == 0
        assert qubit_index("d", 4) == 3
        assert qubit_index(2, 4) == 2
        assert qubit_label(1) == "B"

    @pytest.mark.parametrize("bad", ["E", 4, -1, "AB"])
    def test_out_of_range(self, bad):
        with pytest.raises(InputError):
            qubit_index(bad, 4)

    def test_msb_convention(self):
        assert bit_mask(["A"], 4) == 0b1000
        assert bit_mask(["A", "D"], 4) == 0b1001

    @pytest.mark.parametrize("dim", [3, 0, 1 << 9])
    def test_bad_dimension(self, dim):
        with pytest.raises(InputError):
            n_qubits_of(dim)


class TestPureState:
    def test_normalized_passthrough(self, ghz):
        assert_allclose(pure_state(ghz), ghz)

    def test_rejects_unnormalized(self):
        with pytest.raises(NormalizationError):
            pure_state(np.ones(16))

    def test_normalize_flag(self):
        assert_allclose(np.linalg.norm(pure_state(np.ones(16), normalize=True)), 1.0)

    def test_rejects_nan(self):
        v = np.zeros(16, dtype=complex)
        v[0] = np.nan
        with pytest.raises(InputError):
            pure_state(v)

    def test_zero_vector_cannot_normalize(self):
        with pytest.raises(NormalizationError):
            pure_state(np.zeros(16), normalize=True)

    def test_tolerances_must_be_positive(self):
        with pytest.raises(ValueError):
            Tolerances(norm_tol=0.0)
        with pytest.raises(ValueError):
            DEFAULT_TOLERANCES.with_overrides(eig_tol=-1.0)


class TestDensity:
    def test_basis_projector(self, zero_state):
        rho = density_from_state(zero_state)
        expected = np.zeros((16, 16))
        expected[0, 0] = 1
        assert_allclose(rho, expected)

    def test_ghz_projector(self, ghz):
        rho = density_from_state(ghz)
        nz = {(i, j) for i, j in zip(*np.nonzero(np.abs(rho) > 1e-15))}
        assert nz == {(0, 0), (0, 15), (15, 0), (15, 15)}
        assert_allclose(rho[0, 15], 0.5)

    def test_gabcd_rank_one(self):
        rho = density_from_state(build_family("gabcd", a=0.5, b=0.5, c=0.5, d=0.5))
        assert_allclose(np.trace(rho), 1.0, atol=1e-12)
        assert_allclose(rho @ rho, rho, atol=1e-12)
        assert np.linalg.matrix_rank(rho, tol=1e-10) == 1

    def test_unnormalized_raises(self):
        with pytest.raises(NormalizationError):
            density_from_state(2 * oracles.ghz())


class TestHermitianEigen:
    def test_identity(self):
        assert_allclose(hermitian_eigen(np.eye(16)).eigenvalues, np.ones(16))

    def test_diagonal_sorted(self):
        assert_allclose(hermitian_eigen(np.diag([3.0, 1.0, 2.0])).eigenvalues, [1, 2, 3])

    def test_ghz_pt_single_negative(self, ghz):
        w = hermitian_eigen(oracles.pt_reshape(oracles.proj(ghz), [0])).eigenvalues
        assert np.sum(w < -1e-9) == 1
        assert_allclose(w[0], -0.5, atol=1e-12)
        # the coherence block is [[0, 1/2], [1/2, 0]] with characteristic roots -1/2, 1/2
        assert_allclose(np.roots([1, 0, -0.25]).min(), w[0], atol=1e-12)

    @pytest.mark.parametrize("d", [2, 5, 16, 64])
    def test_against_lapack(self, rng, d):
        m = random_hermitian(rng, d)
        eig = hermitian_eigen(m)
        assert_allclose(eig.eigenvalues, np.linalg.eigvalsh(m), atol=1e-10)
        v, w = eig.eigenvectors, eig.eigenvalues
        assert np.linalg.norm(m - v @ np.diag(w) @ v.conj().T) <= 1e-12 * max(1, np.linalg.norm(m)) * 10
        assert_allclose(v.conj().T @ v, np.eye(d), atol=1e-12)
        assert_allclose(w.sum(), np.trace(m).real, atol=1e-10)

    def test_deterministic(self, rng):
        m = random_hermitian(rng, 16)
        a, b = hermitian_eigen(m), hermitian_eigen(m.copy())
        assert np.array_equal(a.eigenvalues, b.eigenvalues)
        assert np.array_equal(a.eigenvectors, b.eigenvectors)

    def test_degenerate(self):
        m = np.diag([1.0, 1.0, -2.0, -2.0]).astype(complex)
        eig = hermitian_eigen(m)
        assert_allclose(eig.eigenvalues, [-2, -2, 1, 1])

    def test_non_hermitian(self):
        m = np.array([[0, 1], [0, 0]], dtype=complex)
        with pytest.raises(ContractError):
            hermitian_eigen(m)

    def test_non_convergence_reported(self, rng, monkeypatch):
        from kwayneg import linalg

        monkeypatch.setattr(linalg, "MAX_SWEEPS", 0)
        with pytest.raises(NumericalError):
            hermitian_eigen(random_hermitian(rng, 4))

    @settings(max_examples=40, deadline=None)
    @given(arrays(np.float64, (2, 6, 6), elements=st.floats(-10, 10)))
    def test_reconstruction_property(self, parts):
        z = parts[0] + 1j * parts[1]
        m = (z + z.conj().T) / 2
        eig = hermitian_eigen(m)
        v, w = eig.eigenvectors, eig.eigenvalues
        assert np.all(np.diff(w) >= 0)
        scale = max(1.0, np.linalg.norm(m))
        assert np.linalg.norm(m - (v * w) @ v.conj().T) <= 1e-11 * scale


class TestTraceNorm:
    def test_density(self, rng):
        assert_allclose(trace_norm(oracles.proj(random_state(rng))), 1.0, atol=1e-12)

    def test_ghz_pt(self, ghz):
        assert_allclose(trace_norm(oracles.pt_reshape(oracles.proj(ghz), [0])), 2.0, atol=1e-12)

    def test_zero(self):
        assert trace_norm(np.zeros((4, 4))) == 0.0


class TestPartialTrace:
    def test_product(self, rng):
        phi = random_state(rng, n=3)
        psi = np.kron([1, 0], phi)
        assert_allclose(partial_trace(oracles.proj(psi), [1, 2, 3]), oracles.proj(phi), atol=1e-14)

    def test_against_einsum(self, rng):
        rho = oracles.proj(random_state(rng))
        want = np.einsum("abcdefgd->abcefg", rho.reshape([2] * 8)).reshape(8, 8)
        assert_allclose(partial_trace(rho, "ABC"), want, atol=1e-14)

    def test_gabcd_trace_d(self):
        # mixture of two W-like states, each with weight 1/2
        a, b, c, d = 0.5, 0.5, 0.5, 0.5
        psi = build_family("gabcd", a=a, b=b, c=c, d=d)
        red = partial_trace(oracles.proj(psi), "ABC")
        w0 = np.zeros(8, dtype=complex)
        w1 = np.zeros(8, dtype=complex)
        # rows of psi with D=0 and D=1
        w0[:] = psi[0::2] * math.sqrt(2)
        w1[:] = psi[1::2] * math.sqrt(2)
        assert_allclose(red, 0.5 * (oracles.proj(w0) + oracles.proj(w1)), atol=1e-14)

    def test_l053_trace_d(self):
        red = partial_trace(oracles.proj(build_family("l0-53")), "ABC")
        t0 = np.zeros(8, dtype=complex)
        t0[[0b000, 0b100, 0b111]] = 1 / math.sqrt(3)
        e010 = np.zeros(8)
        e010[0b010] = 1
        assert_allclose(red, 0.75 * oracles.proj(t0) + 0.25 * np.outer(e010, e010), atol=1e-14)

    def test_preserves_trace_and_positivity(self, rng):
        rho = oracles.proj(random_state(rng))
        for keep in ("A", "BD", "ACD"):
            red = partial_trace(rho, keep)
            assert_allclose(np.trace(red), 1.0, atol=1e-12)
            assert np.linalg.eigvalsh(red).min() >= -1e-12

    def test_empty_keep(self):
        with pytest.raises(InputError):
            partial_trace(np.eye(4) / 4, [])


class TestSchmidt:
    def test_gabcd(self):
        assert_allclose(schmidt_pair(build_family("gabcd", a=0.1, b=0.7, c=0.7, d=0.1), "A"), (0.5, 0.5), atol=1e-12)

    def test_labc2(self):
        from kwayneg import make_params

        fp = make_params("labc2", a=0.4, b=0.3, c=0.35)
        d2 = fp.derived["d2"]
        assert_allclose(schmidt_pair(build_family(fp), "A"), ((1 + d2) / 2, (1 - d2) / 2), atol=1e-12)

    def test_product(self, product_state):
        assert_allclose(schmidt_pair(product_state, "C"), (1.0, 0.0), atol=1e-12)

    def test_reduced_single_matches_partial_trace(self, rng):
        psi = random_state(rng)
        assert_allclose(reduced_single(psi, "B"), partial_trace(oracles.proj(psi), "B"), atol=1e-14)

    @pytest.mark.parametrize("p", "ABCD")
    def test_schmidt_identity(self, rng, p):
        from kwayneg import global_negativity

        for _ in range(10):
            psi = random_state(rng)
            mu0, mu1 = schmidt_pair(psi, p)
            assert mu0 >= mu1
            assert_allclose(mu0 + mu1, 1.0)
            assert_allclose(global_negativity(oracles.proj(psi), [p]), 2 * math.sqrt(mu0 * mu1), atol=1e-11)
