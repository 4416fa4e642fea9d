import math

import numpy as np
from numpy.testing import assert_allclose
import pytest

import oracles
from kwayneg import DomainError, InputError, NormalizationError, build_family, build_general_class1, make_params
from kwayneg.families import (
    CLASS_I,
    FAMILY_NAMES,
    REPRESENTATIVES,
    canonical_name,
    class1_coefficients,
    class_label,
    fixed_state_expected,
    oracle_class1,
    oracle_la4,
    oracle_pairwise,
    oracle_products,
    oracle_quantities,
    oracle_schmidt,
)
from kwayneg.sampling import random_family_params

S2 = math.sqrt(2)


class TestNames:
    @pytest.mark.parametrize("alias, name", [("GABCD", "gabcd"), ("L0_53", "l0-53"), (" la2-0-31 ", "la2-0-31")])
    def test_case_insensitive(self, alias, name):
        assert canonical_name(alias) == name

    def test_unknown(self):
        with pytest.raises(InputError):
            canonical_name("l9")

    def test_classes(self):
        assert [class_label(f).klass for f in FAMILY_NAMES].count("I") == 4
        assert all(class_label(f).e3_zero == (f in CLASS_I) for f in FAMILY_NAMES)


class TestBuild:
    @pytest.mark.parametrize("family", FAMILY_NAMES)
    def test_normalized(self, family):
        assert_allclose(np.linalg.norm(build_family(family, **REPRESENTATIVES[family])), 1.0, atol=1e-14)

    def test_gabcd_ghz(self):
        assert_allclose(build_family("gabcd", a=1 / S2, b=0, c=0, d=1 / S2), oracles.ghz(), atol=1e-15)

    def test_l053(self):
        want = oracles.ket(("0000", 0.5), ("0101", 0.5), ("1000", 0.5), ("1110", 0.5))
        assert_allclose(build_family("l0-53"), want, atol=1e-15)

    def test_la4_half(self):
        want = oracles.ket(("0000", 0.5), ("0101", 0.5), ("1010", 0.5), ("1111", 0.5))
        assert_allclose(build_family("la4", a=0.5), want, atol=1e-15)

    def test_imaginary_factors_present(self):
        assert np.any(np.abs(build_family("lab3", a=0.2, b=0.3).imag) > 0.1)
        assert np.any(np.abs(build_family("la4", a=0.2).imag) > 0.1)

    def test_param_object_or_kwargs(self):
        fp = make_params("la2b2", a=0.3, b=0.4)
        assert_allclose(build_family(fp), build_family("la2b2", a=0.3, b=0.4))

    def test_gabcd_not_normalized(self):
        with pytest.raises(DomainError):
            build_family("gabcd", a=1, b=1, c=0, d=0)

    @pytest.mark.parametrize(
        "family, params",
        [
            ("labc2", dict(a=0.9, b=0.5, c=0.1)),
            ("la2b2", dict(a=0.8, b=0.0)),
            ("la2-0-31", dict(a=0.8)),
            ("lab3", dict(a=0.6, b=0.0)),
            ("lab3", dict(a=0.5, b=0.6)),
            ("la4", dict(a=0.6)),
            ("la4", dict(a=-0.1)),
        ],
    )
    def test_domain(self, family, params):
        with pytest.raises(DomainError):
            make_params(family, **params)

    @pytest.mark.parametrize("family", ["lab3", "la4"])
    def test_real_only(self, family):
        kw = {k: 0.1 + 0.1j for k in REPRESENTATIVES[family]}
        with pytest.raises(DomainError):
            make_params(family, **kw)

    def test_boundary_clamped(self):
        fp = make_params("lab3", a=1 / math.sqrt(3), b=0.0)
        assert fp.derived["c2"] == 0.0
        assert_allclose(np.linalg.norm(build_family(fp)), 1.0)

    @pytest.mark.parametrize("kw", [dict(a=0.1), dict(a=0.1, b=0.1, c=0.1, z=1)])
    def test_wrong_parameter_names(self, kw):
        with pytest.raises(InputError):
            make_params("labc2", **kw)

    def test_general_class1_ghz(self):
        assert_allclose(
            build_general_class1(1 / S2, 0, 0, 0, 1 / S2, 0, 0, 0), oracles.ghz(), atol=1e-15
        )

    def test_general_class1_norm(self):
        with pytest.raises(NormalizationError):
            build_general_class1(1, 1, 0, 0, 0, 0, 0, 0)

    @pytest.mark.parametrize("family", CLASS_I)
    def test_class1_mapping_reproduces_family(self, rng, family):
        fp = make_params(family, **random_family_params(rng, family))
        assert_allclose(build_general_class1(**class1_coefficients(fp)), build_family(fp), atol=1e-14)

    def test_la2b2_mapping_explicit(self):
        a, b = 0.3, 0.4
        c = math.sqrt((1 - 2 * a * a - 2 * b * b) / 2)
        assert_allclose(build_general_class1(a, c, b, c, a, 0, b, 0), build_family("la2b2", a=a, b=b), atol=1e-15)


class TestOracles:
    def test_class1_ghz(self):
        o = oracle_class1(1 / S2, 0, 0, 0, 1 / S2, 0, 0, 0)
        assert_allclose([o.N_G, o.E_4, o.E_2], [1, 1, 0], atol=1e-15)

    def test_class1_gabcd_corner(self):
        o = oracle_class1(**class1_coefficients(make_params("gabcd", a=1, b=0, c=0, d=0)))
        assert_allclose([o.E_4, o.E_2], [0.5, 0.5], atol=1e-15)

    def test_class1_product(self):
        o = oracle_class1(1, 0, 0, 0, 0, 0, 0, 0)
        assert (o.N_G, o.E_4, o.E_2) == (0.0, 0.0, 0.0)

    def test_uniform_class1(self):
        o = oracle_class1(*([1 / math.sqrt(8)] * 8))
        assert_allclose([o.mu0, o.mu1, o.N_G], [0.5, 0.5, 1.0])

    def test_pairwise_gabcd_corner(self):
        pw = oracle_pairwise(make_params("gabcd", a=1, b=0, c=0, d=0))
        assert_allclose([pw[k][0] for k in ("A-AB", "A-AC", "A-AD")], [0.5, 0, 0])

    def test_pairwise_la2b2(self):
        pw = oracle_pairwise(make_params("la2b2", a=0.3, b=0.4))
        assert_allclose(pw["A-AC"][1], 8 * 0.09 * 0.16)

    def test_pairwise_la2_0_31(self):
        pw = oracle_pairwise(make_params("la2-0-31", a=0.4))
        b2 = (1 - 2 * 0.16) / 3
        assert_allclose([v[1] for v in pw.values()], [4 * 0.16 * b2] * 3)

    @pytest.mark.parametrize("family", CLASS_I)
    def test_pairs_sum_to_e2(self, rng, family):
        fp = make_params(family, **random_family_params(rng, family))
        ng2 = oracle_schmidt(fp)[2]
        total = sum(v[1] for v in oracle_pairwise(fp).values())
        assert_allclose(total, ng2 - oracle_products(fp)["NG*E4"], atol=1e-12)

    def test_pairwise_unsupported(self):
        with pytest.raises(InputError):
            oracle_pairwise(make_params("la4", a=0.2))

    @pytest.mark.parametrize(
        "a, want", [(0.5, (1, 0.5, 0, 0.5)), (0.0, (8 / 9, 0, 4 / 9, 4 / 9))]
    )
    def test_la4(self, a, want):
        assert_allclose(tuple(oracle_la4(a)), want, atol=1e-15)

    @pytest.mark.parametrize("a", np.linspace(0, 0.5, 7))
    def test_la4_sum(self, a):
        o = oracle_la4(a)
        assert_allclose(o.NGE4 + o.NGE3 + o.NGE2, o.NG2, atol=1e-15)

    def test_la4_domain(self):
        with pytest.raises(DomainError):
            oracle_la4(0.7)

    def test_golden_table(self):
        g = fixed_state_expected()
        assert g[("l0-53", "A", "NG2")] == 0.75
        assert g[("l0-71", "D", "NG*E2[D-BD]")] == 0.25
        assert g[("l0-31-0-31", "A", "NG2")] == 0.0

    def test_oracle_quantities(self):
        q = oracle_quantities(make_params("l0-71"), "D")
        assert q["NG2"] == 1.0
        assert oracle_quantities(make_params("lab3", a=0.2, b=0.3), "A") == {}
        assert "E2[A-AB]" in oracle_quantities(make_params("gabcd", a=1, b=0, c=0, d=0), "A")
