# tests/test_equilibrium.py
# Copyright (c) 2026 Monolink Systems
# Licensed under AGPLv3
import math

import numpy as np
import pytest

from ringstab.core import equilibrium
from ringstab.core.errors import AmbiguousRankError, DomainError
from ringstab.core.oracle import jacobi_eigenvalues
from ringstab.models.ring import RingConfiguration


class TestMatrixM:
    def test_antisymmetric(self, rng):
        angles = np.sort(rng.uniform(0.0, 2.0 * math.pi, size=7))
        m = equilibrium.build_M(RingConfiguration(angles=tuple(angles), masses=(1.0,) * 7))
        assert np.allclose(m, -m.T, atol=1e-12)
        assert np.all(np.diag(m) == 0.0)

    @pytest.mark.parametrize("n", [3, 4, 7, 10, 15])
    def test_regular_ring_with_admissible_masses_balances(self, n):
        family = equilibrium.mass_family(n)
        params = [1.0, 3.5][: family.parameter_count]
        config = RingConfiguration.regular(n, family.masses(*params))
        assert np.max(np.abs(equilibrium.residual(config))) <= 1e-11 * n * 3.5

    def test_unequal_masses_on_odd_ring_do_not_balance(self):
        config = RingConfiguration.regular(5, [1.0, 2.0, 1.0, 2.0, 1.0])
        assert np.max(np.abs(equilibrium.residual(config))) > 1e-3

    def test_perturbed_ring_does_not_balance(self, rng):
        config = RingConfiguration.alternating(4, 2.0, 1.0)
        shifted = config.with_angles(config.theta + rng.uniform(-0.05, 0.05, size=8))
        assert np.max(np.abs(equilibrium.residual(shifted))) > 1e-4

    def test_single_shifted_vertex_golden_value(self):
        config = RingConfiguration.regular(8)
        theta = config.theta.copy()
        theta[0] += 0.01
        values = equilibrium.residual(config.with_angles(theta))
        assert float(np.max(np.abs(values))) == pytest.approx(0.0882039411109793, rel=1e-12)


class TestF1:
    def test_first_index_vanishes(self):
        assert all(equilibrium.f1(n, 1) == 0.0 for n in range(3, 30))

    def test_hand_values(self):
        assert equilibrium.f1(3, 2) == pytest.approx(-1.2113248654051871, rel=1e-9)
        assert equilibrium.f1(7, 2) == pytest.approx(-1.081113, abs=1e-5)

    @pytest.mark.parametrize("n", [3, 4, 5, 8, 13, 20])
    def test_mirror_symmetry(self, n):
        for l in range(2, n + 1):
            assert equilibrium.f1(n, l) == pytest.approx(-equilibrium.f1(n, n + 2 - l), abs=1e-10)

    def test_spectrum_of_regular_M(self):
        n = 9
        m = equilibrium.build_M(RingConfiguration.regular(n))
        computed = np.sort(np.linalg.eigvals(m).imag)
        assert computed == pytest.approx(np.sort(equilibrium.f1_table(n)), abs=1e-10)

    def test_middle_index_positive_from_five(self):
        assert all(equilibrium.f1(n, (n + 1) // 2) > 0.0 for n in range(5, 201))

    def test_second_index_positive_from_42(self):
        assert [n for n in range(42, 201) if not equilibrium.f1(n, 2) > 0.0] == []

    @pytest.mark.parametrize("n", [3, 4])
    def test_middle_index_negative_for_small_rings(self, n):
        assert equilibrium.f1(n, 2) < 0.0

    def test_lower_bound(self):
        for n in range(3, 101):
            assert equilibrium.f1(n, 2) > equilibrium.f1_lower_bound(n)

    @pytest.mark.parametrize("n,l", [(2, 1), (5, 0), (5, 6)])
    def test_domain(self, n, l):
        with pytest.raises(DomainError):
            equilibrium.f1(n, l)


class TestRank:
    def test_rank_law(self):
        for n in range(3, 42):
            assert equilibrium.m_rank(n) == (n - 1 if n % 2 else n - 2)

    @pytest.mark.parametrize("n", [5, 8, 11])
    def test_rank_from_jacobi_on_embedding(self, n):
        m = equilibrium.build_M(RingConfiguration.regular(n))
        values = jacobi_eigenvalues(equilibrium.hermitian_embedding(m))
        assert int(np.sum(np.abs(values) > 1e-8 * n)) == 2 * equilibrium.m_rank(n)

    def test_embedding_is_symmetric(self):
        m = equilibrium.build_M(RingConfiguration.regular(6))
        e = equilibrium.hermitian_embedding(m)
        assert e.shape == (12, 12)
        assert np.allclose(e, e.T, atol=1e-14)

    def test_ambiguous_band(self):
        value = abs(equilibrium.f1(7, 2))
        with pytest.raises(AmbiguousRankError) as info:
            equilibrium.m_rank(7, zero_tol=2.0 * value)
        assert info.value.n == 7

    def test_default_tolerance(self):
        assert equilibrium.default_rank_tol(10) == pytest.approx(1e-7)


class TestMassFamily:
    def test_odd(self):
        family = equilibrium.mass_family(7)
        assert family.parity == "odd"
        assert family.parameter_count == 1
        assert family.masses(2.5) == [2.5] * 7

    def test_even(self):
        family = equilibrium.mass_family(6)
        assert family.parity == "even"
        assert family.parameter_count == 2
        assert family.pattern == [0, 1, 0, 1, 0, 1]
        assert family.masses(2.0, 3.0) == [2.0, 3.0, 2.0, 3.0, 2.0, 3.0]

    def test_wrong_parameter_count(self):
        with pytest.raises(ValueError):
            equilibrium.mass_family(6).masses(1.0)

    def test_margin_controls_ambiguity(self):
        smallest = min(abs(v) for v in equilibrium.f1_table(7) if v != 0.0)
        with pytest.raises(AmbiguousRankError):
            equilibrium.mass_family(7, zero_tol=smallest / 5.0, margin=10.0)
        family = equilibrium.mass_family(7, zero_tol=smallest / 5.0, margin=2.0)
        assert family.parameter_count == 1


class TestProofHelpers:
    def test_f2_concavity(self):
        for n in range(7, 101):
            for l in range(1, (n - 2) // 2 + 1):
                direct, closed = equilibrium.f2_second_difference(n, l)
                cot_form = -0.5 * (
                    1.0 / math.tan((2 * l + 1) * math.pi / (2 * n))
                    + 1.0 / math.tan((2 * l - 1) * math.pi / (2 * n))
                )
                assert direct == pytest.approx(closed, rel=1e-9, abs=1e-9)
                assert closed == pytest.approx(cot_form, rel=1e-9, abs=1e-9)
                assert direct < 0.0

    def test_sine_sum_closed_form(self):
        for n in range(3, 60):
            k = np.arange(1, n)
            assert np.sum(np.sin(k * math.pi / n)) == pytest.approx(1.0 / math.tan(math.pi / (2 * n)), rel=1e-12)

    def test_trapezoidal_cosecant_bound(self):
        for n in range(3, 201):
            k = np.arange(1, n)
            riemann = float(np.sum(1.0 / np.sin(k * math.pi / n))) * math.pi / n
            assert riemann > 2.0 * math.log(1.0 / math.tan(math.pi / (2 * n)))

    def test_f3_f4_domain(self):
        for x in (0.0, math.pi / 2, -0.1):
            with pytest.raises(DomainError):
                equilibrium.proof_aux_f3_f4(x)

    def test_f4_crossing(self):
        n_lo, n_hi, root = equilibrium.f4_crossing()
        assert (n_lo, n_hi) == (55, 56)
        assert n_lo < root < n_hi
        assert equilibrium.proof_aux_f3_f4(math.pi / (2 * 42))[1] < 0.0
        assert equilibrium.proof_aux_f3_f4(math.pi / (2 * n_hi))[1] > 0.0
