import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stellar_forge import (
    AT_INFINITY,
    DomainError,
    SsrcState,
    UnitaryMap,
    apply_rotation,
    apply_unitary,
    make_cat_ssrc,
    make_cv_cat,
    make_from_coeffs,
    make_fock_ssrc,
    make_spin_coherent,
    mean_photon_number,
    rotation_unitary,
)
from oracles import spin_coherent_coeffs_mp


class TestFock:
    def test_basis_vectors(self):
        assert np.array_equal(make_fock_ssrc(3, 0).coeffs, [1, 0, 0, 0])
        assert np.array_equal(make_fock_ssrc(3, 3).coeffs, [0, 0, 0, 1])
        assert np.array_equal(make_fock_ssrc(1, 1).coeffs, [0, 1])

    @pytest.mark.parametrize("n", [-1, 4, 100])
    def test_out_of_range(self, n):
        with pytest.raises(DomainError):
            make_fock_ssrc(3, n)


class TestSpinCoherent:
    def test_equatorial_n2(self):
        state = make_spin_coherent(2, 1.0)
        expected = np.array([0.5, np.sqrt(2) / 2, 0.5])
        assert np.allclose(state.coeffs, expected, atol=1e-15)

    def test_poles(self):
        assert np.array_equal(make_spin_coherent(5, 0.0).coeffs, [1, 0, 0, 0, 0, 0])
        assert np.array_equal(make_spin_coherent(2, AT_INFINITY).coeffs, [0, 0, 1])

    @pytest.mark.parametrize("n_total", [1, 7, 64])
    @pytest.mark.parametrize("x", [0.3, 2.0 - 1.5j, -0.02 + 0.9j, 25.0])
    def test_against_high_precision(self, n_total, x):
        state = make_spin_coherent(n_total, x)
        ref = spin_coherent_coeffs_mp(n_total, x)
        assert max(abs(a - b) for a, b in zip(state.coeffs, ref)) < 1e-14

    def test_nonfinite_rejected(self):
        with pytest.raises(DomainError):
            make_spin_coherent(4, complex(np.inf, 0))

    def test_mean_photon_closed_form(self):
        x = 0.7 - 0.3j
        value = mean_photon_number(make_spin_coherent(50, x))
        assert abs(value - 50 * abs(x) ** 2 / (1 + abs(x) ** 2)) < 1e-12


class TestCat:
    def test_even_coefficients_exactly_zero(self):
        state = make_cat_ssrc(8, 1.3 + 0.4j)
        assert np.all(state.coeffs[::2] == 0)

    def test_n4_w2_coefficients(self):
        state = make_cat_ssrc(4, 2.0)
        expected = np.array([0, 1 / np.sqrt(2), 0, 1 / np.sqrt(2), 0])
        assert np.allclose(state.coeffs, expected, atol=1e-15)

    def test_n1_any_w(self):
        for w in (0.5, 2.0, 1 - 3j):
            state = make_cat_ssrc(1, w)
            assert np.allclose(np.abs(state.coeffs), [0, 1])

    def test_degenerate_rejected(self):
        with pytest.raises(DomainError):
            make_cat_ssrc(4, 0.0)
        with pytest.raises(DomainError):
            make_cat_ssrc(0, 1.0)


class TestFromCoeffs:
    def test_normalizes(self):
        state = make_from_coeffs([1, 1])
        assert np.allclose(state.coeffs, [1 / np.sqrt(2), 1 / np.sqrt(2)])

    def test_phase_preserved(self):
        state = make_from_coeffs([0, 0, 3j])
        assert np.allclose(state.coeffs, [0, 0, 1j])

    def test_uniform_support(self):
        state = make_from_coeffs([1, 0, 1, 0, 1])
        assert np.allclose(state.coeffs[::2], 1 / np.sqrt(3))

    def test_zero_vector_rejected(self):
        with pytest.raises(DomainError):
            make_from_coeffs([0, 0, 0])


class TestCvCat:
    def test_odd_support_and_norm(self):
        state = make_cv_cat(2.0, 40)
        assert np.all(state.coeffs[::2] == 0)
        assert abs(state.norm_sq - 1) < 1e-12

    def test_coefficient_profile(self):
        state = make_cv_cat(1.5, 30)
        k = np.arange(len(state.coeffs))
        # ratios of consecutive odd amplitudes: w^2 / sqrt((k+1)(k+2))
        c = state.coeffs
        for kk in range(1, 9, 2):
            ratio = c[kk + 2] / c[kk]
            expected = 1.5**2 / np.sqrt((kk + 1) * (kk + 2))
            assert abs(ratio - expected) < 1e-12

    def test_cutoff_doubles_until_tail_is_negligible(self):
        state = make_cv_cat(3.0, 1)  # deliberately tiny starting cutoff
        assert state.support_degree > 9
        assert abs(state.norm_sq - 1) < 1e-12

    def test_rejects_zero(self):
        with pytest.raises(DomainError):
            make_cv_cat(0.0, 10)


class TestRotation:
    @pytest.mark.parametrize("n_total", [1, 2, 5, 16, 64])
    def test_matches_spin_coherent(self, n_total):
        north = make_fock_ssrc(n_total, 0)
        for theta in (0.1, 0.8, 1.9, 2.9):
            for phi in (0.0, 1.1, 4.4):
                rotated = apply_rotation(north, theta, phi)
                target = make_spin_coherent(n_total, np.exp(1j * phi) * np.tan(theta / 2))
                assert np.max(np.abs(rotated.coeffs - target.coeffs)) < 1e-10

    def test_identity(self):
        state = make_cat_ssrc(6, 1.0)
        out = apply_rotation(state, 0.0, 0.0)
        assert np.max(np.abs(out.coeffs - state.coeffs)) < 1e-14

    def test_inverse(self):
        state = make_spin_coherent(32, 0.3 + 0.2j)
        out = apply_rotation(apply_rotation(state, 0.8, 0.0), -0.8, 0.0)
        assert np.max(np.abs(out.coeffs - state.coeffs)) < 1e-10

    def test_norm_preserved(self):
        state = make_cat_ssrc(40, 2.0)
        out = apply_rotation(state, 1.2, 2.5)
        assert abs(out.norm_sq - 1) < 1e-10

    def test_rejects_oversized(self):
        with pytest.raises(DomainError):
            rotation_unitary(5000, 0.3, 0.0)


class TestUnitary:
    def test_identity_map(self):
        state = make_cat_ssrc(5, 1.0)
        u = UnitaryMap(6, np.eye(6))
        out = apply_unitary(state, u)
        assert np.array_equal(out.coeffs, state.coeffs)

    def test_rotation_matrix_agrees_with_apply_rotation(self):
        state = make_cat_ssrc(12, 1.5)
        u = rotation_unitary(12, 0.9, 2.0)
        direct = apply_rotation(state, 0.9, 2.0)
        via_u = apply_unitary(state, u)
        assert np.max(np.abs(direct.coeffs - via_u.coeffs)) < 1e-10

    def test_diagonal_phases_keep_moduli(self):
        state = make_from_coeffs([1, 2, 3, 4])
        phases = np.exp(1j * np.array([0.1, 1.0, 2.0, 3.0]))
        u = UnitaryMap(4, np.diag(phases))
        out = apply_unitary(state, u)
        assert np.allclose(np.abs(out.coeffs), np.abs(state.coeffs))

    def test_dimension_mismatch(self):
        with pytest.raises(DomainError):
            apply_unitary(make_fock_ssrc(3, 1), UnitaryMap(3, np.eye(3)))

    def test_nonunitary_rejected(self):
        with pytest.raises(DomainError):
            UnitaryMap(2, np.array([[1.0, 0.1], [0.0, 1.0]]))


class TestMeanPhoton:
    def test_eigenstates(self):
        assert mean_photon_number(make_fock_ssrc(6, 4)) == 4.0

    def test_equal_superposition(self):
        state = make_from_coeffs([1, 0, 0, 0, 1])
        assert abs(mean_photon_number(state) - 2.0) < 1e-14

    def test_invariance_under_global_phase_and_z_phases(self):
        state = make_cat_ssrc(10, 1.2)
        n = state.n_total
        phases = np.exp(-1j * 0.7 * (np.arange(n + 1) - n / 2))
        rotated = apply_unitary(state, UnitaryMap(n + 1, np.diag(phases)))
        assert abs(mean_photon_number(rotated) - mean_photon_number(state)) < 1e-12
        flipped = SsrcState(n, state.coeffs * np.exp(1j * 0.4))
        assert abs(mean_photon_number(flipped) - mean_photon_number(state)) < 1e-12


@settings(max_examples=40, deadline=None)
@given(
    st.lists(
        st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False),
        min_size=1,
        max_size=12,
    ).filter(lambda v: any(abs(c) > 1e-6 for c in v))
)
def test_every_constructed_state_is_normalized(values):
    state = make_from_coeffs(values)
    assert abs(state.norm_sq - 1) <= 1e-12
