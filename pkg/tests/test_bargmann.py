import numpy as np
import pytest

from stellar_forge import (
    CvState,
    DomainError,
    bargmann_coeffs,
    bargmann_roots,
    cat_bargmann_closed,
    coherent_bargmann_closed,
    make_cv_cat,
    stellar_rank_finite,
)
from conftest import assignment_max_distance
from oracles import bargmann_series_mp


class TestCoefficients:
    def test_vacuum(self):
        poly = bargmann_coeffs(CvState(np.array([1.0 + 0j])))
        assert np.array_equal(poly.coeffs, [1.0])

    def test_single_photon(self):
        poly = bargmann_coeffs(CvState(np.array([0, 1.0 + 0j])))
        assert np.allclose(poly.coeffs, [0, 1.0])

    def test_two_photon_weight(self):
        poly = bargmann_coeffs(CvState(np.array([0, 0, 1.0 + 0j])))
        assert np.allclose(poly.coeffs, [0, 0, 1 / np.sqrt(2)])

    def test_gaussian_normalization(self):
        for w in (0.5, 1.5, 2.0):
            poly = bargmann_coeffs(make_cv_cat(w, 40))
            assert abs(poly.gaussian_norm_sq() - 1.0) < 1e-10


class TestStellarRank:
    def test_vacuum_rank_zero(self):
        assert stellar_rank_finite(CvState(np.array([1.0 + 0j]))) == 0

    def test_single_photon(self):
        assert stellar_rank_finite(CvState(np.array([0, 1.0 + 0j]))) == 1

    def test_support_degree(self):
        state = CvState(np.array([0, 1.0, 0, 0, 1.0]) / np.sqrt(2))
        assert stellar_rank_finite(state) == 4

    def test_rank_equals_root_count(self):
        for w in (1.0, 2.0):
            state = make_cv_cat(w, 40)
            roots = bargmann_roots(state)
            assert sum(m for _, m in roots) == stellar_rank_finite(state)


class TestRoots:
    def test_single_photon_origin(self):
        roots = bargmann_roots(CvState(np.array([0, 1.0 + 0j])))
        assert roots == [(0j, 1)]

    def test_constant_no_roots(self):
        assert bargmann_roots(CvState(np.array([1.0 + 0j]))) == []

    def test_constructed_quadratic(self):
        # choose c_k = b_k sqrt(k!) so that B(z) is proportional to z^2 - 1
        b = np.array([-1.0, 0.0, 1.0])
        c = b * np.array([1.0, 1.0, np.sqrt(2.0)])
        state = CvState(c / np.linalg.norm(c))
        roots = bargmann_roots(state)
        assert assignment_max_distance(
            [z for z, m in roots for _ in range(m)], [1.0, -1.0]
        ) < 1e-12

    @pytest.mark.parametrize("w", [1.0, 2.0])
    def test_cat_zero_ladder(self, w):
        state = make_cv_cat(w, 41)
        roots = [z for z, m in bargmann_roots(state) for _ in range(m)]
        for k in (0, 1, 2):
            target = 1j * k * np.pi / w
            assert min(abs(z - target) for z in roots) < 1e-8


class TestClosedForms:
    def test_coherent_vacuum_limit(self):
        assert coherent_bargmann_closed(0.0, 1.7 - 0.3j) == 1.0

    def test_coherent_origin_value(self):
        w = 1.2 - 0.8j
        assert abs(coherent_bargmann_closed(w, 0.0) - np.exp(-abs(w) ** 2 / 2)) < 1e-15

    def test_coherent_series_consistency(self):
        from math import factorial

        w, z = 1.1 + 0.4j, 0.9 - 0.6j
        series = sum(
            np.exp(-abs(w) ** 2 / 2) * (w * z) ** k / factorial(k) for k in range(60)
        )
        assert abs(coherent_bargmann_closed(w, z) - series) < 1e-13

    def test_cat_zeros(self):
        assert cat_bargmann_closed(2.0, 0.0) == 0.0
        assert abs(cat_bargmann_closed(2.0, 1j * np.pi / 2)) < 1e-12

    def test_cat_matches_series(self):
        state = make_cv_cat(2.0, 40)
        for z in (1.0, 0.5 - 0.8j, -1.2 + 0.3j):
            series = bargmann_series_mp(state.coeffs, z)
            assert abs(cat_bargmann_closed(2.0, z) - series) < 1e-8

    def test_cat_series_sup_over_disk(self):
        # sup over |z| <= 3 of |closed - truncated series| for M >= 40
        for w in (1.0, 2.0):
            state = make_cv_cat(w, 40)
            poly = bargmann_coeffs(state)
            worst = 0.0
            for angle in np.linspace(0, 2 * np.pi, 24, endpoint=False):
                for radius in (1.0, 2.0, 3.0):
                    z = radius * np.exp(1j * angle)
                    worst = max(worst, abs(cat_bargmann_closed(w, z) - poly(z)))
            assert worst < 1e-8

    def test_cat_rejects_zero(self):
        with pytest.raises(DomainError):
            cat_bargmann_closed(0.0, 1.0)


class TestTruncationZeroConvergence:
    def test_far_zero_improves_with_cutoff(self):
        # the k=2 zero of the truncated cat sharpens as the cutoff grows
        w = 1.0
        target = 2j * np.pi / w
        errors = []
        for cutoff in (21, 31, 41):
            state = make_cv_cat(w, cutoff)
            if state.support_degree < cutoff:  # doubling may overshoot
                pytest.skip("cutoff grew past request")
            roots = [z for z, m in bargmann_roots(state) for _ in range(m)]
            errors.append(min(abs(z - target) for z in roots))
        assert errors[-1] < errors[0]
        assert errors[-1] < 1e-6
