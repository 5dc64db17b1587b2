import numpy as np
import pytest

from stellar_forge import (
    DiskDomain,
    DomainError,
    cat_convergence_sweep,
    fock_root_escape,
    hurwitz_check,
    make_cat_ssrc,
    make_cv_cat,
    make_fock_ssrc,
    make_spin_coherent,
    match_roots,
    measure_convergence,
    stellar_scaling_report,
)
from oracles import (
    cat_ladder_distance_mp,
    measure_convergence_mp,
    tan_third_order_distance,
)


class TestMatchRoots:
    def test_identical_sets(self):
        roots = [0.3 + 0.1j, -1.0j, 2.0]
        report = match_roots(roots, roots, DiskDomain(5.0))
        assert report.max_distance == 0.0
        assert not report.unmatched_a and not report.unmatched_b

    def test_cat_first_zero_example(self):
        targets = [1j * k * np.pi / 2 for k in range(-1, 2)]  # inside radius 2
        report = match_roots([2.0j], targets, DiskDomain(2.0))
        assert len(report.pairs) == 1
        assert abs(report.max_distance - 0.42920367320510338) < 1e-14
        assert len(report.unmatched_b) == 2

    def test_cardinality_bookkeeping(self):
        report = match_roots([1.0, 2.0], [1.5], DiskDomain(10.0))
        assert len(report.pairs) == 1
        assert len(report.unmatched_a) == 1
        assert not report.unmatched_b

    def test_symmetry_of_distance_multiset(self):
        a = [0.2 + 0.1j, 1.0 - 1.0j, 3.0]
        b = [0.25, 1.1 - 0.9j, 2.5 + 0.2j]
        fwd = match_roots(a, b, DiskDomain(5.0))
        rev = match_roots(b, a, DiskDomain(5.0))
        assert sorted(round(p[2], 12) for p in fwd.pairs) == sorted(
            round(p[2], 12) for p in rev.pairs
        )

    def test_multiplicity_expansion(self):
        report = match_roots([(1.0, 2)], [1.0, 1.0 + 1e-3], DiskDomain(3.0))
        assert len(report.pairs) == 2

    def test_domain_restriction(self):
        report = match_roots([0.5, 10.0], [0.5], DiskDomain(1.0))
        assert len(report.pairs) == 1 and not report.unmatched_a


class TestCatConvergence:
    def test_distances_match_high_precision(self):
        records = cat_convergence_sweep(2.0, [100], 1)
        got = records[0].params["distance_k1"]
        ref = cat_ladder_distance_mp(100, 2.0, 1)
        assert ref == pytest.approx(0.00051697537266077171, abs=1e-15)
        assert got == pytest.approx(ref, rel=1e-6)

    def test_quadratic_decay(self):
        records = cat_convergence_sweep(2.0, [100, 200], 2)
        for k in (1, 2):
            ratio = (
                records[0].params[f"distance_k{k}"]
                / records[1].params[f"distance_k{k}"]
            )
            assert abs(ratio - 4.0) < 0.4

    def test_third_order_oracle_within_5_percent(self):
        records = cat_convergence_sweep(2.0, [50, 100], 3)
        for rec in records:
            for k in (1, 2, 3):
                approx = tan_third_order_distance(rec.n_total, 2.0, k)
                assert rec.params[f"distance_k{k}"] == pytest.approx(approx, rel=0.05)

    def test_far_rung_stays_order_one(self):
        # k growing with N: the map N tan(k pi / N) -> k pi fails by ~21%
        n_total = 64
        k = n_total // 4
        exact = n_total * np.tan(np.pi * k / n_total)
        assert abs(exact / (k * np.pi) - 1) > 0.2

    def test_requires_margin(self):
        with pytest.raises(DomainError):
            cat_convergence_sweep(2.0, [4], 3)


class TestFockEscape:
    def test_closed_forms(self):
        records = fock_root_escape(2.0, [16, 256])
        first, second = records
        assert first.params["root_modulus"] == pytest.approx(8.0, rel=1e-12)
        assert first.params["cv_radius"] == pytest.approx(2.0, rel=1e-12)
        assert second.params["root_modulus"] == pytest.approx(128.0, rel=1e-12)
        assert second.params["cv_radius"] == pytest.approx(4.0, rel=1e-12)

    def test_ratio_scaling(self):
        records = fock_root_escape(2.0, [16, 256, 4096])
        for rec in records:
            expected = rec.n_total**0.75 / 2.0
            assert rec.params["escape_ratio"] == pytest.approx(expected, rel=1e-12)


class TestHurwitz:
    def test_cat_family_distances_shrink(self):
        limit = make_cv_cat(1.0, 32)
        records = hurwitz_check(
            lambda n: make_cat_ssrc(n, 1.0),
            [64, 256],
            limit,
            DiskDomain(4.0),
            1e-8,
        )
        dists = [rec.max_match_distance for rec in records]
        assert dists[1] < dists[0]
        assert dists[1] < 1e-3

    def test_coherent_family_has_no_window_roots(self):
        limit = make_cv_cat(1.0, 32)  # placeholder limit: window must be empty
        records = hurwitz_check(
            lambda n: make_spin_coherent(n, 1.0 / np.sqrt(n)),
            [256],
            limit,
            DiskDomain(2.0),
            1e-8,
        )
        assert records[0].r_star_in_d == 0

    def test_identical_state_both_sides(self):
        # finite support on both sides: the only gap is the coefficient
        # correction sqrt(prod (1 - i/N)) -> 1, so the matched distance is
        # pinned by the Stirling error scale and improves with N
        from stellar_forge import CvState, SsrcState, stirling_coeff_error

        cv = CvState(np.array([0, 0.8, 0, 0.6], dtype=complex))
        distances = []
        for n_total in (400, 40000):
            coeffs = np.zeros(n_total + 1, dtype=complex)
            coeffs[[1, 3]] = [0.8, 0.6]
            state = SsrcState(n_total, coeffs)
            records = hurwitz_check(
                lambda n: state, [n_total], cv, DiskDomain(4.0), 1e-10
            )
            bound = 4.0 * stirling_coeff_error(n_total, 3) * 4.0
            assert records[0].max_match_distance <= bound
            distances.append(records[0].max_match_distance)
        assert distances[1] < 1e-2 * distances[0]


class TestScaling:
    def test_north_pole_trivial(self):
        record = stellar_scaling_report(make_fock_ssrc(16, 0), 2.0, 1e-8)
        assert record.r_star_in_d == 0 and record.truncation_k == 0

    def test_cat_400(self):
        record = stellar_scaling_report(make_cat_ssrc(400, 1.0), 1.0, 1e-6)
        assert record.r_star_in_d <= record.truncation_k
        assert record.ratio < 0.5

    def test_fock_root_outside_window(self):
        record = stellar_scaling_report(
            make_spin_coherent(100, 2.0 / 10.0), 3.0, 1e-8
        )
        assert record.r_star_in_d == 0


class TestMeasureConvergence:
    def test_small_radius_limit(self):
        for n_total in (10, 100, 1000):
            assert measure_convergence(n_total, 1e-6) == pytest.approx(
                1 / n_total, rel=1e-3
            )

    def test_monotone_decade_ladder(self):
        values = [measure_convergence(n, 2.0) for n in (100, 1000, 10**4, 10**5)]
        assert all(a > b for a, b in zip(values, values[1:]))
        assert values[2] <= 5e-3

    @pytest.mark.parametrize("n_total", [100, 10**4])
    def test_against_high_precision_grid(self, n_total):
        mine = measure_convergence(n_total, 2.0)
        ref = measure_convergence_mp(n_total, 2.0)
        assert mine == pytest.approx(ref, rel=0.01)

    def test_domain_requirements(self):
        with pytest.raises(DomainError):
            measure_convergence(4, 2.5)
