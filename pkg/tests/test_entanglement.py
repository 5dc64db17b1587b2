import numpy as np
import pytest

from stellar_forge import (
    AT_INFINITY,
    CvState,
    coeffs_from_roots,
    is_particle_separable,
    make_cat_ssrc,
    make_cv_cat,
    make_fock_ssrc,
    make_spin_coherent,
    stellar_witness,
)


class TestSeparability:
    def test_spin_coherent_grid(self):
        for n_total in (1, 4, 16, 64):
            for x in (0.0, 0.3 + 0.1j, 2.0, -4.9j, AT_INFINITY):
                verdict = is_particle_separable(make_spin_coherent(n_total, x))
                assert verdict.verdict == "separable", (n_total, x)
                assert verdict.evidence == "constellation-degenerate"
                assert verdict.numeric <= 1e-6

    def test_cat_entangled(self):
        verdict = is_particle_separable(make_cat_ssrc(4, 2.0))
        assert verdict.verdict == "entangled"
        assert verdict.evidence == "constellation-spread"
        assert verdict.numeric > 1.0  # north pole vs south pole stars

    def test_middle_fock_entangled(self):
        verdict = is_particle_separable(make_fock_ssrc(5, 2))
        assert verdict.verdict == "entangled"
        assert verdict.numeric == pytest.approx(2.0, abs=1e-9)  # antipodal clusters

    def test_two_cluster_states(self, rng):
        for _ in range(5):
            n_total = int(rng.integers(6, 30))
            m1 = int(rng.integers(1, n_total))
            z1 = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
            z2 = z1 + 4.0 + 4.0j
            state = coeffs_from_roots([(z1, m1), (z2, n_total - m1)], n_total)
            verdict = is_particle_separable(state)
            assert verdict.verdict == "entangled"

    def test_trivial_single_boson(self):
        verdict = is_particle_separable(make_fock_ssrc(1, 1))
        assert verdict.verdict == "separable"

    def test_tolerance_knob(self):
        # two stars a tiny angular distance apart flip with the tolerance
        state = coeffs_from_roots([(1.0, 1), (1.0 + 1e-4j, 1)], 2)
        strict = is_particle_separable(state, tol=1e-7)
        loose = is_particle_separable(state, tol=1e-1)
        assert strict.verdict == "entangled"
        assert loose.verdict == "separable"


class TestStellarWitness:
    def test_single_photon(self):
        verdict = stellar_witness(CvState(np.array([0, 1.0 + 0j])))
        assert verdict.verdict == "entangled"
        assert verdict.evidence == "rank-positive"
        assert verdict.numeric == 1.0

    def test_vacuum_inconclusive(self):
        verdict = stellar_witness(CvState(np.array([1.0 + 0j])))
        assert verdict.verdict == "inconclusive"
        assert verdict.evidence == "rank-zero"

    def test_truncated_cat(self):
        verdict = stellar_witness(make_cv_cat(2.0, 40))
        assert verdict.verdict == "entangled"
        assert verdict.numeric >= 30

    def test_never_separable(self, rng):
        for _ in range(10):
            size = int(rng.integers(1, 12))
            vec = rng.normal(size=size) + 1j * rng.normal(size=size)
            state = CvState(vec / np.linalg.norm(vec))
            assert stellar_witness(state).verdict != "separable"

    def test_consistency_with_fixed_n_decision(self):
        # families whose limit carries rank also test entangled at fixed N
        cv_verdict = stellar_witness(make_cv_cat(1.0, 31))
        fixed_verdict = is_particle_separable(make_cat_ssrc(64, 1.0))
        assert cv_verdict.verdict == "entangled"
        assert fixed_verdict.verdict == "entangled"
