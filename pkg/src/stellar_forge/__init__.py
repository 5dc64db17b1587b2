"""stellar-forge: fixed-photon-number states, Majorana constellations, and
their continuum (Bargmann / stellar-rank) limit."""

from .bargmann import (
    BargmannPolynomial,
    bargmann_coeffs,
    bargmann_roots,
    cat_bargmann_closed,
    coherent_bargmann_closed,
    stellar_rank_finite,
)
from .convergence import (
    RootMatchReport,
    ScalingRecord,
    SweepRecord,
    cat_convergence_sweep,
    fock_root_escape,
    hurwitz_check,
    match_roots,
    measure_convergence,
    stellar_scaling_report,
)
from .entanglement import WitnessVerdict, is_particle_separable, stellar_witness
from .errors import DomainError, NonConvergenceError, StellarForgeError
from .majorana import (
    Constellation,
    MajoranaPolynomial,
    RootPoint,
    cat_roots_closed_form,
    coeffs_from_roots,
    eval_scaled,
    find_roots,
    fock_roots_closed_form,
    majorana_coeffs,
    majorana_in_transformed_basis,
    stereographic_inverse,
)
from .measures import (
    DiskDomain,
    NormalizationReport,
    TruncationReport,
    cv_disk_mass,
    find_truncation_K,
    gaussian_disk_integral,
    gaussian_plane_integral,
    plane_integral_rational,
    ssrc_norm_integral,
    stirling_cv_truncation,
    stirling_coeff_error,
    tail_bound,
    truncate_polynomial,
)
from .rootfind import RootOptions, RootResult, find_polynomial_roots
from .states import (
    AT_INFINITY,
    CvState,
    SphericalPoint,
    SsrcState,
    UnitaryMap,
    apply_rotation,
    apply_unitary,
    chordal_distance,
    make_cat_ssrc,
    make_cv_cat,
    make_from_coeffs,
    make_fock_ssrc,
    make_spin_coherent,
    mean_photon_number,
    rotation_unitary,
)

__version__ = "0.1.0"

__all__ = [
    "AT_INFINITY",
    "BargmannPolynomial",
    "Constellation",
    "CvState",
    "DiskDomain",
    "DomainError",
    "MajoranaPolynomial",
    "NonConvergenceError",
    "NormalizationReport",
    "RootMatchReport",
    "RootOptions",
    "RootPoint",
    "RootResult",
    "ScalingRecord",
    "SphericalPoint",
    "SsrcState",
    "StellarForgeError",
    "SweepRecord",
    "TruncationReport",
    "UnitaryMap",
    "WitnessVerdict",
    "apply_rotation",
    "apply_unitary",
    "bargmann_coeffs",
    "bargmann_roots",
    "cat_bargmann_closed",
    "cat_convergence_sweep",
    "cat_roots_closed_form",
    "chordal_distance",
    "coeffs_from_roots",
    "coherent_bargmann_closed",
    "cv_disk_mass",
    "eval_scaled",
    "find_polynomial_roots",
    "find_roots",
    "find_truncation_K",
    "fock_root_escape",
    "fock_roots_closed_form",
    "gaussian_disk_integral",
    "gaussian_plane_integral",
    "hurwitz_check",
    "is_particle_separable",
    "majorana_coeffs",
    "majorana_in_transformed_basis",
    "make_cat_ssrc",
    "make_cv_cat",
    "make_from_coeffs",
    "make_fock_ssrc",
    "make_spin_coherent",
    "match_roots",
    "mean_photon_number",
    "measure_convergence",
    "plane_integral_rational",
    "rotation_unitary",
    "ssrc_norm_integral",
    "stellar_rank_finite",
    "stellar_scaling_report",
    "stellar_witness",
    "stereographic_inverse",
    "stirling_coeff_error",
    "stirling_cv_truncation",
    "tail_bound",
    "truncate_polynomial",
]
