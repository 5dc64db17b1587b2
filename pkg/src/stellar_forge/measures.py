r"""Normalization integrals, disk masses, tail bounds, and truncation degrees.

The exact identities used throughout come from angular orthogonality: for a
centered disk every cross term integrates to zero, so each degree
contributes independently.  Radially,

    full plane, finite-N measure:  each degree n contributes |c_n|^2 exactly
    (Beta-function reduction), so the total is the state norm;

    Gaussian measure on |z| <= R:  degree n contributes
        C(N,n) |c_n|^2 gamma_lower(n+1, R^2) / N^n,

and the R -> infinity limit replaces the incomplete gamma by n!, giving the
closed-form plane integral sum_n C(N,n) |c_n|^2 n! / N^n.  The mixed factor
C(N,n) n! / N^n = prod_{i<n} (1 - i/N) <= 1 is computed as a log1p ladder in
extended precision; equality holds only for n <= 1, which is why the plane
integral reaches 1 exactly on states supported on {0, 1}.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial, fsum, lgamma
from typing import List, Sequence

import numpy as np
import scipy.integrate
import scipy.special

from ._util import LD, log_binomial_ladder, log_falling_ratio_ladder
from .errors import DomainError, NonConvergenceError
from .majorana import MajoranaPolynomial
from .states import CvState, SsrcState

__all__ = [
    "DiskDomain",
    "NormalizationReport",
    "TruncationReport",
    "ssrc_norm_integral",
    "gaussian_disk_integral",
    "gaussian_plane_integral",
    "plane_integral_rational",
    "cv_disk_mass",
    "stirling_cv_truncation",
    "tail_bound",
    "find_truncation_K",
    "truncate_polynomial",
    "stirling_coeff_error",
]


@dataclass(frozen=True)
class DiskDomain:
    """Centered disk |z| <= radius in the scaled coordinate."""

    radius: float

    def __post_init__(self):
        if not (self.radius > 0 and np.isfinite(self.radius)):
            raise DomainError("disk radius must be positive and finite")


@dataclass(frozen=True)
class NormalizationReport:
    """Results of the normalization split over a disk.

    i_sphere: full-plane integral under the finite-N measure (the state
        norm; 1 for normalized states).
    i_disk / epsilon_disk: Gaussian-measure mass inside the disk and its
        complement to 1 (epsilon_disk = 1 - i_disk by definition).
    i_plane: Gaussian-measure mass over the whole plane.
    """

    i_sphere: float
    i_disk: float
    epsilon_disk: float
    i_plane: float
    method: str
    radius: float


@dataclass(frozen=True)
class TruncationReport:
    """Smallest degree K whose uniform tail on |z| <= R is below eta."""

    truncation_k: int
    eta: float
    radius: float
    tail_value: float
    stirling_error: float


def _sq_moduli(state: SsrcState) -> np.ndarray:
    return np.abs(state.coeffs) ** 2


def ssrc_norm_integral(state: SsrcState, method: str = "exact") -> float:
    """Full-plane integral of |P(z/sqrt(N))|^2 under the finite-N measure.

    Exact mode uses the Beta-function reduction (each degree contributes
    |c_n|^2, cross terms vanish) and so equals the squared norm, scaling
    quadratically for unnormalized input.  Quadrature mode integrates each
    radial profile numerically and must agree to ~1e-8.
    """
    if method == "exact":
        return state.norm_sq
    if method != "quadrature":
        raise DomainError(f"unknown method {method!r}")
    n_total = state.n_total
    sq = _sq_moduli(state)
    total_terms: List[float] = []
    err_bound = 0.0
    for n in range(n_total + 1):
        if sq[n] == 0:
            continue
        log_beta = lgamma(n + 1) + lgamma(n_total + 1 - n) - lgamma(n_total + 2)
        peak = n / (n_total + 2 - n) if n else 0.0
        v_peak = peak / (1.0 + peak)

        def radial(v, _n=n, _lb=log_beta):
            if v <= 0.0 or v >= 1.0:
                return 0.0
            s = v / (1.0 - v)
            return np.exp(
                _n * np.log(s) - (n_total + 2) * np.log1p(s) - _lb
            ) / (1.0 - v) ** 2

        points = sorted({min(max(v_peak, 1e-12), 1 - 1e-12)})
        val, abserr = scipy.integrate.quad(
            radial, 0.0, 1.0, points=points, epsabs=1e-13, epsrel=1e-12, limit=200
        )
        if abserr > 1e-8:
            raise NonConvergenceError(
                f"radial quadrature for degree {n} achieved only {abserr:.2e}",
                best=val,
                residual=abserr,
            )
        total_terms.append(float(sq[n]) * val)
        err_bound += float(sq[n]) * abserr
    return fsum(total_terms)


def gaussian_plane_integral(state: SsrcState) -> float:
    """sum_n C(N,n) |c_n|^2 n! / N^n, the Gaussian mass over the whole plane."""
    fall = log_falling_ratio_ladder(state.n_total, state.n_total)
    weights = np.exp(np.asarray(fall, dtype=float))
    return fsum(float(v) for v in _sq_moduli(state) * weights)


def plane_integral_rational(sq_moduli: Sequence[Fraction], n_total: int) -> Fraction:
    """Exact rational plane integral for exact |c_n|^2 weights.

    Feasible for small N; makes the equality condition (value 1 iff the
    support lies in {0, 1}) decidable without floating-point fuzz.
    """
    if len(sq_moduli) != n_total + 1:
        raise DomainError("need n_total + 1 squared moduli")
    total = Fraction(0)
    for n, p in enumerate(sq_moduli):
        total += Fraction(p) * Fraction(comb(n_total, n) * factorial(n), n_total**n if n else 1)
    return total


def gaussian_disk_integral(state: SsrcState, disk: DiskDomain) -> NormalizationReport:
    """Gaussian-measure mass of |P(z/sqrt(N))|^2 inside a centered disk.

    Per degree: C(N,n) |c_n|^2 gamma_lower(n+1, R^2) / N^n, with the
    regularized incomplete gamma evaluated by scipy's stable switching
    between series and continued fractions.
    """
    n_total = state.n_total
    sq = _sq_moduli(state)
    fall = np.exp(np.asarray(log_falling_ratio_ladder(n_total, n_total), dtype=float))
    reg = scipy.special.gammainc(np.arange(1, n_total + 2, dtype=float), disk.radius**2)
    i_disk = fsum(float(v) for v in sq * fall * reg)
    i_plane = fsum(float(v) for v in sq * fall)
    return NormalizationReport(
        i_sphere=state.norm_sq,
        i_disk=i_disk,
        epsilon_disk=1.0 - i_disk,
        i_plane=i_plane,
        method="exact",
        radius=disk.radius,
    )


def cv_disk_mass(state: CvState, disk: DiskDomain) -> float:
    """Gaussian-measure mass of |B(z)|^2 inside the disk: sum |c_k|^2 P(k+1, R^2)."""
    k = np.arange(len(state.coeffs), dtype=float)
    reg = scipy.special.gammainc(k + 1.0, disk.radius**2)
    return fsum(float(v) for v in np.abs(state.coeffs) ** 2 * reg)


def stirling_cv_truncation(state: SsrcState, truncation_k: int) -> CvState:
    """Fock-space image of the degree-K truncation: amplitudes c_0..c_K, renormalized.

    Replaces each sqrt(C(N,n)/N^n) weight by its large-N limit 1/sqrt(n!),
    which turns the truncated polynomial into a Bargmann expansion with the
    same amplitudes.
    """
    if not 0 <= truncation_k <= state.n_total:
        raise DomainError("truncation degree out of range")
    head = np.array(state.coeffs[: truncation_k + 1], dtype=complex)
    if not np.any(head != 0):
        raise DomainError("truncated state has no support")
    from ._util import normalized

    exact = None
    if state.exact_coeffs is not None:
        base = state.exact_coeffs

        def exact(dps: int, _fn=base, _k=truncation_k):
            import mpmath as mp

            with mp.workdps(dps):
                cs = _fn(dps)[: _k + 1]
                norm = mp.sqrt(mp.fsum([abs(v) ** 2 for v in cs]))
                return [v / norm for v in cs]

    return CvState(normalized(head), exact)


def tail_bound(state: SsrcState, radius: float, truncation_k: int) -> float:
    """sup over |z| <= R of the dropped tail sum_{n>K} |q_n| |z|^n / N^{n/2}.

    Each term grows monotonically with |z|, so the supremum sits on the
    boundary circle and the bound is the plain sum at |z| = R.
    """
    if radius < 0:
        raise DomainError("radius must be nonnegative")
    if not 0 <= truncation_k <= state.n_total:
        raise DomainError("truncation degree out of range")
    return float(_tail_terms(state, radius)[truncation_k + 1 :].sum())


def _tail_terms(state: SsrcState, radius: float) -> np.ndarray:
    """Per-degree boundary magnitudes |q_n| R^n / N^{n/2} as float64."""
    n_total = state.n_total
    lb = log_binomial_ladder(n_total)
    n = np.arange(n_total + 1, dtype=LD)
    mag = np.abs(state.coeffs)
    with np.errstate(divide="ignore"):
        log_terms = 0.5 * lb + np.log(np.where(mag > 0, mag, 1.0), dtype=LD)
        if radius == 0.0:
            log_terms[1:] = -np.inf
        else:
            log_terms += n * (np.log(LD(radius)) - (0.5 * np.log(LD(max(n_total, 1)))))
    log_terms[mag == 0] = -np.inf
    return np.exp(np.asarray(log_terms, dtype=float))


def find_truncation_K(state: SsrcState, radius: float, eta: float) -> TruncationReport:
    """Smallest K with tail_bound(state, R, K) <= eta.

    The tail is nonincreasing in K and empty at K = N, so a valid K always
    exists.
    """
    if eta <= 0:
        raise DomainError("eta must be positive")
    terms = _tail_terms(state, radius)
    suffix = np.concatenate([np.cumsum(terms[::-1])[::-1], [0.0]])
    # suffix[k] = sum_{n >= k} terms[n]; tail(K) = suffix[K+1]
    k = int(np.argmax(suffix[1:] <= eta))
    return TruncationReport(
        truncation_k=k,
        eta=eta,
        radius=radius,
        tail_value=float(suffix[k + 1]),
        stirling_error=stirling_coeff_error(state.n_total, k),
    )


def truncate_polynomial(poly: MajoranaPolynomial, truncation_k: int) -> MajoranaPolynomial:
    """Zero every coefficient above degree K; deliberately not renormalized."""
    if not 0 <= truncation_k <= poly.n_total:
        raise DomainError("truncation degree out of range")
    log_mag = np.array(poly.log_mag, dtype=LD)
    phase = np.array(poly.phase)
    mask = np.array(poly.zero_mask)
    log_mag[truncation_k + 1 :] = -np.inf
    phase[truncation_k + 1 :] = 0.0
    mask[truncation_k + 1 :] = True
    exact = None
    if poly.exact_coeffs is not None:
        base = poly.exact_coeffs

        def exact(dps: int, _fn=base, _k=truncation_k):
            import mpmath as mp

            qs = _fn(dps)
            return [qs[n] if n <= _k else mp.mpc(0) for n in range(len(qs))]

    return MajoranaPolynomial(poly.n_total, log_mag, phase, mask, exact)


def stirling_coeff_error(n_total: int, truncation_k: int) -> float:
    """max_{n <= K} | sqrt(C(N,n) n! / N^n) - 1 |.

    The product under the square root is prod_{i<n}(1 - i/N) <= 1 and
    decreases with n, so the maximum deviation sits at n = K.
    """
    if not 0 <= truncation_k <= n_total:
        raise DomainError("truncation degree out of range")
    if n_total == 0 or truncation_k == 0:
        return 0.0
    fall = log_falling_ratio_ladder(n_total, truncation_k)
    devs = np.abs(np.expm1(np.asarray(0.5 * fall, dtype=float)))
    return float(np.max(devs))
