r"""Majorana polynomials, root constellations, and the sphere picture.

A state sum_n c_n |n>_a |N-n>_b is represented analytically by

    P(u) = sum_n sqrt(C(N,n)) c_n u^n,

whose N roots (counted with multiplicity, including deg P - N of them at
infinity) form the state's constellation.  Work happens in the rescaled
coordinate z = u sqrt(N): evaluation means P(z / sqrt(N)), and all reported
root positions are in z.  On the sphere a root sits at the inverse
stereographic image of its unscaled coordinate u = z / sqrt(N); u = 0 is the
north pole and u at infinity the south pole.

Coefficients q_n = sqrt(C(N,n)) c_n are held as (log magnitude, phase)
pairs, which keeps every operation overflow-free up to N ~ 1e5.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import pi
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from ._util import LD, log_binomial_ladder, readonly
from .errors import DomainError, NonConvergenceError
from .rootfind import RootOptions, RootResult, find_polynomial_roots
from .states import (
    AT_INFINITY,
    ExactCoeffs,
    SphericalPoint,
    SsrcState,
    UnitaryMap,
    apply_unitary,
)

__all__ = [
    "MajoranaPolynomial",
    "RootPoint",
    "Constellation",
    "RootOptions",
    "majorana_coeffs",
    "eval_scaled",
    "find_roots",
    "coeffs_from_roots",
    "stereographic_inverse",
    "fock_roots_closed_form",
    "cat_roots_closed_form",
    "majorana_in_transformed_basis",
]


@dataclass(frozen=True, eq=False)
class MajoranaPolynomial:
    """q_n = sqrt(C(N,n)) c_n in log form; zero_mask marks exact zeros."""

    n_total: int
    log_mag: np.ndarray  # longdouble, -inf at exact zeros
    phase: np.ndarray
    zero_mask: np.ndarray
    exact_coeffs: Optional[ExactCoeffs] = None  # dps -> [q_n] at that precision

    def __post_init__(self):
        if len(self.log_mag) != self.n_total + 1:
            raise DomainError("log_mag must have length n_total + 1")
        object.__setattr__(self, "log_mag", readonly(np.asarray(self.log_mag, dtype=LD)))
        object.__setattr__(self, "phase", readonly(np.asarray(self.phase, dtype=float)))
        object.__setattr__(self, "zero_mask", readonly(np.asarray(self.zero_mask, dtype=bool)))

    @property
    def degree(self) -> int:
        """Largest degree with a nonzero coefficient."""
        nz = np.flatnonzero(~self.zero_mask)
        if len(nz) == 0:
            raise DomainError("zero polynomial")
        return int(nz[-1])

    def coefficient(self, n: int) -> complex:
        """q_n as a complex number (may overflow for extreme N; see log_mag)."""
        if self.zero_mask[n]:
            return 0.0 + 0.0j
        return complex(np.exp(float(self.log_mag[n])) * np.exp(1j * self.phase[n]))

    def scaled_log_mag(self) -> np.ndarray:
        """log |q_n / N^(n/2)|: coefficient magnitudes of z -> P(z/sqrt(N))."""
        n = np.arange(self.n_total + 1, dtype=LD)
        if self.n_total == 0:
            return np.asarray(self.log_mag, dtype=LD)
        return self.log_mag - 0.5 * n * np.log(LD(self.n_total))


@dataclass(frozen=True)
class RootPoint:
    """One constellation star: scaled coordinate, multiplicity, sphere image.

    uncertainty is the engine's absolute positional error estimate; cluster
    summaries of unresolved (ill-conditioned) root groups carry their spread
    here, so windowed analyses can ignore them.
    """

    z: complex
    multiplicity: int
    spherical: SphericalPoint
    uncertainty: float = 0.0


@dataclass(frozen=True, eq=False)
class Constellation:
    """All N roots: finite ones explicitly, the rest at infinity."""

    n_total: int
    roots: Tuple[RootPoint, ...]
    at_infinity_multiplicity: int
    residual: float

    def __post_init__(self):
        total = sum(r.multiplicity for r in self.roots) + self.at_infinity_multiplicity
        if total != self.n_total:
            raise DomainError(
                f"multiplicities sum to {total}, expected n_total={self.n_total}"
            )

    def finite_points(self, expand: bool = False) -> list:
        """Finite root values; with expand=True each root repeats per multiplicity."""
        if expand:
            return [r.z for r in self.roots for _ in range(r.multiplicity)]
        return [r.z for r in self.roots]

    def sphere_points(self) -> list:
        """All sphere images including the at-infinity stars (south pole)."""
        pts = [r.spherical for r in self.roots for _ in range(r.multiplicity)]
        pts.extend([SphericalPoint(pi, 0.0)] * self.at_infinity_multiplicity)
        return pts


def stereographic_inverse(z) -> SphericalPoint:
    """Inverse stereographic projection from the south pole.

    z = 0 maps to the north pole, |z| -> infinity approaches the south pole,
    and the flagged point at infinity is the south pole itself.
    """
    if z is AT_INFINITY:
        return SphericalPoint(pi, 0.0)
    z = complex(z)
    theta = 2.0 * np.arctan(abs(z))
    phi = float(np.angle(z)) % (2 * pi) if z != 0 else 0.0
    if theta == 0.0 or theta == pi:
        phi = 0.0
    return SphericalPoint(min(float(theta), pi), phi)


def _sphere_image(z_scaled: complex, n_total: int) -> SphericalPoint:
    u = z_scaled / np.sqrt(n_total) if n_total > 0 else z_scaled
    return stereographic_inverse(u)


def majorana_coeffs(state: SsrcState) -> MajoranaPolynomial:
    """Coefficients q_n = sqrt(C(N,n)) c_n of the state's polynomial."""
    n_total = state.n_total
    c = state.coeffs
    lb = log_binomial_ladder(n_total)
    mask = c == 0
    mag = np.abs(c)
    with np.errstate(divide="ignore"):
        log_mag = 0.5 * lb + np.log(np.where(mag > 0, mag, 1.0), dtype=LD)
    log_mag[mask] = -np.inf
    phase = np.where(mask, 0.0, np.angle(c))

    exact = None
    if state.exact_coeffs is not None:
        state_exact = state.exact_coeffs

        def exact(dps: int, _N=n_total, _fn=state_exact):
            import mpmath as mp

            with mp.workdps(dps):
                cs = _fn(dps)
                return [mp.sqrt(mp.binomial(_N, n)) * cs[n] for n in range(_N + 1)]

    return MajoranaPolynomial(n_total, log_mag, phase, mask, exact)


def eval_scaled(poly: MajoranaPolynomial, z: complex) -> complex:
    """P(z / sqrt(N)) by exponent-shifted compensated summation.

    Per-term exponents are carried in extended precision and shifted by
    their maximum before exponentiation, so the sum neither overflows nor
    loses the small terms; the compensated accumulation keeps the relative
    error near eps times the usual condition number of the evaluation.
    """
    z = complex(z)
    active = ~poly.zero_mask
    if not active.any():
        raise DomainError("zero polynomial")
    slog = poly.scaled_log_mag()
    if z == 0:
        if poly.zero_mask[0]:
            return 0.0 + 0.0j
        return complex(np.exp(float(slog[0])) * np.exp(1j * poly.phase[0]))
    n = np.arange(poly.n_total + 1, dtype=LD)
    e = slog + n * np.log(LD(abs(z)))
    e = np.where(active, e, -np.inf)
    m = float(np.max(e))
    amps = np.exp(np.asarray(e - m, dtype=float))
    angles = poly.phase + np.arange(poly.n_total + 1, dtype=float) * np.angle(z)
    terms = np.where(active, amps * np.exp(1j * angles), 0.0)
    from ._util import kahan_complex_sum

    total = kahan_complex_sum(terms)
    with np.errstate(over="ignore"):
        return complex(total * np.exp(m))


def _edges_look_underflowed(poly: MajoranaPolynomial) -> bool:
    """True when an edge run of exact zeros sits next to a near-denormal value.

    State amplitudes dive toward the float64 floor before the stored vector
    turns exactly zero only when the genuine profile kept going below the
    representable range, so the trim boundary cannot be trusted.
    """
    lb = np.asarray(log_binomial_ladder(poly.n_total), dtype=float)
    with np.errstate(invalid="ignore"):
        amp_log = np.asarray(poly.log_mag, dtype=float) - 0.5 * lb
    mask = poly.zero_mask
    nz = np.flatnonzero(~mask)
    if len(nz) == 0:
        return False
    lo, hi = int(nz[0]), int(nz[-1])
    floorish = -640.0
    if hi < poly.n_total and amp_log[hi] < floorish:
        return True
    if lo > 0 and amp_log[lo] < floorish:
        return True
    return False


def _scaled_exact_fn(poly: MajoranaPolynomial):
    if poly.exact_coeffs is None:
        return None
    base = poly.exact_coeffs
    n_total = poly.n_total

    def scaled(dps: int, _fn=base, _N=n_total):
        import mpmath as mp

        with mp.workdps(dps):
            qs = _fn(dps)
            if _N == 0:
                return [mp.mpc(q) for q in qs]
            root_n = mp.sqrt(_N)
            return [mp.mpc(qs[n]) / root_n**n for n in range(_N + 1)]

    return scaled


def find_roots(
    poly: MajoranaPolynomial, options: RootOptions = RootOptions()
) -> Constellation:
    """Root constellation of P(z / sqrt(N)) with multiplicities.

    Residuals are componentwise backward errors of the scaled polynomial
    (|P| relative to the largest achievable term magnitude at that point),
    so the tolerance is meaningful for degenerate roots as well.
    """
    n_total = poly.n_total
    if n_total == 0:
        return Constellation(0, (), 0, 0.0)
    slog = np.asarray(poly.scaled_log_mag(), dtype=float)
    result: RootResult = find_polynomial_roots(
        slog,
        poly.phase,
        poly.zero_mask,
        _scaled_exact_fn(poly),
        options,
        trim_suspect=_edges_look_underflowed(poly),
    )
    points = []
    if result.zero_multiplicity > 0:
        points.append(
            RootPoint(0.0 + 0.0j, result.zero_multiplicity, _sphere_image(0.0, n_total))
        )
    for z, mult, est in result.roots:
        points.append(RootPoint(z, mult, _sphere_image(z, n_total), est))
    points.sort(key=lambda r: (abs(r.z), float(np.angle(r.z)) % (2 * pi)))
    constellation = Constellation(
        n_total, tuple(points), result.degree_deficit, result.residual
    )
    if result.residual > options.residual_tol:
        raise NonConvergenceError(
            f"root residual {result.residual:.3e} exceeds tolerance "
            f"{options.residual_tol:.3e}",
            best=constellation,
            residual=result.residual,
        )
    return constellation


def coeffs_from_roots(roots: Sequence[Tuple[Union[complex, object], int]], n_total: int) -> SsrcState:
    """State whose polynomial vanishes exactly on the given root multiset.

    Roots are given in the scaled coordinate (or AT_INFINITY); multiplicities
    must sum to N.  Equivalently this expands the creation-operator product
    with one factor (a^dag - u_j b^dag) per finite root u_j = z_j/sqrt(N) and
    a b^dag factor per root at infinity, then normalizes.  Round trip with
    find_roots(majorana_coeffs(.)) reproduces the multiset.
    """
    mults = [int(m) for _, m in roots]
    if any(m <= 0 for m in mults):
        raise DomainError("multiplicities must be positive")
    if sum(mults) != n_total:
        raise DomainError(f"multiplicities sum to {sum(mults)}, need {n_total}")
    finite = [(complex(z), m) for z, m in roots if z is not AT_INFINITY]
    scale = np.sqrt(n_total) if n_total > 0 else 1.0
    mono = np.array([1.0 + 0.0j])
    for z, m in finite:
        u = z / scale
        for _ in range(m):
            mono = np.convolve(mono, np.array([-u, 1.0 + 0.0j]))
    deg = len(mono) - 1
    q = np.zeros(n_total + 1, dtype=complex)
    q[: deg + 1] = mono
    lb = log_binomial_ladder(n_total)
    with np.errstate(divide="ignore"):
        c = q * np.exp(-0.5 * np.asarray(lb, dtype=float))
    from ._util import normalized

    root_data = tuple((complex(z), int(m)) for z, m in finite)

    def exact(dps: int, _roots=root_data, _N=n_total, _deg=deg):
        import mpmath as mp

        with mp.workdps(dps):
            scale = mp.sqrt(_N) if _N > 0 else mp.mpf(1)
            mono = [mp.mpc(1)]
            for z, m in _roots:
                u = mp.mpc(z) / scale
                for _ in range(m):
                    nxt = [mp.mpc(0)] * (len(mono) + 1)
                    for i, cc in enumerate(mono):
                        nxt[i] += cc * (-u)
                        nxt[i + 1] += cc
                    mono = nxt
            cs = [
                (mono[n] if n < len(mono) else mp.mpc(0)) / mp.sqrt(mp.binomial(_N, n))
                for n in range(_N + 1)
            ]
            norm = mp.sqrt(mp.fsum([abs(v) ** 2 for v in cs]))
            return [v / norm for v in cs]

    return SsrcState(n_total, normalized(c), exact)


def fock_roots_closed_form(n_total: int, w: complex) -> Constellation:
    """Constellation of the spin-coherent state |N>_{w/sqrt(N)}.

    A single N-fold root at z = -N/w; w = 0 puts all N roots at infinity.
    """
    if n_total < 0:
        raise DomainError("n_total must be nonnegative")
    w = complex(w)
    if n_total == 0:
        return Constellation(0, (), 0, 0.0)
    if w == 0:
        return Constellation(n_total, (), n_total, 0.0)
    z = -n_total / w
    point = RootPoint(z, n_total, _sphere_image(z, n_total))
    return Constellation(n_total, (point,), 0, 0.0)


def cat_roots_closed_form(n_total: int, w: complex) -> Constellation:
    """Constellation of the odd cat state: z_k = (i N / w) tan(k pi / N).

    The index k runs over 1..N; entries with a vanishing cosine (k = N/2 for
    even N) are the root at infinity, and duplicates merge into
    multiplicities (none occur for this family).
    """
    if n_total < 1:
        raise DomainError("cat states need n_total >= 1")
    w = complex(w)
    if w == 0:
        raise DomainError("w must be nonzero")
    at_inf = 0
    values: dict = {}
    for k in range(1, n_total + 1):
        if 2 * k == n_total:
            at_inf += 1
            continue
        if k == n_total:
            z = 0.0 + 0.0j
        else:
            z = complex(1j * n_total * np.tan(pi * k / n_total) / w)
        values[z] = values.get(z, 0) + 1
    points = [
        RootPoint(z, m, _sphere_image(z, n_total)) for z, m in values.items()
    ]
    points.sort(key=lambda r: (abs(r.z), float(np.angle(r.z)) % (2 * pi)))
    return Constellation(n_total, tuple(points), at_inf, 0.0)


def majorana_in_transformed_basis(
    state: SsrcState, u: UnitaryMap
) -> MajoranaPolynomial:
    """Polynomial of the state expressed in the U-rotated sector basis.

    Equals majorana_coeffs(U^dag |state>); in particular U|N>_b seen in its
    own basis is the constant polynomial (all roots at infinity).
    """
    if u.dim != state.n_total + 1:
        raise DomainError(
            f"unitary dimension {u.dim} does not match N+1 = {state.n_total + 1}"
        )
    return majorana_coeffs(apply_unitary(state, u.adjoint()))
