r"""Continuum-limit experiments: root trajectories, zero matching, scaling.

The guiding question is how the N-root constellation of a fixed-N state
turns into the zero set of the Bargmann function of its large-N limit.
Only roots inside the Gaussian-localization window |z|^2 << sqrt(N) take
part; the rest either escape to infinity (coherent-like states) or march up
an unbounded ladder (cat-like states).  These sweeps quantify both effects
at finite N.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import pi
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.optimize import linear_sum_assignment

from ._util import LD
from .bargmann import bargmann_roots
from .errors import DomainError, NonConvergenceError
from .majorana import (
    Constellation,
    RootOptions,
    cat_roots_closed_form,
    find_roots,
    majorana_coeffs,
)
from .measures import (
    DiskDomain,
    find_truncation_K,
    gaussian_disk_integral,
    truncate_polynomial,
)
from .states import CvState, SsrcState, make_cat_ssrc, mean_photon_number

__all__ = [
    "RootMatchReport",
    "SweepRecord",
    "ScalingRecord",
    "match_roots",
    "cat_convergence_sweep",
    "fock_root_escape",
    "hurwitz_check",
    "stellar_scaling_report",
    "measure_convergence",
]


@dataclass(frozen=True)
class RootMatchReport:
    """Minimum-cost pairing of two root sets restricted to a disk."""

    pairs: Tuple[Tuple[complex, complex, float], ...]
    unmatched_a: Tuple[complex, ...]
    unmatched_b: Tuple[complex, ...]
    max_distance: float
    domain: DiskDomain


@dataclass(frozen=True)
class SweepRecord:
    """One row of a sweep: everything reported for a single N."""

    n_total: int
    params: Dict[str, float]
    constellation: Optional[Constellation]
    max_match_distance: float
    truncation_k: Optional[int]
    r_star_in_d: Optional[int]
    i_disk: Optional[float]
    epsilon_disk: Optional[float]
    mean_photon: Optional[float]


@dataclass(frozen=True)
class ScalingRecord:
    """Root count of the truncated polynomial inside the disk versus K."""

    r_star_in_d: int
    truncation_k: int
    sqrt_n: float
    ratio: float


RootsLike = Union[Constellation, Sequence]


def _expand(roots: RootsLike) -> List[complex]:
    """Multiplicity-expanded finite root list from any accepted input."""
    if isinstance(roots, Constellation):
        return roots.finite_points(expand=True)
    out: List[complex] = []
    for item in roots:
        if isinstance(item, tuple):
            z, m = item
            out.extend([complex(z)] * int(m))
        else:
            out.append(complex(item))
    return out


def match_roots(a: RootsLike, b: RootsLike, domain: DiskDomain) -> RootMatchReport:
    """Optimal assignment between the root sets restricted to the disk.

    Multiplicity-m roots enter as m coincident points.  The smaller set is
    matched completely (minimum total distance); leftovers of the larger
    set are reported unmatched.  Roots at infinity never lie in the disk.
    """
    za = [z for z in _expand(a) if abs(z) <= domain.radius]
    zb = [z for z in _expand(b) if abs(z) <= domain.radius]
    key = lambda z: (abs(z), float(np.angle(z)) % (2 * pi))
    za.sort(key=key)
    zb.sort(key=key)
    if not za or not zb:
        return RootMatchReport(
            (), tuple(za), tuple(zb), 0.0, domain
        )
    cost = np.array([[abs(x - y) for y in zb] for x in za])
    rows, cols = linear_sum_assignment(cost)
    pairs = tuple(
        (za[i], zb[j], float(cost[i, j])) for i, j in zip(rows, cols)
    )
    used_a = set(rows)
    used_b = set(cols)
    unmatched_a = tuple(z for i, z in enumerate(za) if i not in used_a)
    unmatched_b = tuple(z for j, z in enumerate(zb) if j not in used_b)
    max_distance = max((p[2] for p in pairs), default=0.0)
    return RootMatchReport(pairs, unmatched_a, unmatched_b, max_distance, domain)


_SWEEP_RADIUS = 2.0
_SWEEP_ETA = 1e-6


def _common_scalars(state: SsrcState, constellation: Optional[Constellation]):
    """The shared sweep columns: K, r_star in the window, disk masses."""
    rep = find_truncation_K(state, _SWEEP_RADIUS, _SWEEP_ETA)
    poly_t = truncate_polynomial(majorana_coeffs(state), rep.truncation_k)
    con_t = find_roots(poly_t)
    r_star = sum(
        r.multiplicity for r in con_t.roots if abs(r.z) <= _SWEEP_RADIUS
    )
    norm = gaussian_disk_integral(state, DiskDomain(_SWEEP_RADIUS))
    return rep.truncation_k, r_star, norm.i_disk, norm.epsilon_disk


def cat_convergence_sweep(
    w: complex, n_list: Sequence[int], k_max: int
) -> List[SweepRecord]:
    """Distance of the first k_max ladder roots from their limits i k pi / w.

    For each N the constellation is computed with the root finder in plain
    double precision and cross-checked against the closed form inside the
    matching window; the recorded distances then measure the finite-N ladder
    against the limiting zeros, which shrink like (k pi)^3 / (3 N^2 |w|).
    """
    w = complex(w)
    if w == 0:
        raise DomainError("w must be nonzero")
    if k_max < 1:
        raise DomainError("k_max must be >= 1")
    records = []
    for n_total in sorted(n_list):
        if n_total < 2 * k_max:
            raise DomainError(f"need N >= 2*k_max, got N={n_total}")
        state = make_cat_ssrc(n_total, w)
        closed = cat_roots_closed_form(n_total, w)
        # window boundary: halfway (geometrically) between rungs k_max, k_max+1
        r_in = n_total * np.tan(pi * k_max / n_total) / abs(w)
        r_out = n_total * np.tan(pi * (k_max + 1) / n_total) / abs(w)
        window = DiskDomain(float(np.sqrt(r_in * r_out)))
        opts = RootOptions(precision="double", residual_tol=1.0)
        found = find_roots(majorana_coeffs(state), opts)
        # keep only sharply located roots: far outside the window the ladder
        # is too ill conditioned for float64 and its unresolved cluster
        # summaries must not leak into the window
        sharp = [
            (r.z, r.multiplicity)
            for r in found.roots
            if r.uncertainty <= 1e-8 * (1.0 + abs(r.z))
        ]
        check = match_roots(sharp, closed, window)
        if check.unmatched_a or check.unmatched_b or check.max_distance > 1e-9 * r_in:
            raise NonConvergenceError(
                f"finder disagrees with the closed form at N={n_total}",
                best=check,
                residual=check.max_distance,
            )
        targets = [1j * k * pi / w for k in range(1, k_max + 1)]
        report = match_roots(sharp, targets, window)
        params: Dict[str, float] = {"w_re": w.real, "w_im": w.imag, "k_max": k_max}
        for k, target in enumerate(targets, start=1):
            dist = min(
                (p[2] for p in report.pairs if p[1] == target), default=np.nan
            )
            params[f"distance_k{k}"] = dist
        k_trunc, r_star, i_disk, eps_disk = _common_scalars(state, found)
        records.append(
            SweepRecord(
                n_total=n_total,
                params=params,
                constellation=found,
                max_match_distance=report.max_distance,
                truncation_k=k_trunc,
                r_star_in_d=r_star,
                i_disk=i_disk,
                epsilon_disk=eps_disk,
                mean_photon=mean_photon_number(state),
            )
        )
    return records


def fock_root_escape(w: complex, n_list: Sequence[int]) -> List[SweepRecord]:
    """Root modulus N/|w| against the localization radius N^(1/4).

    The single N-fold root escapes the window at the rate N^(3/4)/|w|, which
    is how coherent-state zeros end up at infinity in the limit.
    """
    w = complex(w)
    if w == 0:
        raise DomainError("w must be nonzero")
    from .majorana import fock_roots_closed_form
    from .states import make_spin_coherent

    records = []
    for n_total in sorted(n_list):
        closed = fock_roots_closed_form(n_total, w)
        state = make_spin_coherent(n_total, w / np.sqrt(n_total))
        modulus = n_total / abs(w)
        cv_radius = n_total**0.25
        params = {
            "w_re": w.real,
            "w_im": w.imag,
            "root_modulus": modulus,
            "cv_radius": cv_radius,
            "escape_ratio": modulus / cv_radius,
        }
        k_trunc, r_star, i_disk, eps_disk = _common_scalars(state, closed)
        records.append(
            SweepRecord(
                n_total=n_total,
                params=params,
                constellation=closed,
                max_match_distance=0.0,
                truncation_k=k_trunc,
                r_star_in_d=r_star,
                i_disk=i_disk,
                epsilon_disk=eps_disk,
                mean_photon=mean_photon_number(state),
            )
        )
    return records


def hurwitz_check(
    family: Callable[[int], SsrcState],
    n_list: Sequence[int],
    cv_limit: CvState,
    domain: DiskDomain,
    eta: float,
) -> List[SweepRecord]:
    """Zeros of the truncated polynomials against the limit's Bargmann zeros.

    For each N the truncation degree K comes from the uniform tail bound at
    the disk radius; the truncated polynomial's roots inside the disk are
    matched to the Bargmann zeros of the limit state.  The maximal matched
    distance should fall as N grows.
    """
    limit_zeros = [
        z for z, m in bargmann_roots(cv_limit) for _ in range(m)
    ]
    records = []
    for n_total in sorted(n_list):
        state = family(n_total)
        rep = find_truncation_K(state, domain.radius, eta)
        poly_t = truncate_polynomial(majorana_coeffs(state), rep.truncation_k)
        con = find_roots(poly_t)
        report = match_roots(con, limit_zeros, domain)
        r_star = sum(r.multiplicity for r in con.roots if abs(r.z) <= domain.radius)
        norm = gaussian_disk_integral(state, domain)
        records.append(
            SweepRecord(
                n_total=n_total,
                params={"radius": domain.radius, "eta": eta},
                constellation=con,
                max_match_distance=report.max_distance,
                truncation_k=rep.truncation_k,
                r_star_in_d=r_star,
                i_disk=norm.i_disk,
                epsilon_disk=norm.epsilon_disk,
                mean_photon=mean_photon_number(state),
            )
        )
    return records


def stellar_scaling_report(
    state: SsrcState, radius: float, eta: float
) -> ScalingRecord:
    """Root count of the truncation inside the disk; never exceeds K.

    The truncated polynomial has degree at most K, so at most K zeros exist
    anywhere; the record also exposes K / sqrt(N).
    """
    rep = find_truncation_K(state, radius, eta)
    poly_t = truncate_polynomial(majorana_coeffs(state), rep.truncation_k)
    con = find_roots(poly_t)
    r_star = sum(r.multiplicity for r in con.roots if abs(r.z) <= radius)
    if r_star > rep.truncation_k:
        raise NonConvergenceError(
            "truncated root count exceeded the truncation degree",
            best=con,
            residual=float(r_star - rep.truncation_k),
        )
    sqrt_n = float(np.sqrt(state.n_total)) if state.n_total else 0.0
    ratio = rep.truncation_k / sqrt_n if sqrt_n else 0.0
    return ScalingRecord(
        r_star_in_d=r_star,
        truncation_k=rep.truncation_k,
        sqrt_n=sqrt_n,
        ratio=ratio,
    )


def measure_convergence(n_total: int, radius: float) -> float:
    """sup over |z| <= R of |(1 + 1/N)(1 + |z|^2/N)^-(N+2) e^{|z|^2} - 1|.

    The expression is radial; it is evaluated on a fixed 513-point grid in
    t = |z|^2.  The value at t = 0 is exactly 1/N, and for R^2 << N the
    supremum decays like max(1, |R^2/2 - 2| R^2 / 2)/N.
    """
    if n_total < 1:
        raise DomainError("n_total must be positive")
    if not radius >= 0:
        raise DomainError("radius must be nonnegative")
    if radius**2 >= n_total:
        raise DomainError("requires R^2 < N")
    t = np.linspace(0.0, radius**2, 513, dtype=LD)
    n = LD(n_total)
    log_vals = np.log1p(1.0 / n) + t - (n + 2) * np.log1p(t / n)
    devs = np.abs(np.expm1(np.asarray(log_vals, dtype=float)))
    return float(np.max(devs))
