r"""Bargmann representation of finite-support states and the stellar rank.

A single-mode state sum_k c_k |k> has the entire representative

    B(z) = sum_k c_k z^k / sqrt(k!),

normalized so that (1/pi) int |B(z)|^2 exp(-|z|^2) d^2z = 1.  For finite
support B is a polynomial whose degree equals the largest populated Fock
index, so the number of zeros counted with multiplicity (the stellar rank)
is that support degree.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from ._util import LD, log_factorial_ladder, readonly
from .errors import DomainError
from .majorana import RootOptions
from .rootfind import find_polynomial_roots
from .states import CvState

__all__ = [
    "BargmannPolynomial",
    "bargmann_coeffs",
    "stellar_rank_finite",
    "bargmann_roots",
    "coherent_bargmann_closed",
    "cat_bargmann_closed",
]


@dataclass(frozen=True, eq=False)
class BargmannPolynomial:
    """Coefficients b_k = c_k / sqrt(k!) of the Bargmann polynomial."""

    coeffs: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.coeffs, dtype=complex)
        if arr.ndim != 1 or len(arr) == 0:
            raise DomainError("coeffs must be a nonempty 1-D vector")
        object.__setattr__(self, "coeffs", readonly(arr))

    def __call__(self, z: complex) -> complex:
        """Evaluate B(z) by Horner's rule."""
        acc = 0.0 + 0.0j
        for b in self.coeffs[::-1]:
            acc = acc * z + b
        return complex(acc)

    def gaussian_norm_sq(self) -> float:
        """sum_k |b_k|^2 k!, the squared norm under the Gaussian measure."""
        lf = log_factorial_ladder(len(self.coeffs) - 1)
        mag = np.abs(self.coeffs)
        with np.errstate(divide="ignore"):
            terms = np.where(
                mag > 0,
                np.exp(2 * np.log(np.where(mag > 0, mag, 1.0), dtype=LD) + lf),
                0.0,
            )
        return float(np.sum(np.asarray(terms, dtype=float)))


def bargmann_coeffs(state: CvState) -> BargmannPolynomial:
    """b_k = c_k / sqrt(k!).

    Useful directly for support up to k ~ 170; beyond that sqrt(k!)
    overflows float64 and the root routines below, which work with
    log-magnitudes, remain the reliable path.
    """
    k_max = len(state.coeffs) - 1
    lf = log_factorial_ladder(k_max)
    scale = np.exp(np.asarray(-0.5 * lf, dtype=float))
    return BargmannPolynomial(state.coeffs * scale)


def stellar_rank_finite(state: CvState) -> int:
    """Zeros of B counted with multiplicity = polynomial degree = support degree."""
    return state.support_degree


def _bargmann_exact_fn(state: CvState, top: int):
    if state.exact_coeffs is None:
        return None
    base = state.exact_coeffs

    def exact(dps: int, _fn=base, _top=top):
        import mpmath as mp

        with mp.workdps(dps):
            cs = _fn(dps)
            return [cs[k] / mp.sqrt(mp.factorial(k)) for k in range(_top + 1)]

    return exact


def bargmann_roots(
    state: CvState, options: RootOptions = RootOptions()
) -> List[Tuple[complex, int]]:
    """All zeros of B(z) with multiplicities; their count is the stellar rank.

    No magnitude-based trimming is applied: the high-order coefficients of a
    truncated state are genuinely tiny (c_k / sqrt(k!)) yet carry the far
    zeros, so only exact zeros may shorten the polynomial.
    """
    if state.support_degree < 1:
        return []
    top = state.support_degree
    c = state.coeffs[: top + 1]
    lf = log_factorial_ladder(top)
    mask = c == 0
    mag = np.abs(c)
    with np.errstate(divide="ignore"):
        log_mag = np.log(np.where(mag > 0, mag, 1.0), dtype=LD) - 0.5 * lf
    log_mag = np.asarray(log_mag, dtype=float)
    log_mag[mask] = -np.inf
    phase = np.where(mask, 0.0, np.angle(c))
    if options.zero_trim_rel != 0.0:
        options = RootOptions(
            residual_tol=options.residual_tol,
            cluster_tol=options.cluster_tol,
            max_iterations=options.max_iterations,
            zero_trim_rel=0.0,
            precision=options.precision,
            target_rel_error=options.target_rel_error,
        )
    result = find_polynomial_roots(
        log_mag, phase, mask, _bargmann_exact_fn(state, top), options
    )
    out: List[Tuple[complex, int]] = []
    if result.zero_multiplicity:
        out.append((0.0 + 0.0j, result.zero_multiplicity))
    out.extend((z, m) for z, m, _ in result.roots)
    out.sort(key=lambda rm: (abs(rm[0]), float(np.angle(rm[0])) % (2 * np.pi)))
    return out


def coherent_bargmann_closed(w: complex, z: complex) -> complex:
    """B(z) of the coherent state |w>: exp(w z - |w|^2 / 2).

    This is the holomorphic, Gaussian-measure-normalized form; the variant
    exp(w z) exp(-|z|^2 / 2) seen in places is not analytic in z and does
    not satisfy the normalization integral.
    """
    w = complex(w)
    z = complex(z)
    return complex(np.exp(w * z - abs(w) ** 2 / 2.0))


def cat_bargmann_closed(w: complex, z: complex) -> complex:
    """B(z) of the odd cat state, vanishing exactly at z = i k pi / w.

    Equals 2 N_c sinh(w z) exp(-|w|^2/2) with N_c = (2 (1 - e^{-2|w|^2}))^{-1/2},
    the odd-superposition normalization; equivalently
    -2i N_c exp(-|w|^2/2) sin(i w z).
    """
    w = complex(w)
    if w == 0:
        raise DomainError("w must be nonzero")
    z = complex(z)
    denom = -np.expm1(-2.0 * abs(w) ** 2)  # 1 - e^{-2|w|^2}, accurately
    norm = 1.0 / np.sqrt(2.0 * denom)
    return complex(2.0 * norm * np.exp(-abs(w) ** 2 / 2.0) * np.sinh(w * z))
