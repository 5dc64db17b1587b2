"""Independent high-precision reference computations used by the tests.

Everything here recomputes target quantities from first principles with
mpmath (50 digits unless noted) or exact rational arithmetic, staying off
the library's own code paths.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

import mpmath as mp
import numpy as np


def plane_integral_mp(coeffs, n_total: int, dps: int = 50) -> float:
    """Brute-force sum C(N,n)|c_n|^2 n!/N^n at high precision."""
    with mp.workdps(dps):
        total = mp.mpf(0)
        for n, c in enumerate(coeffs):
            total += (
                mp.binomial(n_total, n)
                * (mp.mpf(abs(c)) ** 2)
                * mp.factorial(n)
                / mp.mpf(n_total) ** n
            )
        return float(total)


def plane_integral_fraction(sq_moduli, n_total: int) -> Fraction:
    """Exact rational version for exact squared moduli."""
    total = Fraction(0)
    for n, p in enumerate(sq_moduli):
        total += Fraction(p) * Fraction(
            comb(n_total, n) * factorial(n), n_total**n if n else 1
        )
    return total


def tail_bound_mp(coeffs, n_total: int, radius, k_trunc: int, dps: int = 50) -> float:
    """Brute-force tail sum_{n>K} sqrt(C(N,n)) |c_n| R^n / N^{n/2}."""
    with mp.workdps(dps):
        total = mp.mpf(0)
        for n in range(k_trunc + 1, n_total + 1):
            total += (
                mp.sqrt(mp.binomial(n_total, n))
                * mp.mpf(abs(coeffs[n]))
                * mp.mpf(radius) ** n
                / mp.mpf(n_total) ** (mp.mpf(n) / 2)
            )
        return float(total)


def measure_convergence_mp(n_total: int, radius: float, points: int = 513, dps: int = 50) -> float:
    """sup on the same radial grid of the finite-N/Gaussian measure ratio - 1."""
    with mp.workdps(dps):
        worst = mp.mpf(0)
        r2 = mp.mpf(radius) ** 2
        n = mp.mpf(n_total)
        for i in range(points):
            t = r2 * i / (points - 1)
            value = abs((1 + 1 / n) * mp.e**t / (1 + t / n) ** (n_total + 2) - 1)
            worst = max(worst, value)
        return float(worst)


def cat_ladder_distance_mp(n_total: int, w: complex, k: int, dps: int = 40) -> float:
    """|i N tan(k pi / N)/w - i k pi / w| at high precision."""
    with mp.workdps(dps):
        wm = mp.mpc(w)
        return float(
            abs(1j * n_total * mp.tan(mp.pi * k / n_total) / wm - 1j * k * mp.pi / wm)
        )


def tan_third_order_distance(n_total: int, w: complex, k: int) -> float:
    """Leading tan-expansion term (k pi)^3 / (3 N^2 |w|)."""
    return float((k * np.pi) ** 3 / (3 * n_total**2 * abs(w)))


def spin_coherent_coeffs_mp(n_total: int, x: complex, dps: int = 50):
    """Reference spin-coherent amplitudes at high precision."""
    with mp.workdps(dps):
        xs = mp.mpc(x)
        raw = [mp.sqrt(mp.binomial(n_total, n)) * xs**n for n in range(n_total + 1)]
        norm = mp.sqrt(mp.fsum([abs(v) ** 2 for v in raw]))
        return [complex(v / norm) for v in raw]


def stirling_error_mp(n_total: int, k_trunc: int, dps: int = 50) -> float:
    """max_n |sqrt(prod_{i<n}(1 - i/N)) - 1| by direct product."""
    with mp.workdps(dps):
        worst = mp.mpf(0)
        prod = mp.mpf(1)
        for n in range(k_trunc + 1):
            if n > 0:
                prod *= 1 - mp.mpf(n - 1) / n_total
            worst = max(worst, abs(mp.sqrt(prod) - 1))
        return float(worst)


def bargmann_series_mp(coeffs, z: complex, dps: int = 50) -> complex:
    """sum_k c_k z^k / sqrt(k!) at high precision."""
    with mp.workdps(dps):
        total = mp.mpc(0)
        zz = mp.mpc(z)
        for k, c in enumerate(coeffs):
            total += mp.mpc(c) * zz**k / mp.sqrt(mp.factorial(k))
        return complex(total)
