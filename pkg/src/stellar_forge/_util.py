"""Low-level numeric helpers: extended-precision log ladders and stable sums.

Log-magnitude ladders are accumulated in ``numpy.longdouble`` (80-bit on
x86-64) so that quantities like ln C(N, n) stay accurate to ~1e-13 relative
even at N = 1e5, where plain float64 cumulative sums would lose ~1e-10.
"""
from __future__ import annotations

import numpy as np

LD = np.longdouble


def log_binomial_ladder(n_total: int) -> np.ndarray:
    """ln C(N, n) for n = 0..N as a longdouble array.

    Uses the telescoping form ln C(N, n) = sum_{i<n} ln((N-i)/(i+1)), summed
    in extended precision.
    """
    if n_total == 0:
        return np.zeros(1, dtype=LD)
    i = np.arange(n_total, dtype=LD)
    steps = np.log((LD(n_total) - i) / (i + 1))
    out = np.empty(n_total + 1, dtype=LD)
    out[0] = 0.0
    np.cumsum(steps, out=out[1:])
    return out


def log_falling_ratio_ladder(n_total: int, count: int) -> np.ndarray:
    """ln( N!/(N-n)! / N^n ) = sum_{i<n} ln(1 - i/N) for n = 0..count.

    This is ln( C(N,n) n! / N^n ), the square of the degree-n coefficient
    correction between the finite-N measure and the Gaussian one.
    """
    if count == 0:
        return np.zeros(1, dtype=LD)
    i = np.arange(count, dtype=LD)
    steps = np.log1p(-i / LD(n_total))
    out = np.empty(count + 1, dtype=LD)
    out[0] = 0.0
    np.cumsum(steps, out=out[1:])
    return out


def log_factorial_ladder(count: int) -> np.ndarray:
    """ln(n!) for n = 0..count in longdouble."""
    if count == 0:
        return np.zeros(1, dtype=LD)
    steps = np.log(np.arange(1, count + 1, dtype=LD))
    out = np.empty(count + 1, dtype=LD)
    out[0] = 0.0
    np.cumsum(steps, out=out[1:])
    return out


def kahan_complex_sum(values: np.ndarray) -> complex:
    """Compensated (Kahan) summation of a 1-D complex array, in index order."""
    s = 0.0 + 0.0j
    c = 0.0 + 0.0j
    for v in values:
        y = v - c
        t = s + y
        c = (t - s) - y
        s = t
    return complex(s)


def normalized(vec: np.ndarray) -> np.ndarray:
    """vec / ||vec||_2 with the norm accumulated by numpy pairwise summation."""
    norm = np.sqrt(np.sum(np.abs(vec) ** 2))
    if norm == 0:
        raise ZeroDivisionError("cannot normalize a zero vector")
    return vec / norm


def readonly(arr: np.ndarray) -> np.ndarray:
    """Return a non-writeable copy of arr (immutability for value types)."""
    out = np.array(arr, copy=True)
    out.setflags(write=False)
    return out
