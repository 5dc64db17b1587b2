r"""Two-mode fixed-total-photon-number states and finite Fock-support states.

A state with total photon number N over modes a, b is stored as the
coefficient vector c_0..c_N over the basis kets |n>_a |N-n>_b.  The
particle-separable members of this family are the spin-coherent states

    |N>_x \propto (x a^\dag + b^\dag)^N |vac>,      x = e^{i phi} tan(theta/2),

labeled by the stereographic coordinate x of a Bloch-sphere point; x = 0 is
the north pole |N>_b and the flagged point at infinity is the south pole
|N>_a.

Constructors always return unit-norm states.  Building an instance directly
through the dataclass skips normalization, which is occasionally useful for
bilinearity checks; every operation documents how it scales.

Constructors whose coefficients are exactly determined by their arguments
also attach an ``exact_coeffs`` provider, a callable ``dps -> list[mpmath
mpc]`` reproducing the coefficients at any requested precision.  The root
finder uses it to escape the double-precision conditioning floor.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass, field
from math import pi
from typing import Callable, Optional

import numpy as np
import scipy.linalg

from ._util import log_binomial_ladder, normalized, readonly
from .errors import DomainError, NonConvergenceError

NORM_TOL = 1e-12
UNITARY_TOL = 1e-10
ROTATION_MAX_N = 2048


class _PointAtInfinity:
    """Flag for the south pole: spin-coherent label of |N>_a, or a root there."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "AT_INFINITY"


AT_INFINITY = _PointAtInfinity()

ExactCoeffs = Callable[[int], list]


@dataclass(frozen=True)
class SphericalPoint:
    """A point (theta, phi) on the unit sphere, theta in [0, pi], phi in [0, 2 pi).

    phi is stored as 0 at the poles, where it is undefined.
    """

    theta: float
    phi: float

    def __post_init__(self):
        if not (0.0 <= self.theta <= pi):
            raise DomainError(f"theta must lie in [0, pi], got {self.theta}")
        if not (0.0 <= self.phi < 2 * pi):
            raise DomainError(f"phi must lie in [0, 2*pi), got {self.phi}")

    def unit_vector(self) -> np.ndarray:
        """Cartesian unit vector (x, y, z) with theta measured from +z."""
        st = np.sin(self.theta)
        return np.array([st * np.cos(self.phi), st * np.sin(self.phi), np.cos(self.theta)])


def chordal_distance(p: SphericalPoint, q: SphericalPoint) -> float:
    """Euclidean distance between the two unit vectors (range [0, 2])."""
    return float(np.linalg.norm(p.unit_vector() - q.unit_vector()))


@dataclass(frozen=True, eq=False)
class SsrcState:
    """Fixed-N two-mode state: coeffs[n] multiplies |n>_a |N-n>_b."""

    n_total: int
    coeffs: np.ndarray
    exact_coeffs: Optional[ExactCoeffs] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.n_total < 0:
            raise DomainError("n_total must be nonnegative")
        arr = np.asarray(self.coeffs, dtype=complex)
        if arr.ndim != 1 or len(arr) != self.n_total + 1:
            raise DomainError(
                f"need {self.n_total + 1} coefficients for N={self.n_total}, got shape {arr.shape}"
            )
        if not np.all(np.isfinite(arr.view(float))):
            raise DomainError("coefficients must be finite")
        object.__setattr__(self, "coeffs", readonly(arr))

    @property
    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.coeffs) ** 2))

    def is_normalized(self, tol: float = NORM_TOL) -> bool:
        return abs(self.norm_sq - 1.0) <= tol

    def normalized(self) -> "SsrcState":
        return SsrcState(self.n_total, normalized(self.coeffs), self.exact_coeffs)


@dataclass(frozen=True, eq=False)
class CvState:
    """Finite-support single-mode state: coeffs[k] multiplies |k>."""

    coeffs: np.ndarray
    exact_coeffs: Optional[ExactCoeffs] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        arr = np.asarray(self.coeffs, dtype=complex)
        if arr.ndim != 1 or len(arr) == 0:
            raise DomainError("coeffs must be a nonempty 1-D vector")
        if not np.all(np.isfinite(arr.view(float))):
            raise DomainError("coefficients must be finite")
        if not np.any(arr != 0):
            raise DomainError("coeffs must not all vanish")
        object.__setattr__(self, "coeffs", readonly(arr))

    @property
    def support_degree(self) -> int:
        """Largest Fock index with a nonzero coefficient."""
        return int(np.max(np.nonzero(self.coeffs)[0]))

    @property
    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.coeffs) ** 2))

    def is_normalized(self, tol: float = NORM_TOL) -> bool:
        return abs(self.norm_sq - 1.0) <= tol


@dataclass(frozen=True, eq=False)
class UnitaryMap:
    """A unitary on the (N+1)-dimensional fixed-N sector."""

    dim: int
    entries: np.ndarray

    def __post_init__(self):
        mat = np.asarray(self.entries, dtype=complex)
        if mat.shape != (self.dim, self.dim):
            raise DomainError(f"entries must be {self.dim}x{self.dim}, got {mat.shape}")
        defect = np.max(np.abs(mat.conj().T @ mat - np.eye(self.dim)))
        if defect > UNITARY_TOL:
            raise DomainError(f"matrix is not unitary: max |U^H U - 1| = {defect:.3e}")
        object.__setattr__(self, "entries", readonly(mat))

    def adjoint(self) -> "UnitaryMap":
        return UnitaryMap(self.dim, self.entries.conj().T)


# ---------------------------------------------------------------------------
# constructors


def make_fock_ssrc(n_total: int, n: int) -> SsrcState:
    """The basis ket |n>_a |N-n>_b."""
    if n_total < 0:
        raise DomainError("n_total must be nonnegative")
    if not 0 <= n <= n_total:
        raise DomainError(f"n={n} outside [0, {n_total}]")
    coeffs = np.zeros(n_total + 1, dtype=complex)
    coeffs[n] = 1.0

    def exact(dps: int, _n=n, _N=n_total):
        import mpmath as mp

        return [mp.mpc(1) if k == _n else mp.mpc(0) for k in range(_N + 1)]

    return SsrcState(n_total, coeffs, exact)


def _spin_coherent_coeffs(n_total: int, x: complex) -> np.ndarray:
    """c_n = sqrt(C(N,n)) x^n / (1+|x|^2)^{N/2}, evaluated through logs."""
    lb = log_binomial_ladder(n_total)
    n = np.arange(n_total + 1)
    if x == 0:
        coeffs = np.zeros(n_total + 1, dtype=complex)
        coeffs[0] = 1.0
        return coeffs
    log_mag = 0.5 * lb + n * np.log(np.longdouble(abs(x)))
    log_mag -= 0.5 * n_total * np.log1p(np.longdouble(abs(x)) ** 2)
    phases = np.exp(1j * n * np.angle(x))
    return np.exp(np.asarray(log_mag, dtype=float)) * phases


def make_spin_coherent(n_total: int, x) -> SsrcState:
    """Spin-coherent state |N>_x; x = AT_INFINITY gives |N>_a (south pole)."""
    if n_total < 0:
        raise DomainError("n_total must be nonnegative")
    if x is AT_INFINITY:
        return make_fock_ssrc(n_total, n_total)
    x = complex(x)
    if not np.isfinite(x.real) or not np.isfinite(x.imag):
        raise DomainError("x must be finite or AT_INFINITY")
    coeffs = normalized(_spin_coherent_coeffs(n_total, x))

    def exact(dps: int, _N=n_total, _x=x):
        import mpmath as mp

        with mp.workdps(dps):
            xs = mp.mpc(_x)
            raw = [mp.sqrt(mp.binomial(_N, n)) * xs**n for n in range(_N + 1)]
            norm = mp.sqrt(mp.fsum([abs(v) ** 2 for v in raw]))
            return [v / norm for v in raw]

    return SsrcState(n_total, coeffs, exact)


def make_cat_ssrc(n_total: int, w: complex) -> SsrcState:
    """Odd superposition of the two antipodal-phase spin-coherent states.

    Coefficients are proportional to sqrt(C(N,n)) (w/sqrt(N))^n at odd n and
    vanish identically at even n.
    """
    if n_total < 1:
        raise DomainError("cat states need n_total >= 1")
    w = complex(w)
    if w == 0:
        raise DomainError("w = 0 gives a null superposition")
    x = w / np.sqrt(n_total)
    raw = _spin_coherent_coeffs(n_total, x)
    raw[::2] = 0.0
    coeffs = normalized(raw)

    def exact(dps: int, _N=n_total, _w=w):
        import mpmath as mp

        with mp.workdps(dps):
            xs = mp.mpc(_w) / mp.sqrt(_N)
            raw = [
                mp.sqrt(mp.binomial(_N, n)) * xs**n if n % 2 else mp.mpc(0)
                for n in range(_N + 1)
            ]
            norm = mp.sqrt(mp.fsum([abs(v) ** 2 for v in raw]))
            return [v / norm for v in raw]

    return SsrcState(n_total, coeffs, exact)


def make_from_coeffs(coeffs) -> SsrcState:
    """State from an arbitrary coefficient vector, rescaled to unit norm."""
    arr = np.asarray(coeffs, dtype=complex)
    if arr.ndim != 1 or len(arr) == 0:
        raise DomainError("coeffs must be a nonempty 1-D vector")
    if not np.any(arr != 0):
        raise DomainError("coeffs must not all vanish")
    vals = tuple(complex(v) for v in arr)

    def exact(dps: int, _vals=vals):
        import mpmath as mp

        with mp.workdps(dps):
            raw = [mp.mpc(v) for v in _vals]
            norm = mp.sqrt(mp.fsum([abs(v) ** 2 for v in raw]))
            return [v / norm for v in raw]

    return SsrcState(len(arr) - 1, normalized(arr), exact)


def make_cv_cat(w: complex, cutoff: int) -> CvState:
    """Odd coherent-state superposition, truncated and renormalized.

    Fock amplitudes are proportional to w^k / sqrt(k!) at odd k.  The cutoff
    is raised by doubling until the dropped tail of |c_k|^2 is below 1e-12,
    then the truncated vector is renormalized.
    """
    w = complex(w)
    if w == 0:
        raise DomainError("w = 0 gives a null superposition")
    if cutoff < 1:
        raise DomainError("cutoff must be >= 1")
    from ._util import log_factorial_ladder

    m = cutoff
    for _ in range(64):
        lf = log_factorial_ladder(max(4 * m, 64))
        k = np.arange(len(lf))
        with np.errstate(divide="ignore"):
            log_p = 2 * k * np.log(np.longdouble(abs(w))) - lf
        log_p[::2] = -np.inf
        log_p -= np.max(log_p)
        p = np.exp(np.asarray(log_p, dtype=float))
        total = p.sum()
        tail = p[m + 1 :].sum()
        if tail <= 1e-12 * total:
            break
        m *= 2
    else:  # pragma: no cover
        raise NonConvergenceError("tail-mass cutoff search did not terminate")

    k = np.arange(m + 1)
    lf = log_factorial_ladder(m)
    with np.errstate(divide="ignore"):
        log_mag = k * np.log(np.longdouble(abs(w))) - 0.5 * lf
    log_mag[::2] = -np.inf
    finite = np.isfinite(log_mag)
    log_mag = log_mag - np.max(log_mag[finite])
    raw = np.where(finite, np.exp(np.asarray(log_mag, dtype=float)), 0.0) * np.exp(
        1j * k * np.angle(w)
    )
    coeffs = normalized(raw)

    def exact(dps: int, _w=w, _m=m):
        import mpmath as mp

        with mp.workdps(dps):
            ws = mp.mpc(_w)
            raw = [
                ws**kk / mp.sqrt(mp.factorial(kk)) if kk % 2 else mp.mpc(0)
                for kk in range(_m + 1)
            ]
            norm = mp.sqrt(mp.fsum([abs(v) ** 2 for v in raw]))
            return [v / norm for v in raw]

    return CvState(coeffs, exact)


# ---------------------------------------------------------------------------
# transformations


@functools.lru_cache(maxsize=32)
def _jy_eigensystem(n_total: int):
    """Eigendecomposition of the mode-exchange generator on the fixed-N sector.

    J_y is similar, via diag((-i)^n), to the real symmetric tridiagonal matrix
    with off-diagonal -sqrt((n+1)(N-n))/2; its eigensystem gives e^{i theta J_y}
    stably up to N in the low thousands.
    """
    n = np.arange(n_total, dtype=float)
    off = -0.5 * np.sqrt((n + 1) * (n_total - n))
    evals, evecs = scipy.linalg.eigh_tridiagonal(np.zeros(n_total + 1), off)
    phase = (-1j) ** np.arange(n_total + 1)
    return evals, evecs, phase


def _exchange_rotation_matrix(n_total: int, theta: float) -> np.ndarray:
    """Matrix of e^{i theta J_y} on the sector basis."""
    evals, evecs, phase = _jy_eigensystem(n_total)
    core = (evecs * np.exp(1j * theta * evals)) @ evecs.T
    return phase.conj()[:, None] * core * phase[None, :]


def rotation_unitary(n_total: int, theta: float, phi: float) -> UnitaryMap:
    """Sector unitary of the Bloch rotation taking |N>_b to |N>_{e^{i phi} tan(theta/2)}.

    The matrix acts as b^dag -> e^{i phi} sin(theta/2) a^dag + cos(theta/2) b^dag
    and leaves the vacuum invariant, so spin-coherent states map to
    spin-coherent states with no residual global phase.
    """
    if n_total > ROTATION_MAX_N:
        raise DomainError(
            f"rotations supported up to N={ROTATION_MAX_N}; got N={n_total}"
        )
    w = _exchange_rotation_matrix(n_total, float(theta))
    n = np.arange(n_total + 1)
    ph = np.exp(1j * float(phi) * n)
    mat = ph[:, None] * w * ph.conj()[None, :]
    return UnitaryMap(n_total + 1, mat)


def apply_rotation(state: SsrcState, theta: float, phi: float) -> SsrcState:
    """Rotate a state on the Bloch sphere; preserves the norm to ~1e-13."""
    u = rotation_unitary(state.n_total, theta, phi)
    return SsrcState(state.n_total, u.entries @ state.coeffs)


def apply_unitary(state: SsrcState, u: UnitaryMap) -> SsrcState:
    """Apply an arbitrary sector unitary."""
    if u.dim != state.n_total + 1:
        raise DomainError(
            f"unitary dimension {u.dim} does not match N+1 = {state.n_total + 1}"
        )
    return SsrcState(state.n_total, u.entries @ state.coeffs)


def mean_photon_number(state: SsrcState) -> float:
    """<a^dag a> = sum_n n |c_n|^2 (for a unit-norm state)."""
    n = np.arange(state.n_total + 1)
    return float(np.sum(n * np.abs(state.coeffs) ** 2))
