r"""Polynomial root engine for coefficients spanning thousands of decades.

Coefficients enter as (log-magnitude, phase) pairs plus a mask of exact
zeros, so the engine never materializes values that would overflow float64.
Evaluation shifts each point's term exponents by their maximum before
exponentiating, which makes an Aberth-Ehrlich sweep usable at any scale.

Pipeline
--------
1. Trim exact zeros at both ends (they are roots at the origin and a degree
   deficit, i.e. roots at infinity in the projective picture).
2. Aberth-Ehrlich simultaneous iteration from Newton-polygon (convex hull)
   starting circles.  Points freeze on a tiny componentwise backward error
   or on stagnation at their personal noise floor.
3. Cluster analysis on inclusion disks: points with trustworthy residuals
   keep their full Gerschgorin-style radius deg*|p/p'| (this is what lets a
   cloud trapped in the flat region around an m-fold root coalesce), while
   noise-limited points get a capped radius.  Disks link only when the
   smaller radius supports the distance, so a sharply located root is never
   swallowed by a fat neighbouring uncertainty disk.
4. Each cluster of size m is polished with a Schroeder step on the (m-1)-th
   derivative, whose root at the cluster is simple and well conditioned;
   this recovers degenerate roots to machine precision where the naive
   forward evaluation is pure cancellation noise.  The claimed multiplicity
   is verified against intermediate derivatives (a true m-fold root zeroes
   every order below m; a chain of distinct roots does not), and clusters
   failing the check carry their spread as the error estimate.
5. Per-root error estimates (noise floor / root condition) decide whether
   the double-precision answer meets the requested accuracy.  If not, and
   the polynomial carries an exact-coefficient provider, the sweep is
   repeated in mpmath at an adaptive precision (cheap low-precision
   localization first), warm-started from the double-precision iterates;
   the active degree range is re-derived from the exact coefficients so
   amplitudes that underflowed float64 storage are restored.

The componentwise backward error |p(z)| / sum_k |a_k z^k| is the residual
measure throughout: it is scale-free and reaches a few ulps exactly when z
is an exact root of a relatively perturbed polynomial.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import lgamma, pi
from typing import Callable, Optional, Sequence, Union

import numpy as np

from .errors import DomainError, NonConvergenceError

EPS = float(np.finfo(float).eps)
_GOLDEN = 0.3819660112501051


@dataclass(frozen=True)
class RootOptions:
    """Tuning knobs for the root engine.

    precision: "double" keeps everything in float64; "auto" escalates to
    mpmath when the estimated root errors exceed target_rel_error and exact
    coefficients are available; an int forces that many decimal digits.
    """

    residual_tol: float = 1e-9
    cluster_tol: float = 1e-6
    max_iterations: int = 600
    zero_trim_rel: float = 0.0
    precision: Union[str, int] = "auto"
    target_rel_error: float = 1e-9

    def __post_init__(self):
        if self.residual_tol <= 0 or self.cluster_tol <= 0:
            raise DomainError("tolerances must be positive")
        if isinstance(self.precision, str) and self.precision not in ("auto", "double"):
            raise DomainError("precision must be 'auto', 'double', or digits")


@dataclass(frozen=True)
class RootResult:
    roots: tuple  # ((complex, multiplicity, abs error estimate), ...), nonzero
    zero_multiplicity: int
    degree_deficit: int
    residual: float
    max_rel_error: float
    iterations: int
    precision_used: Union[str, int]


# ---------------------------------------------------------------------------
# float64 stage


def _hull_start_points(log_mag: np.ndarray, deg: int) -> np.ndarray:
    """Initial points on circles whose radii come from the Newton polygon."""
    ks = np.flatnonzero(np.isfinite(log_mag))
    hull = []
    for k in ks:
        y = log_mag[k]
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (x2 - x1) * (y - y1) >= (y2 - y1) * (k - x1):
                hull.pop()
            else:
                break
        hull.append((float(k), float(y)))
    pts = []
    for (k1, y1), (k2, y2) in zip(hull, hull[1:]):
        span = int(round(k2 - k1))
        radius = np.exp(min(max((y1 - y2) / span, -600.0), 600.0))
        for j in range(span):
            ang = 2 * pi * (j / span + _GOLDEN * (k1 + 1) / (deg + 1)) + 0.5
            pts.append(radius * complex(np.cos(ang), np.sin(ang)))
    return np.asarray(pts, dtype=complex)


def _eval_sums(log_mag, phase, z, second=False):
    """Scaled power sums at each point z.

    With M(z) = max_k (log|a_k| + k log|z|):
      p(z)   = S0 * e^M
      p'(z)  = S1 * e^M / z
      p''(z) = S2 * e^M / z^2        (S2 = sum k(k-1) terms)
    T = sum of |terms| bounds the evaluation noise: |noise| <~ eps * T * e^M.
    """
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    k = np.arange(len(log_mag), dtype=float)
    r = np.abs(z)
    with np.errstate(divide="ignore"):
        logr = np.where(r > 0, np.log(np.where(r > 0, r, 1.0)), -np.inf)
    with np.errstate(invalid="ignore"):
        lm = log_mag[None, :] + k[None, :] * logr[:, None]
        lm_max = np.max(np.where(np.isfinite(lm), lm, -np.inf), axis=1)
        w = np.exp(np.where(np.isfinite(lm), lm - lm_max[:, None], -np.inf))
    w[~np.isfinite(lm)] = 0.0
    terms = w * np.exp(1j * (phase[None, :] + k[None, :] * np.angle(z)[:, None]))
    s0 = terms.sum(axis=1)
    s1 = (k[None, :] * terms).sum(axis=1)
    t = w.sum(axis=1)
    if second:
        s2 = (k[None, :] * (k[None, :] - 1.0) * terms).sum(axis=1)
        return s0, s1, s2, t
    return s0, s1, t


def _aberth_sweep(log_mag, phase, start, max_iterations):
    """Simultaneous iteration; returns best-seen positions and diagnostics."""
    deg = len(log_mag) - 1
    z = start.copy()
    frozen = np.zeros(deg, dtype=bool)
    bw_best = np.full(deg, np.inf)
    z_best = z.copy()
    last_improve = np.zeros(deg, dtype=int)
    floor_gate = max(1e4 * deg * EPS, 1e-11)
    patience, hard_patience = 30, 120
    it = 0
    for it in range(max_iterations):
        s0, s1, t = _eval_sums(log_mag, phase, z)
        bw = np.abs(s0) / np.maximum(t, 1e-300)
        improved = (bw < 0.5 * bw_best) & ~frozen
        last_improve[improved] = it
        upd = (bw < bw_best) & ~frozen
        z_best[upd] = z[upd]
        bw_best[upd] = bw[upd]
        stale = it - last_improve
        frozen |= bw <= 4 * EPS
        frozen |= (stale >= patience) & (bw_best <= floor_gate)
        frozen |= stale >= hard_patience
        if frozen.all():
            break
        with np.errstate(all="ignore"):
            nu = z * s0 / s1
        bad = ~np.isfinite(nu)
        nu[bad] = 1e-3 * (1.0 + np.abs(z[bad]))
        diffs = z[:, None] - z[None, :]
        np.fill_diagonal(diffs, np.inf)
        rep = (1.0 / diffs).sum(axis=1)
        with np.errstate(all="ignore"):
            delta = nu / (1.0 - nu * rep)
        bad = ~np.isfinite(delta)
        delta[bad] = nu[bad]
        cap = 0.5 * (1.0 + np.abs(z))
        big = np.abs(delta) > cap
        delta[big] *= cap[big] / np.abs(delta[big])
        delta[frozen] = 0.0
        z = z - delta
    z = z_best
    s0, s1, t = _eval_sums(log_mag, phase, z)
    bw = np.abs(s0) / np.maximum(t, 1e-300)
    return z, bw, it + 1, bool(frozen.all())


def _union_clusters(z, radii, cluster_tol):
    """Connected components of overlapping inclusion disks (plus a floor tol)."""
    m = len(z)
    parent = list(range(m))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(m):
        for j in range(i + 1, m):
            d = abs(z[i] - z[j])
            # a link needs support from the *smaller* disk: a sharply located
            # root must not be swallowed by a fat neighbouring uncertainty disk
            if d <= 3.0 * min(radii[i], radii[j]) or d <= cluster_tol * (
                1.0 + min(abs(z[i]), abs(z[j]))
            ):
                a, b = find(i), find(j)
                if a != b:
                    parent[a] = b
    groups = {}
    for i in range(m):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values(), key=lambda g: (abs(z[g[0]]), g[0]))


def _derivative_logcoeffs(log_mag, phase, order):
    if order == 0:
        return log_mag, phase
    top = len(log_mag) - 1 - order
    fac = np.array(
        [lgamma(n + order + 1) - lgamma(n + 1) for n in range(top + 1)], dtype=float
    )
    return log_mag[order:] + fac, phase[order:]


def _backward_error(log_mag, phase, z):
    s0, _, t = _eval_sums(log_mag, phase, np.array([z]))
    return float(abs(s0[0]) / max(t[0], 1e-300))


def _schroeder_polish(log_mag, phase, z0, steps=40):
    """Newton accelerated for multiple roots: z -= p p' / (p'^2 - p p'')."""
    z = complex(z0)
    best, best_bw = z, np.inf
    for _ in range(steps):
        s0, s1, s2, t = _eval_sums(log_mag, phase, np.array([z]), second=True)
        if t[0] <= 0 or not np.isfinite(s0[0]):
            break
        bw = abs(s0[0]) / t[0]
        if bw < best_bw:
            best, best_bw = z, bw
        if bw <= 4 * EPS:
            break
        denom = s1[0] * s1[0] - s0[0] * s2[0]
        if denom == 0 or not np.isfinite(denom):
            break
        step = z * s0[0] * s1[0] / denom
        if not np.isfinite(step) or step == 0:
            break
        if abs(step) > 0.5 * (1.0 + abs(z)):
            step *= 0.5 * (1.0 + abs(z)) / abs(step)
        z = z - step
        if abs(step) <= 1e-16 * (1.0 + abs(z)):
            s0, s1, t = _eval_sums(log_mag, phase, np.array([z]))
            bw = abs(s0[0]) / max(t[0], 1e-300)
            if bw < best_bw:
                best, best_bw = z, bw
            break
    return best


def _double_stage(log_mag, phase, cluster_tol, max_iterations, warm=None):
    """Aberth + clustering + polishing in float64.

    Returns (clusters, iterates, iterations, converged) where clusters is a
    list of (root, multiplicity, abs_error_estimate, backward_error).
    """
    deg = len(log_mag) - 1
    if deg == 1:
        # single root: a0 + a1 z = 0 solved in the log domain
        mag = np.exp(log_mag - log_mag.max())
        root = -mag[0] * np.exp(1j * (phase[0] - phase[1])) / mag[1]
        err = 4 * EPS * abs(root)
        return [(complex(root), 1, err, 0.0)], np.array([root]), 1, True, 4 * EPS
    start = warm if warm is not None else _hull_start_points(log_mag, deg)
    z, bw, iters, converged = _aberth_sweep(log_mag, phase, start, max_iterations)
    s0, s1, t = _eval_sums(log_mag, phase, z)
    with np.errstate(all="ignore"):
        nu = np.abs(z * s0 / s1)
        floor = EPS * np.abs(z) * t / np.abs(s1)
    nu = np.where(np.isfinite(nu), nu, np.abs(z) + 1.0)
    floor = np.where(np.isfinite(floor), floor, np.abs(z) + 1.0)
    # worst per-iterate noise floor relative to position: the double-precision
    # conditioning ceiling, used to size the escalated working precision
    max_floor_rel = float(np.max(floor / np.maximum(np.abs(z), 1e-6)))
    trusted = bw <= 32 * EPS
    full = deg * np.maximum(nu, floor)
    radii = np.where(
        trusted,
        np.minimum(full, 2.0 * (1.0 + np.abs(z))),
        np.minimum(full, 0.05 * (1.0 + np.abs(z))),
    )
    accept_bw = max(1e3 * deg * EPS, 1e-11)
    clusters = []
    for idxs in _union_clusters(z, radii, cluster_tol):
        m = len(idxs)
        c0 = complex(z[idxs].mean())
        if m == 1:
            zp = _schroeder_polish(log_mag, phase, c0, steps=12)
            d_lm, d_ph = log_mag, phase
        else:
            d_lm, d_ph = _derivative_logcoeffs(log_mag, phase, m - 1)
            zp = _schroeder_polish(d_lm, d_ph, c0)
        bw_p = _backward_error(log_mag, phase, zp)
        bw_c = _backward_error(log_mag, phase, c0)
        if bw_p > max(accept_bw, 10.0 * bw_c):
            zp, bw_p = c0, bw_c
        # error estimate: conditioning of the (simple) root of the polished
        # polynomial; the factor 8 covers the few-ulp coefficient noise of
        # the log-domain pipeline beyond the single-rounding model
        s0d, s1d, td = _eval_sums(d_lm, d_ph, np.array([zp]))
        with np.errstate(all="ignore"):
            est = 8.0 * EPS * abs(zp) * float(td[0]) / abs(s1d[0])
        if not np.isfinite(est):
            est = abs(zp) + 1.0
        if m > 1 and not _multiplicity_consistent(log_mag, phase, zp, m, accept_bw):
            # the members are not one degenerate root but an unresolved chain;
            # report their spread as the honest positional uncertainty
            spread = max(abs(z[i] - zp) for i in idxs)
            est = max(est, spread)
        clusters.append((zp, m, est, bw_p))
    return clusters, z, iters, converged, max_floor_rel


def _multiplicity_consistent(log_mag, phase, z0, mult, tol):
    """True when all sampled derivatives below order mult nearly vanish at z0.

    A genuine m-fold root zeroes p, p', ..., p^(m-1); an accidental chain of
    distinct roots does not.  The top orders m-2, m-3 are the sharp
    discriminators for a compound of two multiplets (low orders still nearly
    vanish near the dominant one), so they are always sampled.
    """
    orders = {1, 2, mult // 2, (3 * mult) // 4, mult - 3, mult - 2, mult - 1}
    for j in sorted(o for o in orders if 1 <= o < mult):
        d_lm, d_ph = _derivative_logcoeffs(log_mag, phase, j)
        if _backward_error(d_lm, d_ph, z0) > tol:
            return False
    return True


# ---------------------------------------------------------------------------
# mpmath stage


def _mp_stage(exact_fn, dps, warm, cluster_tol, max_iterations):
    """Aberth + clustering + polishing in mpmath at dps digits.

    The active degree range is re-derived from the exact coefficients:
    amplitudes that underflowed float64 (and so looked like exact zeros to
    the double stage) are genuine coefficients here.  Newton ratios are
    evaluated in mpmath; the mutual-repulsion sums, which only steer
    convergence, stay in float64.
    """
    import mpmath as mp

    with mp.workdps(dps):
        coeffs_full = [mp.mpc(c) for c in exact_fn(dps)]
        nz = [k for k, c in enumerate(coeffs_full) if c != 0]
        if not nz:
            raise DomainError("the zero polynomial has no root set")
        lo, hi = nz[0], nz[-1]
        coeffs = coeffs_full[lo : hi + 1]
        deg = hi - lo
        deficit = len(coeffs_full) - 1 - hi
        if deg == 0:
            return [], lo, deficit, 0
        if warm is None or len(warm) != deg:
            logs = np.array(
                [
                    float(mp.log(abs(c))) if c != 0 else -np.inf
                    for c in coeffs
                ]
            )
            warm = _hull_start_points(logs - np.max(logs[np.isfinite(logs)]), deg)
        eps_mp = mp.mpf(10) ** (-dps + 1)

        def horner3(zv):
            p = mp.mpc(0)
            dp = mp.mpc(0)
            d2 = mp.mpc(0)
            t = mp.mpf(0)
            az = abs(zv)
            for c, ac in zip(reversed(coeffs), reversed(abs_coeffs)):
                d2 = d2 * zv + dp
                dp = dp * zv + p
                p = p * zv + c
                t = t * az + ac
            return p, dp, 2 * d2, t

        def horner2(zv):
            p = mp.mpc(0)
            dp = mp.mpc(0)
            for c in reversed(coeffs):
                dp = dp * zv + p
                p = p * zv + c
            return p, dp

        abs_coeffs = [abs(c) for c in coeffs]
        ks = np.arange(deg + 1, dtype=float)
        abs_log = np.array(
            [float(mp.log(a)) if a > 0 else -np.inf for a in abs_coeffs]
        )

        def log_t(az_float):
            """log of the term-magnitude sum, float64 (decision scale only)."""
            if not np.isfinite(az_float) or az_float <= 0:
                return float(np.max(abs_log))
            lm = abs_log + ks * np.log(az_float)
            m = float(np.max(lm))
            return m + float(np.log(np.exp(lm - m).sum()))

        z = [mp.mpc(v) for v in warm]
        # split exact duplicates deterministically
        seen = {}
        for i, v in enumerate(z):
            key = (mp.nstr(v.real, 20), mp.nstr(v.imag, 20))
            if key in seen:
                z[i] = v * (1 + mp.mpf(seen[key] + 1) * mp.mpf("1e-8")) + mp.mpf(
                    seen[key] + 1
                ) * mp.mpf("1e-20")
                seen[key] += 1
            else:
                seen[key] = 0
        floor_gate = max(deg, 1) * eps_mp * 10**6
        # the sweep only needs separation-scale localization; the quadratic
        # polish below finishes to full precision, so marching linearly
        # convergent cluster members all the way to eps_mp is wasted work.
        # The Newton step length measures the distance to the nearest root
        # independently of conditioning, so it gates the early freeze.
        pos_tol = max(mp.mpf("1e-11"), 100 * eps_mp)
        bw = [np.inf] * deg  # log backward errors during the sweeps

        def sweep(z, frozen, budget, eps_phase, pos_phase, gate_phase):
            log_eps4 = float(np.log(float(4 * eps_phase)))
            log_gate = float(np.log(float(gate_phase)))
            stale = [0] * deg
            bw_log_best = [np.inf] * deg
            z_seen = list(z)
            used = 0
            for it in range(budget):
                used = it + 1
                zf = np.array([complex(v) for v in z])
                diffs = zf[:, None] - zf[None, :]
                np.fill_diagonal(diffs, np.inf)
                with np.errstate(all="ignore"):
                    rep = np.nan_to_num((1.0 / diffs).sum(axis=1))
                all_frozen = True
                for i in range(deg):
                    if frozen[i]:
                        continue
                    p, dp = horner2(z[i])
                    azf = abs(zf[i])
                    if p == 0:
                        bw_log = -np.inf
                    else:
                        bw_log = float(mp.log(abs(p))) - log_t(azf)
                    bw[i] = bw_log
                    if bw_log < bw_log_best[i]:
                        if bw_log < bw_log_best[i] - 0.6931:
                            stale[i] = 0
                        bw_log_best[i] = bw_log
                        z_seen[i] = z[i]
                    else:
                        stale[i] += 1
                    if bw_log <= log_eps4:
                        frozen[i] = True
                        continue
                    if (stale[i] >= 40 and bw_log_best[i] <= log_gate) or stale[
                        i
                    ] >= 250:
                        frozen[i] = True
                        z[i] = z_seen[i]
                        continue
                    if dp == 0:
                        nu_i = mp.mpc(1e-3) * (1 + abs(z[i]))
                    else:
                        nu_i = p / dp
                    if abs(nu_i) <= pos_phase * (1 + abs(z[i])):
                        z[i] = z[i] - nu_i
                        z_seen[i] = z[i]
                        frozen[i] = True
                        continue
                    all_frozen = False
                    denom = 1 - nu_i * mp.mpc(rep[i])
                    step = nu_i if denom == 0 else nu_i / denom
                    cap = mp.mpf("0.5") * (1 + abs(z[i]))
                    if abs(step) > cap:
                        step *= cap / abs(step)
                    z[i] = z[i] - step
                if all_frozen:
                    break
            return used

        iters = 0
        if dps > 38:
            # cheap localization pass: the same iteration at reduced working
            # precision gets every point within its coarse-precision floor,
            # leaving only a few full-precision refinement sweeps
            with mp.workdps(30):
                eps_low = mp.mpf(10) ** (-29)
                frozen_low = [False] * deg
                iters += sweep(
                    z,
                    frozen_low,
                    max_iterations,
                    eps_low,
                    max(mp.mpf("1e-8"), 100 * eps_low),
                    max(deg, 1) * eps_low * 10**6,
                )
        frozen = [False] * deg
        iters += sweep(z, frozen, max_iterations, eps_mp, pos_tol, floor_gate)
        # retry strays: points frozen far from any root poison the cluster
        # analysis, so re-seed them between their neighbours and rerun
        log_stray = float(
            np.log(float(max(mp.mpf(10) ** (-dps // 2), 10**4 * floor_gate)))
        )
        for attempt in (1, 2):
            strays = [i for i in range(deg) if bw[i] > log_stray]
            if not strays:
                break
            good_r = sorted(
                abs(z[i]) for i in range(deg) if i not in set(strays)
            ) or [mp.mpf(1)]
            for rank, i in enumerate(strays):
                pick = good_r[(rank * len(good_r)) // max(len(strays), 1)]
                ang = 2 * pi * (_GOLDEN * (rank + 1) + 0.17 * attempt)
                z[i] = (pick if pick > 0 else mp.mpf(1)) * mp.mpc(
                    np.cos(ang), np.sin(ang)
                )
                frozen[i] = False
            iters += sweep(
                z, frozen, max_iterations // 2, eps_mp, pos_tol, floor_gate
            )

        # clustering in the mp metric
        radii = []
        bw_lin = []
        for i in range(deg):
            p, dp, _, t = horner3(z[i])
            bw_i = abs(p) / max(t, mp.mpf("1e-400"))
            bw_lin.append(bw_i)
            if dp == 0:
                r = (1 + abs(z[i]))
            else:
                r = deg * max(abs(p / dp), eps_mp * abs(z[i]) * t / abs(dp))
            cap = (2.0 if bw_i <= 32 * eps_mp else 0.05) * (1 + abs(z[i]))
            radii.append(min(r, mp.mpf(cap)))
        parent = list(range(deg))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for i in range(deg):
            for j in range(i + 1, deg):
                d = abs(z[i] - z[j])
                if d <= 3 * min(radii[i], radii[j]) or d <= cluster_tol * (
                    1 + min(abs(z[i]), abs(z[j]))
                ):
                    a, b = find(i), find(j)
                    if a != b:
                        parent[a] = b
        groups = {}
        for i in range(deg):
            groups.setdefault(find(i), []).append(i)

        def deriv_coeffs(order):
            cs = coeffs
            for _ in range(order):
                cs = [cs[k] * k for k in range(1, len(cs))]
            return cs

        def schroeder(cs, z0, steps=60):
            zv = mp.mpc(z0)
            best, best_bw = zv, mp.inf
            for _ in range(steps):
                p = mp.mpc(0)
                dp = mp.mpc(0)
                d2 = mp.mpc(0)
                t = mp.mpf(0)
                az = abs(zv)
                for c in reversed(cs):
                    d2 = d2 * zv + dp
                    dp = dp * zv + p
                    p = p * zv + c
                    t = t * az + abs(c)
                b = abs(p) / max(t, mp.mpf("1e-400"))
                if b < best_bw:
                    best, best_bw = zv, b
                if b <= 4 * eps_mp:
                    break
                denom = dp * dp - p * (2 * d2)
                if denom == 0:
                    break
                step = p * dp / denom
                cap = mp.mpf("0.5") * (1 + abs(zv))
                if abs(step) > cap:
                    step *= cap / abs(step)
                zv = zv - step
                if abs(step) <= eps_mp * (1 + abs(zv)):
                    break
            return best

        accept_bw = float(max(deg, 1) * eps_mp * 10**3)
        clusters = []
        for idxs in sorted(groups.values(), key=lambda g: (abs(z[g[0]]), g[0])):
            m = len(idxs)
            c0 = sum(z[i] for i in idxs) / m
            cs = coeffs if m == 1 else deriv_coeffs(m - 1)
            zp = schroeder(cs, c0)
            p, dp, _, t = horner3(zp)
            bw_p = float(abs(p) / max(t, mp.mpf("1e-400")))
            p0, _, _, t0 = horner3(c0)
            bw_c = float(abs(p0) / max(t0, mp.mpf("1e-400")))
            if bw_p > max(accept_bw, 10.0 * bw_c):
                zp, bw_p = c0, bw_c
                p, dp, _, t = horner3(zp)
            # error estimate at mp precision, via the polished polynomial
            pd = mp.mpc(0)
            dd = mp.mpc(0)
            td = mp.mpf(0)
            az = abs(zp)
            for c in reversed(cs):
                dd = dd * zp + pd
                pd = pd * zp + c
                td = td * az + abs(c)
            est = (
                float(eps_mp * abs(zp) * td / abs(dd)) if dd != 0 else float(abs(zp)) + 1.0
            )
            clusters.append((complex(zp), m, est, bw_p))
        return clusters, lo, deficit, iters


# ---------------------------------------------------------------------------
# public entry


def find_polynomial_roots(
    log_mag: Sequence[float],
    phase: Sequence[float],
    exact_zero_mask: Sequence[bool],
    exact_fn: Optional[Callable[[int], list]] = None,
    options: RootOptions = RootOptions(),
    trim_suspect: bool = False,
) -> RootResult:
    """All roots (with multiplicity) of sum_k a_k z^k given in log form.

    Low-order exact zeros become roots at the origin; high-order exact
    zeros become a degree deficit.  Only masked (exactly zero) coefficients
    are trimmed by default: a magnitude threshold relative to the largest
    coefficient can be opted into via zero_trim_rel for noisy inputs, but
    would corrupt polynomials whose genuine coefficients decay smoothly
    through every scale.
    """
    log_mag = np.asarray(log_mag, dtype=float)
    phase = np.asarray(phase, dtype=float)
    mask = np.asarray(exact_zero_mask, dtype=bool)
    d = len(log_mag) - 1
    active = ~mask & np.isfinite(log_mag)
    if not active.any():
        raise DomainError("the zero polynomial has no root set")
    if options.zero_trim_rel > 0:
        cut = np.max(log_mag[active]) + np.log(options.zero_trim_rel)
        lo = 0
        while lo <= d and (not active[lo] or log_mag[lo] < cut):
            lo += 1
        hi = d
        while hi >= 0 and (not active[hi] or log_mag[hi] < cut):
            hi -= 1
    else:
        lo = int(np.argmax(active))
        hi = d - int(np.argmax(active[::-1]))

    zero_mult = lo
    deficit = d - hi
    if hi <= lo:
        return RootResult((), zero_mult, deficit, 0.0, 0.0, 0, "double")

    sub = log_mag[lo : hi + 1].copy()
    sub_phase = phase[lo : hi + 1].copy()
    finite = np.isfinite(sub)
    sub[finite] -= np.max(sub[finite])
    sub[~finite] = -np.inf
    sub_phase[~finite] = 0.0

    clusters, iterates, iters, converged, max_floor_rel = _double_stage(
        sub, sub_phase, options.cluster_tol, options.max_iterations
    )
    precision_used: Union[str, int] = "double"

    worst_rel = max(
        (est / max(abs(zp), 1e-6) for zp, _, est, _ in clusters), default=0.0
    )
    residual = max((bw for _, _, _, bw in clusters), default=0.0)
    wants_mp = False
    dps = 0
    if isinstance(options.precision, int):
        wants_mp = True
        dps = options.precision
    elif options.precision == "auto" and exact_fn is not None:
        if (
            worst_rel > options.target_rel_error
            or residual > options.residual_tol
            or trim_suspect
            or not converged
        ):
            wants_mp = True
            kappa = max(worst_rel, max_floor_rel, EPS) / EPS
            dps = int(
                min(
                    200,
                    max(
                        30,
                        16
                        + np.ceil(
                            np.log10(kappa) - np.log10(options.target_rel_error)
                        )
                        + 8,
                    ),
                )
            )
    if wants_mp:
        if exact_fn is None:
            raise DomainError("explicit precision requires exact coefficients")
        clusters, zero_mult, deficit, mp_iters = _mp_stage(
            exact_fn,
            dps,
            iterates,
            options.cluster_tol,
            options.max_iterations,
        )
        iters += mp_iters
        precision_used = dps
        worst_rel = max(
            (est / max(abs(zp), 1e-6) for zp, _, est, _ in clusters), default=0.0
        )
    elif not converged:
        best = tuple((complex(zp), int(m), float(est)) for zp, m, est, _ in clusters)
        raise NonConvergenceError(
            f"root iteration did not settle in {options.max_iterations} sweeps",
            best=best,
            residual=max(bw for _, _, _, bw in clusters),
        )

    residual = max((bw for _, _, _, bw in clusters), default=0.0)
    roots = tuple(
        (complex(zp), int(m), float(est))
        for zp, m, est, _ in sorted(
            clusters, key=lambda c: (abs(c[0]), np.angle(c[0]) % (2 * pi))
        )
    )
    return RootResult(
        roots, zero_mult, deficit, residual, float(worst_rel), iters, precision_used
    )
