r"""Particle-separability decision and the stellar-rank witness.

A fixed-N symmetric state is particle-separable exactly when it is a
spin-coherent state, i.e. when its whole constellation sits at a single
point of the sphere (with multiplicity N, possibly at the south pole).
The decision therefore measures the constellation's angular spread.

A nonzero stellar rank witnesses particle entanglement of the underlying
fixed-N family, but rank zero decides nothing: states with Gaussian-looking
limits can arise from entangled fixed-N states, so the witness is strictly
one-sided.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import pi
from typing import Optional

from .bargmann import stellar_rank_finite
from .majorana import RootOptions, find_roots, majorana_coeffs
from .states import CvState, SphericalPoint, SsrcState, chordal_distance

__all__ = ["WitnessVerdict", "is_particle_separable", "stellar_witness"]

SEPARABILITY_TOL = 1e-6


@dataclass(frozen=True)
class WitnessVerdict:
    """Outcome of a separability test or witness evaluation.

    verdict: 'separable' | 'entangled' | 'inconclusive'
    evidence: 'constellation-degenerate' | 'constellation-spread'
              | 'rank-positive' | 'rank-zero'
    numeric: the spread (chordal diameter) or the stellar rank.
    """

    verdict: str
    evidence: str
    numeric: float


def is_particle_separable(
    state: SsrcState,
    tol: float = SEPARABILITY_TOL,
    root_options: Optional[RootOptions] = None,
) -> WitnessVerdict:
    """Separable iff all N constellation stars coincide on the sphere.

    The spread measure is the maximum pairwise chordal distance between
    star positions (unit-sphere embedding), which treats the point at
    infinity (south pole) like any other position.
    """
    if state.n_total == 0:
        return WitnessVerdict("separable", "constellation-degenerate", 0.0)
    options = root_options if root_options is not None else RootOptions()
    constellation = find_roots(majorana_coeffs(state), options)
    positions = [r.spherical for r in constellation.roots]
    if constellation.at_infinity_multiplicity > 0:
        positions.append(SphericalPoint(pi, 0.0))
    spread = max(
        (chordal_distance(p, q) for p, q in combinations(positions, 2)),
        default=0.0,
    )
    if spread <= tol:
        return WitnessVerdict("separable", "constellation-degenerate", spread)
    return WitnessVerdict("entangled", "constellation-spread", spread)


def stellar_witness(state: CvState) -> WitnessVerdict:
    """One-sided witness: positive stellar rank implies particle entanglement.

    Rank zero is inconclusive, never 'separable': rank-zero limits can be
    reached by entangled fixed-N families, so absence of rank proves
    nothing.
    """
    rank = stellar_rank_finite(state)
    if rank > 0:
        return WitnessVerdict("entangled", "rank-positive", float(rank))
    return WitnessVerdict("inconclusive", "rank-zero", 0.0)
