import numpy as np
import pytest
from scipy.optimize import linear_sum_assignment

from stellar_forge import AT_INFINITY, Constellation


def assignment_max_distance(found, expected):
    """Max distance of the optimal pairing; inf when the counts differ."""
    found, expected = list(found), list(expected)
    if len(found) != len(expected):
        return np.inf
    if not found:
        return 0.0
    cost = np.array([[abs(a - b) for b in expected] for a in found])
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())


def assignment_max_relative(found, expected, floor=1e-6):
    found, expected = list(found), list(expected)
    if len(found) != len(expected):
        return np.inf
    if not found:
        return 0.0
    cost = np.array(
        [[abs(a - b) / max(abs(b), floor) for b in expected] for a in found]
    )
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())


def constellation_against(con: Constellation, reference: Constellation):
    """(max relative distance, counts agree) between two constellations."""
    if con.at_infinity_multiplicity != reference.at_infinity_multiplicity:
        return np.inf
    return assignment_max_relative(
        con.finite_points(expand=True), reference.finite_points(expand=True)
    )


def random_root_multiset(rng, n_total, max_mult=4, separation=0.5, allow_infinity=True):
    """Roots in |z| <= 10 with multiplicities, optionally some at infinity."""
    roots, quota = [], n_total
    if allow_infinity and quota >= 2 and rng.random() < 0.4:
        m = int(rng.integers(1, min(max_mult, quota) + 1))
        roots.append((AT_INFINITY, m))
        quota -= m
    while quota > 0:
        m = int(rng.integers(1, min(max_mult, quota) + 1))
        z = complex(rng.uniform(-10, 10), rng.uniform(-10, 10))
        if all(x is AT_INFINITY or abs(z - x) > separation for x, _ in roots):
            roots.append((z, m))
            quota -= m
    return roots


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
