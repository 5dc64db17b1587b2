"""Deterministic JSON / CSV forms of states, constellations, and reports.

Floats serialize through Python's shortest round-trip repr (at most 17
significant digits), dictionary keys are emitted sorted, and every report
embeds the inputs that produced it, so identical inputs give byte-identical
files.
"""
from __future__ import annotations

import json
from typing import List, Sequence

import numpy as np

from .convergence import RootMatchReport, ScalingRecord, SweepRecord
from .entanglement import WitnessVerdict
from .errors import DomainError
from .majorana import Constellation
from .measures import NormalizationReport, TruncationReport
from .states import CvState, SsrcState

__all__ = [
    "dumps_json",
    "state_to_dict",
    "state_from_dict",
    "constellation_to_dict",
    "constellation_csv_rows",
    "normalization_report_to_dict",
    "truncation_report_to_dict",
    "match_report_to_dict",
    "verdict_to_dict",
    "scaling_record_to_dict",
    "sweep_records_to_dicts",
    "sweep_csv_rows",
]


def _f(x: float) -> float:
    """Plain builtin float (numpy scalars repr differently)."""
    return float(x)


def _pair(z: complex) -> List[float]:
    z = complex(z)
    return [_f(z.real), _f(z.imag)]


def dumps_json(obj) -> str:
    """Canonical JSON text: sorted keys, two-space indent, no NaN/Inf."""
    return json.dumps(obj, sort_keys=True, indent=2, allow_nan=False) + "\n"


# ---------------------------------------------------------------------------
# states


def state_to_dict(state) -> dict:
    if isinstance(state, SsrcState):
        return {
            "kind": "ssrc",
            "N": int(state.n_total),
            "coeffs": [_pair(c) for c in state.coeffs],
        }
    if isinstance(state, CvState):
        return {"kind": "cv", "coeffs": [_pair(c) for c in state.coeffs]}
    raise DomainError(f"cannot serialize {type(state).__name__}")


def state_from_dict(data: dict):
    kind = data.get("kind")
    coeffs = np.array([complex(re, im) for re, im in data["coeffs"]])
    if kind == "ssrc":
        n_total = int(data["N"])
        if n_total != len(coeffs) - 1:
            raise DomainError("N does not match the coefficient count")
        return SsrcState(n_total, coeffs)
    if kind == "cv":
        return CvState(coeffs)
    raise DomainError(f"unknown state kind {kind!r}")


# ---------------------------------------------------------------------------
# constellations


def constellation_to_dict(con: Constellation) -> dict:
    roots = [
        {
            "z": _pair(r.z),
            "mult": int(r.multiplicity),
            "theta": _f(r.spherical.theta),
            "phi": _f(r.spherical.phi),
        }
        for r in con.roots
    ]
    if con.at_infinity_multiplicity > 0:
        roots.append(
            {
                "z": "inf",
                "mult": int(con.at_infinity_multiplicity),
                "theta": _f(np.pi),
                "phi": 0.0,
            }
        )
    return {
        "N": int(con.n_total),
        "roots": roots,
        "at_infinity": int(con.at_infinity_multiplicity),
        "residual": _f(con.residual),
    }


def constellation_csv_rows(con: Constellation) -> List[str]:
    rows = ["z_re,z_im,mult,theta,phi"]
    for r in con.roots:
        rows.append(
            ",".join(
                [
                    repr(_f(r.z.real)),
                    repr(_f(r.z.imag)),
                    str(int(r.multiplicity)),
                    repr(_f(r.spherical.theta)),
                    repr(_f(r.spherical.phi)),
                ]
            )
        )
    if con.at_infinity_multiplicity > 0:
        rows.append(
            ",".join(
                [
                    "inf",
                    "0.0",
                    str(int(con.at_infinity_multiplicity)),
                    repr(_f(np.pi)),
                    "0.0",
                ]
            )
        )
    return rows


# ---------------------------------------------------------------------------
# reports


def normalization_report_to_dict(rep: NormalizationReport) -> dict:
    return {
        "i_sphere": _f(rep.i_sphere),
        "i_disk": _f(rep.i_disk),
        "epsilon_disk": _f(rep.epsilon_disk),
        "i_plane": _f(rep.i_plane),
        "method": rep.method,
        "radius": _f(rep.radius),
    }


def truncation_report_to_dict(rep: TruncationReport) -> dict:
    return {
        "K": int(rep.truncation_k),
        "eta": _f(rep.eta),
        "R": _f(rep.radius),
        "tail_value": _f(rep.tail_value),
        "stirling_error": _f(rep.stirling_error),
    }


def match_report_to_dict(rep: RootMatchReport) -> dict:
    return {
        "pairs": [
            {"a": _pair(a), "b": _pair(b), "distance": _f(d)}
            for a, b, d in rep.pairs
        ],
        "unmatched_a": [_pair(z) for z in rep.unmatched_a],
        "unmatched_b": [_pair(z) for z in rep.unmatched_b],
        "max_distance": _f(rep.max_distance),
        "radius": _f(rep.domain.radius),
    }


def verdict_to_dict(v: WitnessVerdict) -> dict:
    return {"verdict": v.verdict, "evidence": v.evidence, "numeric": _f(v.numeric)}


def scaling_record_to_dict(rec: ScalingRecord) -> dict:
    return {
        "r_star_in_D": int(rec.r_star_in_d),
        "K": int(rec.truncation_k),
        "sqrt_N": _f(rec.sqrt_n),
        "ratio": _f(rec.ratio),
    }


# ---------------------------------------------------------------------------
# sweeps


def _param_columns(records: Sequence[SweepRecord]) -> List[str]:
    cols: List[str] = []
    for rec in records:
        for key in rec.params:
            if key not in cols:
                cols.append(key)
    return sorted(cols)


def sweep_records_to_dicts(records: Sequence[SweepRecord]) -> List[dict]:
    out = []
    for rec in records:
        entry = {
            "N": int(rec.n_total),
            "params": {k: _f(v) for k, v in sorted(rec.params.items())},
            "max_match_distance": _f(rec.max_match_distance),
            "K": None if rec.truncation_k is None else int(rec.truncation_k),
            "r_star_in_D": None if rec.r_star_in_d is None else int(rec.r_star_in_d),
            "I_D": None if rec.i_disk is None else _f(rec.i_disk),
            "epsilon_D": None if rec.epsilon_disk is None else _f(rec.epsilon_disk),
            "mean_photon": None if rec.mean_photon is None else _f(rec.mean_photon),
            "constellation": (
                None
                if rec.constellation is None
                else constellation_to_dict(rec.constellation)
            ),
        }
        out.append(entry)
    return out


def sweep_csv_rows(records: Sequence[SweepRecord]) -> List[str]:
    params = _param_columns(records)
    header = (
        ["N"]
        + params
        + ["max_match_distance", "K", "r_star_in_D", "I_D", "epsilon_D", "mean_photon"]
    )
    rows = [",".join(header)]

    def cell(v) -> str:
        if v is None:
            return ""
        if isinstance(v, int):
            return str(v)
        return repr(_f(v))

    for rec in records:
        row = [str(int(rec.n_total))]
        row += [cell(rec.params.get(p)) for p in params]
        row += [
            cell(rec.max_match_distance),
            cell(rec.truncation_k),
            cell(rec.r_star_in_d),
            cell(rec.i_disk),
            cell(rec.epsilon_disk),
            cell(rec.mean_photon),
        ]
        rows.append(",".join(row))
    return rows
