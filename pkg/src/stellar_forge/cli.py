"""Command-line front end: constellations, integrals, sweeps, witnesses, plots.

Every output embeds the resolved configuration and is rendered with fixed
formatting, so a repeated run writes byte-identical files.  Exit codes:
0 success, 1 bad input or configuration, 2 numerical non-convergence.
"""
from __future__ import annotations

import argparse
import configparser
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional

from . import serialize
from .convergence import (
    DiskDomain,
    SweepRecord,
    cat_convergence_sweep,
    fock_root_escape,
    hurwitz_check,
    measure_convergence,
    stellar_scaling_report,
)
from .entanglement import is_particle_separable, stellar_witness
from .errors import DomainError, NonConvergenceError, StellarForgeError
from .majorana import RootOptions, find_roots, majorana_coeffs
from .measures import find_truncation_K, gaussian_disk_integral, ssrc_norm_integral
from .states import (
    CvState,
    SsrcState,
    make_cat_ssrc,
    make_cv_cat,
    make_fock_ssrc,
    make_spin_coherent,
)

SWEEP_KINDS = ("cat-convergence", "fock-escape", "hurwitz", "measure-convergence")


@dataclass
class RunConfig:
    """Resolved options for one invocation."""

    command: str
    sweep_kind: Optional[str] = None
    state_spec: Optional[str] = None
    radius: float = 2.0
    eta: float = 1e-6
    w: complex = complex(1.0)
    n_list: List[int] = field(default_factory=list)
    k_max: int = 3
    jobs: int = 1
    out: Optional[str] = None
    fmt: str = "json"
    tol_root: float = 1e-9
    tol_norm: float = 1e-12
    seed: int = 0
    quadrature: bool = False

    def validate(self) -> None:
        if self.radius <= 0:
            raise DomainError("--radius must be positive")
        if self.eta <= 0:
            raise DomainError("--eta must be positive")
        if self.tol_root <= 0 or self.tol_norm <= 0:
            raise DomainError("tolerances must be positive")
        if self.jobs < 1:
            raise DomainError("--jobs must be >= 1")
        if self.n_list and any(
            b <= a for a, b in zip(self.n_list, self.n_list[1:])
        ):
            raise DomainError("--N list must be strictly increasing")
        if self.out is not None:
            parent = Path(self.out).resolve().parent
            if not parent.is_dir() or not os.access(parent, os.W_OK):
                raise DomainError(f"output directory {parent} is not writable")

    def echo(self) -> dict:
        data = {
            "command": self.command,
            "radius": float(self.radius),
            "eta": float(self.eta),
            "jobs": int(self.jobs),
            "format": self.fmt,
            "tol_root": float(self.tol_root),
            "tol_norm": float(self.tol_norm),
            "seed": int(self.seed),
        }
        if self.sweep_kind:
            data["sweep"] = self.sweep_kind
            data["w"] = [self.w.real, self.w.imag]
            data["N"] = list(self.n_list)
            data["k_max"] = int(self.k_max)
        if self.state_spec:
            data["state"] = self.state_spec
        if self.out:
            data["out"] = self.out
        if self.command == "norm":
            data["quadrature"] = bool(self.quadrature)
        return data


# ---------------------------------------------------------------------------
# state specs


def _spec_error(text: str, pos: int, message: str) -> DomainError:
    return DomainError(f"bad state spec {text!r} at position {pos}: {message}")


def _parse_fields(text: str, body: str, offset: int, kinds) -> list:
    parts = body.split(",")
    if len(parts) != len(kinds):
        raise _spec_error(
            text, offset, f"expected {len(kinds)} comma-separated fields, got {len(parts)}"
        )
    values = []
    pos = offset
    for raw, kind in zip(parts, kinds):
        try:
            values.append(kind(raw))
        except ValueError:
            label = "an integer" if kind is int else "a number"
            raise _spec_error(text, pos, f"{raw!r} is not {label}") from None
        pos += len(raw) + 1
    return values


def parse_state_spec(text: str):
    """fock:N,n | spin:N,re,im | cat:N,re,im | cvcat:re,im,M | file:path."""
    if ":" not in text:
        raise _spec_error(text, 0, "missing ':' separating kind and arguments")
    kind, body = text.split(":", 1)
    offset = len(kind) + 1
    if kind == "fock":
        n_total, n = _parse_fields(text, body, offset, (int, int))
        return make_fock_ssrc(n_total, n)
    if kind == "spin":
        n_total, re, im = _parse_fields(text, body, offset, (int, float, float))
        return make_spin_coherent(n_total, complex(re, im))
    if kind == "cat":
        n_total, re, im = _parse_fields(text, body, offset, (int, float, float))
        return make_cat_ssrc(n_total, complex(re, im))
    if kind == "cvcat":
        re, im, cutoff = _parse_fields(text, body, offset, (float, float, int))
        return make_cv_cat(complex(re, im), cutoff)
    if kind == "file":
        import json

        path = Path(body)
        if not path.is_file():
            raise _spec_error(text, offset, f"no such file: {body}")
        with open(path, "r", encoding="utf-8") as handle:
            return serialize.state_from_dict(json.load(handle))
    raise _spec_error(text, 0, f"unknown state kind {kind!r}")


# ---------------------------------------------------------------------------
# sweep workers (module-level for process pools)


def _sweep_one(args: tuple) -> SweepRecord:
    kind, w, n_total, k_max, radius, eta = args
    if kind == "cat-convergence":
        return cat_convergence_sweep(w, [n_total], k_max)[0]
    if kind == "fock-escape":
        return fock_root_escape(w, [n_total])[0]
    if kind == "hurwitz":
        limit = make_cv_cat(w, 32)
        return hurwitz_check(
            lambda n: make_cat_ssrc(n, w), [n_total], limit, DiskDomain(radius), eta
        )[0]
    if kind == "measure-convergence":
        value = measure_convergence(n_total, radius)
        return SweepRecord(
            n_total=n_total,
            params={"radius": radius, "measure_deviation": value},
            constellation=None,
            max_match_distance=value,
            truncation_k=None,
            r_star_in_d=None,
            i_disk=None,
            epsilon_disk=None,
            mean_photon=None,
        )
    raise DomainError(f"unknown sweep kind {kind!r}")


def _run_sweep(config: RunConfig) -> List[SweepRecord]:
    if not config.n_list:
        raise DomainError("sweep requires --N with at least one value")
    tasks = [
        (config.sweep_kind, config.w, n, config.k_max, config.radius, config.eta)
        for n in config.n_list
    ]
    if config.jobs > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            return list(pool.map(_sweep_one, tasks))
    return [_sweep_one(t) for t in tasks]


# ---------------------------------------------------------------------------
# command bodies


def _emit(config: RunConfig, payload: dict, text_rows: Optional[List[str]] = None) -> None:
    """Write JSON (payload) or CSV rows, to --out or stdout."""
    if config.fmt == "csv" and text_rows is not None:
        text = "\n".join(text_rows) + "\n"
    else:
        text = serialize.dumps_json({"config": config.echo(), "result": payload})
    if config.out:
        with open(config.out, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _cmd_roots(config: RunConfig) -> None:
    state = parse_state_spec(config.state_spec)
    if not isinstance(state, SsrcState):
        raise DomainError("roots requires a fixed-N (ssrc) state")
    if config.fmt == "svg":
        raise DomainError("roots emits json or csv; use the plot subcommand for svg")
    con = find_roots(
        majorana_coeffs(state), RootOptions(residual_tol=config.tol_root)
    )
    if config.fmt == "csv":
        _emit(config, {}, serialize.constellation_csv_rows(con))
    else:
        _emit(config, {"constellation": serialize.constellation_to_dict(con)})


def _cmd_norm(config: RunConfig) -> None:
    state = parse_state_spec(config.state_spec)
    if not isinstance(state, SsrcState):
        raise DomainError("norm requires a fixed-N (ssrc) state")
    report = gaussian_disk_integral(state, DiskDomain(config.radius))
    payload = {"normalization": serialize.normalization_report_to_dict(report)}
    payload["normalized_within_tol"] = bool(
        abs(report.i_sphere - 1.0) <= config.tol_norm
    )
    if config.quadrature:
        value = ssrc_norm_integral(state, "quadrature")
        payload["quadrature"] = {
            "i_sphere": float(value),
            "deviation_from_exact": float(abs(value - report.i_sphere)),
        }
    _emit(config, payload)


def _cmd_truncate(config: RunConfig) -> None:
    state = parse_state_spec(config.state_spec)
    if not isinstance(state, SsrcState):
        raise DomainError("truncate requires a fixed-N (ssrc) state")
    report = find_truncation_K(state, config.radius, config.eta)
    scaling = stellar_scaling_report(state, config.radius, config.eta)
    _emit(
        config,
        {
            "truncation": serialize.truncation_report_to_dict(report),
            "scaling": serialize.scaling_record_to_dict(scaling),
        },
    )


def _cmd_witness(config: RunConfig) -> None:
    state = parse_state_spec(config.state_spec)
    if isinstance(state, CvState):
        verdict = stellar_witness(state)
    else:
        verdict = is_particle_separable(state)
    _emit(config, {"witness": serialize.verdict_to_dict(verdict)})


def _cmd_plot(config: RunConfig) -> None:
    if not config.out:
        raise DomainError("plot requires --out (an .svg path)")
    from .plotting import constellation_figure, save_svg

    state = parse_state_spec(config.state_spec)
    if not isinstance(state, SsrcState):
        raise DomainError("plot requires a fixed-N (ssrc) state")
    con = find_roots(
        majorana_coeffs(state), RootOptions(residual_tol=config.tol_root)
    )
    fig = constellation_figure(con, title=config.state_spec)
    save_svg(fig, config.out)


def _cmd_sweep(config: RunConfig) -> None:
    records = _run_sweep(config)
    rows = serialize.sweep_csv_rows(records)
    sidecar = {
        "config": config.echo(),
        "records": serialize.sweep_records_to_dicts(records),
    }
    if config.out:
        out = Path(config.out)
        with open(out, "w", encoding="utf-8", newline="\n") as handle:
            handle.write("\n".join(rows) + "\n")
        with open(out.with_suffix(".json"), "w", encoding="utf-8", newline="\n") as handle:
            handle.write(serialize.dumps_json(sidecar))
        from .plotting import save_svg, sweep_figure

        fig = sweep_figure(records, title=config.sweep_kind)
        save_svg(fig, str(out.with_suffix(".svg")))
    else:
        sys.stdout.write("\n".join(rows) + "\n")


_COMMANDS = {
    "roots": _cmd_roots,
    "norm": _cmd_norm,
    "truncate": _cmd_truncate,
    "witness": _cmd_witness,
    "plot": _cmd_plot,
    "sweep": _cmd_sweep,
}


# ---------------------------------------------------------------------------
# argument handling


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stellar-forge",
        description=(
            "Fixed-N two-mode states, Majorana root constellations, and their "
            "continuum (Bargmann / stellar-rank) limit."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, state_required=True):
        p.add_argument(
            "--config", help="INI-style config file; flags override its values"
        )
        if state_required:
            p.add_argument(
                "--state",
                help="fock:N,n | spin:N,re,im | cat:N,re,im | cvcat:re,im,M | file:path",
            )
        p.add_argument("--radius", type=float, help="disk radius R, scaled units")
        p.add_argument("--eta", type=float, help="uniform tail bound threshold")
        p.add_argument("--jobs", type=int, help="worker processes for sweeps")
        p.add_argument("--out", help="output path (default: stdout)")
        p.add_argument("--format", dest="fmt", choices=("json", "csv", "svg"))
        p.add_argument("--tol-root", type=float, help="root residual tolerance")
        p.add_argument("--tol-norm", type=float, help="normalization tolerance")
        p.add_argument("--seed", type=int, help="seed for randomized generation")

    p = sub.add_parser("roots", help="root constellation of a state")
    add_common(p)
    p = sub.add_parser("norm", help="normalization and disk-mass report")
    add_common(p)
    p.add_argument(
        "--quadrature",
        action="store_true",
        help="also cross-check the full integral by adaptive quadrature",
    )
    p = sub.add_parser("truncate", help="tail-bound truncation degree report")
    add_common(p)
    p = sub.add_parser("witness", help="separability / stellar-rank witness")
    add_common(p)
    p = sub.add_parser("plot", help="render the constellation to SVG")
    add_common(p)
    p = sub.add_parser("sweep", help="multi-N convergence experiments")
    p.add_argument("kind", choices=SWEEP_KINDS)
    add_common(p, state_required=False)
    p.add_argument("--w", help="complex parameter as re,im (e.g. 2,0)")
    p.add_argument("--N", dest="n_list", help="comma-separated N values")
    p.add_argument("--kmax", type=int, help="number of matched ladder roots")
    return parser


def _parse_complex_pair(text: str) -> complex:
    parts = text.split(",")
    if len(parts) == 1:
        return complex(float(parts[0]), 0.0)
    if len(parts) == 2:
        return complex(float(parts[0]), float(parts[1]))
    raise DomainError(f"expected re or re,im — got {text!r}")


def _load_config_file(path: str, command: str) -> Dict[str, str]:
    parser = configparser.ConfigParser()
    read = parser.read(path)
    if not read:
        raise DomainError(f"cannot read config file {path!r}")
    merged: Dict[str, str] = {}
    for section in ("common", command):
        if parser.has_section(section):
            merged.update(dict(parser.items(section)))
    return merged


def build_config(argv) -> RunConfig:
    args = _build_parser().parse_args(argv)
    command = args.command
    file_values: Dict[str, str] = {}
    if getattr(args, "config", None):
        file_values = _load_config_file(args.config, command)

    def pick(flag, key, cast, default):
        value = getattr(args, flag, None)
        if value is not None:
            return value
        if key in file_values:
            return cast(file_values[key])
        return default

    config = RunConfig(
        command=command,
        sweep_kind=getattr(args, "kind", None),
        state_spec=pick("state", "state", str, None),
        radius=pick("radius", "radius", float, 2.0),
        eta=pick("eta", "eta", float, 1e-6),
        jobs=pick(
            "jobs", "jobs", int, int(os.environ.get("STELLAR_FORGE_JOBS", "1"))
        ),
        out=pick("out", "out", str, None),
        fmt=pick("fmt", "format", str, "json"),
        tol_root=pick("tol_root", "tol-root", float, 1e-9),
        tol_norm=pick("tol_norm", "tol-norm", float, 1e-12),
        seed=pick("seed", "seed", int, 0),
        quadrature=bool(getattr(args, "quadrature", False)),
    )
    if command == "sweep":
        w_text = pick("w", "w", str, "1,0")
        config.w = _parse_complex_pair(w_text)
        n_text = pick("n_list", "n", str, "")
        if n_text:
            try:
                config.n_list = [int(v) for v in n_text.split(",")]
            except ValueError:
                raise DomainError(f"--N expects integers, got {n_text!r}") from None
        config.k_max = pick("kmax", "kmax", int, 3)
    if command != "sweep" and not config.state_spec:
        raise DomainError(f"{command} requires --state")
    config.validate()
    return config


def run(argv=None) -> int:
    """Execute one invocation; returns the process exit code."""
    try:
        config = build_config(argv)
        _COMMANDS[config.command](config)
    except NonConvergenceError as exc:
        print(f"stellar-forge: non-convergence: {exc}", file=sys.stderr)
        return 2
    except (DomainError, StellarForgeError, OSError, ValueError) as exc:
        print(f"stellar-forge: error: {exc}", file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
