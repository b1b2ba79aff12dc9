"""Command-line interface: spectra, totals, inverse solves, benchmark table.

All commands emit deterministic CSV (RFC-4180-style rows, '#'-prefixed
metadata preamble, shortest round-trip float formatting) so repeated
runs are byte-identical.  Exit codes: 0 success, 1 usage/validation,
2 I/O, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass

from . import __version__
from .bubble import FiniteSpectrumConfig, spectral_grid, spectrum_finite, totals_finite
from .core import (DomainError, MediumTransition, NumericalError,
                   build_geometry, build_geometry_from_kr, fs_to_s,
                   joule_to_ev, nm_to_m)
from .homogeneous import (POLARIZATIONS, photons_from_count_formula,
                          spectrum_infinite, total_photons_closed_form,
                          totals_closed_form)
from .inverse import solve_n_in, sweep_figure1

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_NUMERICAL = 3

# Benchmark emission scenarios: (n_gas_in, n_gas_out) with reference
# photon counts and <E>/(hbar omega_max) ratios for the standard
# sonoluminescence geometry.
TABLE1_CASES = ((2e4, 1.0), (71.0, 25.0), (68.0, 34.0), (9.0, 25.0), (1.0, 12.0))
TABLE1_REF_COUNT = (1.06e6, 1.00e6, 1.06e6, 0.955e6, 0.98e6)
TABLE1_REF_RATIO = (0.803, 0.750, 0.751, 0.750, 0.765)


@dataclass
class RunConfig:
    """Effective parameters of one invocation after merging defaults,
    config-file values and command-line flags (flags win)."""

    command: str
    params: dict


class _Parser(argparse.ArgumentParser):
    # argparse exits with code 2 on usage errors; the contract here is 1.
    def error(self, message):
        self.print_usage(sys.stderr)
        raise SystemExit_usage(message)


class SystemExit_usage(Exception):
    def __init__(self, message):
        self.message = message


_COMMON_DEFAULTS = {
    "n_liquid": 1.3,
    "radius_nm": 500.0,
    "cutoff_nm": None,
    "k_obs_r": 15.0,
}

_DEFAULTS = {
    "spectrum": {
        **_COMMON_DEFAULTS,
        "n_gas_in": None, "n_gas_out": None, "model": "both",
        "t0_fs": 1.0, "grid_points": 200, "tol": 1e-6, "l_tail_tol": 1e-4,
        "lmax": None, "grid_extend": 1.3, "output": None,
    },
    "totals": {
        **_COMMON_DEFAULTS,
        "n_in": None, "n_out": None, "model": "infinite",
        "t0_fs": 1.0, "grid_points": 200, "tol": 1e-6, "l_tail_tol": 1e-4,
        "lmax": None, "grid_extend": 1.3, "output": None,
    },
    "solve-nin": {
        "n_out": None, "target": None, "n_liquid": 1.3, "k_obs_r": 15.0,
        "output": None,
    },
    "table1": {
        **_COMMON_DEFAULTS,
        "grid_points": 200, "tol": 1e-6, "l_tail_tol": 1e-4,
        "lmax": None, "grid_extend": 1.3, "output": None,
    },
    "sweep": {
        "target": 1e6, "n_out_min": 1.0, "n_out_max": 100.0,
        "n_out_points": 200, "n_liquid": 1.3, "k_obs_r": 15.0,
        "output": None,
    },
}

_FLOAT_KEYS = {"n_liquid", "radius_nm", "cutoff_nm", "k_obs_r", "n_gas_in",
               "n_gas_out", "n_in", "n_out", "tol", "l_tail_tol",
               "grid_extend", "target", "n_out_min", "n_out_max", "t0_fs"}
_INT_KEYS = {"grid_points", "lmax", "n_out_points"}


def _build_parser() -> _Parser:
    parser = _Parser(prog="sonophoton",
                     description="Photon emission from a sudden refractive-"
                                 "index change inside a dielectric bubble")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command")

    def add_geometry(p):
        p.add_argument("--n-liquid", type=float, default=None,
                       help="ambient liquid refractive index (default 1.3)")
        p.add_argument("--radius-nm", type=float, default=None,
                       help="bubble radius in nm (default 500)")
        p.add_argument("--cutoff-nm", type=float, default=None,
                       help="observed cutoff wavelength in the liquid, nm "
                            "(overrides --k-obs-r)")
        p.add_argument("--k-obs-r", type=float, default=None,
                       help="dimensionless k_observed * R (default 15)")

    def add_numerics(p):
        p.add_argument("--grid-points", type=int, default=None,
                       help="frequency samples up to the cutoff (default 200)")
        p.add_argument("--tol", type=float, default=None,
                       help="relative quadrature tolerance (default 1e-6)")
        p.add_argument("--l-tail-tol", type=float, default=None,
                       help="angular-momentum tail tolerance (default 1e-4)")
        p.add_argument("--lmax", type=int, default=None,
                       help="explicit angular-momentum cutoff (default auto)")
        p.add_argument("--grid-extend", type=float, default=None,
                       help="grid extension factor past the cutoff (default 1.3)")

    def add_common(p):
        p.add_argument("--config", type=str, default=None,
                       help="key = value file; flags override file values")
        p.add_argument("--output", type=str, default=None,
                       help="CSV output path (default: stdout)")

    p = sub.add_parser("spectrum", help="dN/domega_out curve")
    p.add_argument("--n-gas-in", type=float, default=None)
    p.add_argument("--n-gas-out", type=float, default=None)
    p.add_argument("--model", choices=("infinite", "finite", "both"),
                   default=None)
    p.add_argument("--t0-fs", type=float, default=None,
                   help="transition timescale in fs (metadata; the sudden-"
                        "limit spectra do not depend on it)")
    add_geometry(p)
    add_numerics(p)
    add_common(p)

    p = sub.add_parser("totals", help="photon count and emitted energy")
    p.add_argument("--n-in", type=float, default=None)
    p.add_argument("--n-out", type=float, default=None)
    p.add_argument("--model", choices=("infinite", "finite", "both"),
                   default=None)
    p.add_argument("--t0-fs", type=float, default=None,
                   help="transition timescale in fs (metadata; the sudden-"
                        "limit totals do not depend on it)")
    add_geometry(p)
    add_numerics(p)
    add_common(p)

    p = sub.add_parser("solve-nin", help="both n_in branches for a target count")
    p.add_argument("--n-out", type=float, default=None)
    p.add_argument("--target", type=float, default=None)
    p.add_argument("--n-liquid", type=float, default=None)
    p.add_argument("--k-obs-r", type=float, default=None)
    add_common(p)

    p = sub.add_parser("table1", help="benchmark table of five emission cases")
    add_geometry(p)
    add_numerics(p)
    add_common(p)

    p = sub.add_parser("sweep", help="two-branch n_in(n_out) curve")
    p.add_argument("--target", type=float, default=None)
    p.add_argument("--n-out-min", type=float, default=None)
    p.add_argument("--n-out-max", type=float, default=None)
    p.add_argument("--n-out-points", type=int, default=None)
    p.add_argument("--n-liquid", type=float, default=None)
    p.add_argument("--k-obs-r", type=float, default=None)
    add_common(p)

    return parser


def _read_config_file(path: str) -> dict:
    values = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, 1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise DomainError(
                        f"{path}:{lineno}: expected 'key = value', got {raw!r}")
                key, _, val = line.partition("=")
                values[key.strip().replace("-", "_")] = val.strip()
    except OSError as exc:
        raise _IOFailure(f"cannot read config file {path}: {exc}") from exc
    return values


class _IOFailure(Exception):
    def __init__(self, message):
        self.message = message


def _coerce(key: str, raw: str):
    try:
        if key in _INT_KEYS:
            return int(raw)
        if key in _FLOAT_KEYS:
            return float(raw)
    except ValueError as exc:
        raise DomainError(f"config value {key} = {raw!r} is not numeric") from exc
    return raw


def _merge(command: str, args: argparse.Namespace) -> RunConfig:
    params = dict(_DEFAULTS[command])
    cfg_path = getattr(args, "config", None)
    if cfg_path:
        for key, raw in _read_config_file(cfg_path).items():
            if key in params:
                params[key] = _coerce(key, raw)
            else:
                raise DomainError(f"unknown config key {key!r} for {command}")
    for key in params:
        flag_val = getattr(args, key, None)
        if flag_val is not None:
            params[key] = flag_val
    return RunConfig(command=command, params=params)


def _require(params: dict, *names: str) -> None:
    for name in names:
        if params.get(name) is None:
            raise DomainError(
                f"--{name.replace('_', '-')} is required (positive number)")


def _geometry(params: dict, n_out: float):
    radius = nm_to_m(params["radius_nm"])
    if params.get("cutoff_nm") is not None:
        return build_geometry(radius, params["n_liquid"],
                              nm_to_m(params["cutoff_nm"]), n_out)
    return build_geometry_from_kr(params["k_obs_r"], params["n_liquid"],
                                  n_out, radius)


def _finite_config(params: dict) -> FiniteSpectrumConfig:
    return FiniteSpectrumConfig(l_max=params.get("lmax"),
                                quad_rel_tol=params["tol"],
                                l_tail_tol=params["l_tail_tol"],
                                grid_points=params["grid_points"],
                                grid_extend=params["grid_extend"])


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _preamble(config: RunConfig, extra: dict | None = None) -> list[str]:
    lines = [f"# sonophoton {__version__}",
             f"# command = {config.command}",
             f"# polarization_factor = {_fmt(POLARIZATIONS)}"]
    merged = dict(config.params)
    if extra:
        merged.update(extra)
    for key in sorted(merged):
        if key == "output":
            continue
        lines.append(f"# {key} = {_fmt(merged[key])}")
    return lines


def _emit(lines: list[str], output: str | None) -> None:
    text = "\n".join(lines) + "\n"
    if output is None:
        sys.stdout.write(text)
        return
    try:
        with open(output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise _IOFailure(f"cannot write {output}: {exc}") from exc


def cmd_spectrum(config: RunConfig) -> int:
    params = config.params
    _require(params, "n_gas_in", "n_gas_out")
    n_in, n_out = params["n_gas_in"], params["n_gas_out"]
    transition = MediumTransition(n_in=n_in, n_out=n_out,
                                  t0=fs_to_s(params["t0_fs"]))
    geometry = _geometry(params, n_out)
    fconfig = _finite_config(params)
    model = params["model"]

    omega_grid, x_grid = spectral_grid(geometry, fconfig)
    finite_vals = [None] * len(omega_grid)
    infinite_vals = [None] * len(omega_grid)
    if model in ("finite", "both"):
        dens = spectrum_finite(transition, params["n_liquid"], geometry, fconfig)
        finite_vals = list(dens.values)
    if model in ("infinite", "both"):
        infinite_vals = [spectrum_infinite(transition, geometry, w)
                         for w in omega_grid]

    lines = _preamble(config, {"k_gas_cutoff_x": geometry.k_gas_cutoff
                               * geometry.radius})
    lines.append("x,omega_out_rad_s,nu_Hz,dNdomega_infinite,dNdomega_finite")
    for i, omega in enumerate(omega_grid):
        lines.append(",".join([
            _fmt(x_grid[i]), _fmt(omega), _fmt(omega / (2.0 * math.pi)),
            _fmt(infinite_vals[i]), _fmt(finite_vals[i])]))
    _emit(lines, params["output"])
    return EXIT_OK


def cmd_totals(config: RunConfig) -> int:
    params = config.params
    _require(params, "n_in", "n_out")
    transition = MediumTransition(n_in=params["n_in"], n_out=params["n_out"],
                                  t0=fs_to_s(params["t0_fs"]))
    geometry = _geometry(params, params["n_out"])
    model = params["model"]
    rows = []
    if model in ("infinite", "both"):
        rows.append(("infinite", totals_closed_form(transition, geometry)))
    if model in ("finite", "both"):
        rows.append(("finite", totals_finite(transition, params["n_liquid"],
                                             geometry, _finite_config(params))))
    lines = _preamble(config)
    lines.append("model,photon_count,total_energy_J,mean_energy_J,"
                 "mean_energy_eV,mean_over_cutoff")
    for name, summary in rows:
        lines.append(",".join([
            name, _fmt(summary.photon_count), _fmt(summary.total_energy),
            _fmt(summary.mean_energy), _fmt(joule_to_ev(summary.mean_energy)),
            _fmt(summary.mean_over_cutoff)]))
    _emit(lines, params["output"])
    return EXIT_OK


def cmd_solve_nin(config: RunConfig) -> int:
    params = config.params
    _require(params, "n_out", "target")
    pair = solve_n_in(params["n_out"], params["target"], params["n_liquid"],
                      params["k_obs_r"])
    lines = _preamble(config)
    lines.append("branch,n_in,back_substituted_count,relative_residual")
    for name, root in (("low", pair.n_in_low), ("high", pair.n_in_high)):
        back = photons_from_count_formula(root, params["n_out"],
                                          params["n_liquid"], params["k_obs_r"])
        resid = abs(back - params["target"]) / params["target"]
        lines.append(",".join([name, _fmt(root), _fmt(back), _fmt(resid)]))
    _emit(lines, params["output"])
    return EXIT_OK


def cmd_table1(config: RunConfig) -> int:
    params = config.params
    fconfig = _finite_config(params)
    lines = _preamble(config)
    lines.append("n_gas_in,n_gas_out,N_finite,N_reference,N_rel_dev,"
                 "ratio_finite,ratio_reference,ratio_dev,N_closed_form,"
                 "finite_over_closed,status")
    failures = 0
    report = ["  n_in   n_out     N_finite    N_ref    dev%   "
              "<E>/hw_max   ref    dev     N_closed  fin/closed"]
    for idx, (n_in, n_out) in enumerate(TABLE1_CASES):
        transition = MediumTransition(n_in=n_in, n_out=n_out)
        geometry = _geometry(params, n_out)
        closed = total_photons_closed_form(transition, geometry)
        try:
            summary = totals_finite(transition, params["n_liquid"], geometry,
                                    fconfig)
        except NumericalError as exc:
            failures += 1
            lines.append(",".join([_fmt(n_in), _fmt(n_out), "",
                                   _fmt(TABLE1_REF_COUNT[idx]), "", "",
                                   _fmt(TABLE1_REF_RATIO[idx]), "",
                                   _fmt(closed), "", f"failed: {exc}"]))
            report.append(f"  {n_in:<7g} {n_out:<7g} FAILED: {exc}")
            continue
        n_fin = summary.photon_count
        ratio = summary.mean_over_cutoff
        dev_n = n_fin / TABLE1_REF_COUNT[idx] - 1.0
        dev_r = ratio - TABLE1_REF_RATIO[idx]
        lines.append(",".join([
            _fmt(n_in), _fmt(n_out), _fmt(n_fin), _fmt(TABLE1_REF_COUNT[idx]),
            _fmt(dev_n), _fmt(ratio), _fmt(TABLE1_REF_RATIO[idx]), _fmt(dev_r),
            _fmt(closed), _fmt(n_fin / closed), "ok"]))
        report.append(
            f"  {n_in:<7g} {n_out:<7g} {n_fin:12.4e} {TABLE1_REF_COUNT[idx]:9.3e}"
            f" {100 * dev_n:+6.1f}   {ratio:8.3f} {TABLE1_REF_RATIO[idx]:6.3f}"
            f" {dev_r:+6.3f} {closed:12.4e} {n_fin / closed:9.3f}")
    if params["output"] is not None:
        _emit(lines, params["output"])
        sys.stdout.write("\n".join(report) + "\n")
    else:
        _emit(lines, None)
        sys.stderr.write("\n".join(report) + "\n")
    return EXIT_NUMERICAL if failures else EXIT_OK


def cmd_sweep(config: RunConfig) -> int:
    params = config.params
    _require(params, "target", "n_out_min", "n_out_max", "n_out_points")
    lo, hi, npts = params["n_out_min"], params["n_out_max"], params["n_out_points"]
    if npts < 2 or not (0.0 < lo < hi):
        raise DomainError("need 0 < n-out-min < n-out-max and n-out-points >= 2")
    grid = [lo + (hi - lo) * i / (npts - 1) for i in range(npts)]
    rows = sweep_figure1(params["target"], params["n_liquid"],
                         params["k_obs_r"], grid)
    lines = _preamble(config)
    lines.append("n_out,n_in_low,n_in_high")
    for n_out, low, high in rows:
        lines.append(",".join([_fmt(n_out), _fmt(low), _fmt(high)]))
    _emit(lines, params["output"])
    return EXIT_OK


_HANDLERS = {
    "spectrum": cmd_spectrum,
    "totals": cmd_totals,
    "solve-nin": cmd_solve_nin,
    "table1": cmd_table1,
    "sweep": cmd_sweep,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            parser.print_usage(sys.stderr)
            return EXIT_USAGE
        config = _merge(args.command, args)
        return _HANDLERS[args.command](config)
    except SystemExit_usage as exc:
        sys.stderr.write(f"error: {exc.message}\n")
        return EXIT_USAGE
    except DomainError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except _IOFailure as exc:
        sys.stderr.write(f"error: {exc.message}\n")
        return EXIT_IO
    except NumericalError as exc:
        sys.stderr.write(f"numerical error: {exc}\n")
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
