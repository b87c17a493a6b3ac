"""Command-line front end.

Subcommands write CSV to standard output or ``--output``::

    cylrad spectrum --material tungsten-298 --radius 5e-6 --temperature 298
    cylrad sweep-radius --material gold-drude --temperature 300 --radius-sweep 1e-8:1e-4:40
    cylrad total --material sic --radius 1e-8 --temperature 300
    cylrad plate --material graphite-uniaxial --temperature 300 --allow-extrapolation
    cylrad selfcheck

Options may also come from a JSON file (``--config``); flags win.
Exit status: 0 success, 1 failed self-check, 2 configuration error,
3 numerical non-convergence, 4 material window violation.
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from dataclasses import dataclass, fields, replace

import numpy as np

from .constants import KB_EV, ev_to_wavelength_um, wavelength_um_to_ev
from .errors import ConfigError, ConvergenceError, DomainError, OutOfWindowError, TruncationError
from .materials import builtin_materials, get_material, isotropic, load_tabulated
from .plate import PlateTolerances, plate_emissivity
from .radiation import DEFAULT_TOLERANCES, spectral_emissivity, total_radiation
from .selfcheck import run_selfcheck

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG = 2
EXIT_CONVERGENCE = 3
EXIT_WINDOW = 4

HEADERS = {
    "spectrum": ["omega_ev", "lambda_um", "h_n", "h_m", "h_total", "i_omega"],
    "sweep-radius": ["radius_m", "h_n_per_len", "h_m_per_len", "h_total_per_len",
                     "normalized", "i_total"],
    "total": ["radius_m", "h_n_per_len", "h_m_per_len", "h_total_per_len",
              "normalized", "i_total"],
    "plate": ["s_m", "s_n", "s_total", "i_plate"],
}


@dataclass
class RunConfig:
    command: str
    material: str | None = None
    data_file: str | None = None
    radius: float | None = None
    radius_sweep: tuple | None = None
    temperature: float | None = None
    env_temperature: float = 0.0
    wavelengths: tuple | None = None
    omega: tuple | None = None
    tolerance: float | None = None
    theta_tolerance: float | None = None
    truncation_tolerance: float | None = None
    allow_extrapolation: bool = False
    output: str | None = None
    workers: int | None = None
    debug_eps_offset: float = 0.0

    def validate(self):
        if self.command == "selfcheck":
            return
        if self.temperature is None or self.temperature < 0:
            raise ConfigError("--temperature must be given and non-negative")
        if self.env_temperature < 0:
            raise ConfigError("--env-temperature must be non-negative")
        if self.command != "plate" and self.material is None and self.data_file is None:
            raise ConfigError("--material or --data-file is required")
        if self.command == "plate" and self.material is None and self.data_file is None:
            raise ConfigError("--material or --data-file is required")
        if self.command in ("spectrum", "total"):
            if self.radius is None or not self.radius > 0:
                raise ConfigError("--radius must be positive")
        if self.command == "sweep-radius":
            if self.radius_sweep is None:
                raise ConfigError("--radius-sweep MIN:MAX:N is required")
            lo, hi, n = self.radius_sweep
            if not (0 < lo < hi) or n < 2:
                raise ConfigError("--radius-sweep needs 0 < MIN < MAX and N >= 2")
        for name in ("wavelengths", "omega"):
            rng = getattr(self, name)
            if rng is not None and (not (0 < rng[0] < rng[1]) or rng[2] < 2):
                raise ConfigError(f"--{name} needs 0 < MIN < MAX and N >= 2")
        if self.temperature == 0 and self.env_temperature == 0:
            raise ConfigError("at least one temperature must be positive")


def _triple(text):
    if isinstance(text, (list, tuple)):
        parts = list(text)
    else:
        parts = str(text).split(":")
    if len(parts) != 3:
        raise ConfigError(f"expected MIN:MAX:N, got {text!r}")
    try:
        return float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise ConfigError(f"bad range {text!r}: {exc}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cylrad", description="Heat radiation of long cylinders.")
    sub = p.add_subparsers(dest="command", required=True)
    for name, helptext in (
        ("spectrum", "spectral power per length and polarization"),
        ("sweep-radius", "total power per length over a log-spaced radius sweep"),
        ("total", "total power per length for one radius"),
        ("plate", "plate (large radius) emission and its M/N split"),
        ("selfcheck", "run the embedded invariant suite"),
    ):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("--config", help="JSON file with option values; flags override it")
        if name == "selfcheck":
            s.add_argument("--debug-eps-offset", type=float, default=None, help=argparse.SUPPRESS)
            continue
        s.add_argument("--material", help=f"built-in name {sorted(builtin_materials())} or a data file")
        s.add_argument("--data-file", help="tabulated eps file: energy_eV re_eps im_eps per line")
        s.add_argument("--temperature", type=float, help="cylinder temperature in K")
        s.add_argument("--allow-extrapolation", action="store_true", default=None,
                       help="evaluate fitted models outside their stated window")
        s.add_argument("--output", "-o", help="CSV destination (default: standard output)")
        s.add_argument("--tolerance", type=float, help="relative tolerance of the frequency integral")
        if name != "plate":
            s.add_argument("--env-temperature", type=float, help="environment temperature in K (default 0)")
            s.add_argument("--theta-tolerance", type=float, help="relative tolerance of the angular integral")
            s.add_argument("--truncation-tolerance", type=float, help="multipole tail tolerance")
            s.add_argument("--workers", type=int, help="worker processes (default: CYLRAD_WORKERS or 1)")
        if name in ("spectrum", "total"):
            s.add_argument("--radius", type=float, help="radius in m")
        if name == "sweep-radius":
            s.add_argument("--radius-sweep", help="MIN:MAX:N radii in m, log-spaced")
        if name == "spectrum":
            g = s.add_mutually_exclusive_group()
            g.add_argument("--wavelengths", help="MIN:MAX:N wavelengths in um, log-spaced")
            g.add_argument("--omega", help="MIN:MAX:N photon energies in eV, log-spaced")
    return p


def config_from_args(args) -> RunConfig:
    """Merge the JSON file (if any) with the flags given on the command line."""
    values = {}
    if getattr(args, "config", None):
        try:
            with open(args.config) as fh:
                values = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config!r}: {exc}") from None
        if not isinstance(values, dict):
            raise ConfigError("config file must hold a JSON object")
        values = {k.replace("-", "_"): v for k, v in values.items()}
    known = {f.name for f in fields(RunConfig)}
    unknown = set(values) - known
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    for key, val in vars(args).items():
        if key in known and val is not None:
            values[key] = val
    values["command"] = args.command
    for key in ("radius_sweep", "wavelengths", "omega"):
        if values.get(key) is not None:
            values[key] = _triple(values[key])
    try:
        cfg = RunConfig(**values)
        for key in ("radius", "temperature", "env_temperature", "tolerance", "theta_tolerance",
                    "truncation_tolerance", "debug_eps_offset"):
            if getattr(cfg, key) is not None:
                setattr(cfg, key, float(getattr(cfg, key)))
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from None
    cfg.validate()
    return cfg


def resolve_material(cfg: RunConfig):
    path = cfg.data_file
    if path is None and cfg.material not in builtin_materials():
        if cfg.material is not None and os.path.exists(cfg.material):
            path = cfg.material
        else:
            raise ConfigError(f"unknown material {cfg.material!r}; choose from "
                              f"{sorted(builtin_materials())} or pass a data file")
    if path is not None:
        return isotropic(load_tabulated(path), name=os.path.basename(path))
    return get_material(cfg.material)


def _tolerances(cfg: RunConfig):
    tol = DEFAULT_TOLERANCES
    if cfg.tolerance is not None:
        tol = replace(tol, omega_rtol=cfg.tolerance)
    if cfg.theta_tolerance is not None:
        tol = replace(tol, theta_rtol=cfg.theta_tolerance)
    if cfg.truncation_tolerance is not None:
        tol = replace(tol, truncation=cfg.truncation_tolerance)
    return tol


def _grid(cfg: RunConfig):
    if cfg.omega is not None:
        lo, hi, n = cfg.omega
        return np.geomspace(lo, hi, n)
    if cfg.wavelengths is not None:
        lo, hi, n = cfg.wavelengths
        return wavelength_um_to_ev(np.geomspace(hi, lo, n))
    kT = KB_EV * max(cfg.temperature, cfg.env_temperature)
    return np.geomspace(0.02 * kT, 40 * kT, 100)


def _fmt(v) -> str:
    return repr(float(v))


def run(cfg: RunConfig, out) -> int:
    """Execute one configured command, writing CSV rows to ``out``."""
    if cfg.command == "selfcheck":
        results = run_selfcheck(eps_offset=cfg.debug_eps_offset or 0.0)
        for r in results:
            out.write(r.line() + "\n")
        ok = all(r.passed for r in results)
        out.write("selfcheck: " + ("all checks passed" if ok else "FAILED") + "\n")
        return EXIT_OK if ok else EXIT_CHECK_FAILED

    material = resolve_material(cfg)
    rows = []
    if cfg.command == "spectrum":
        spec = spectral_emissivity(material, cfg.radius, cfg.temperature, _grid(cfg),
                                   _tolerances(cfg), cfg.allow_extrapolation, cfg.workers)
        for w, lam, hn, hm, ht, i in zip(spec.omega_grid, ev_to_wavelength_um(spec.omega_grid),
                                         spec.h_n, spec.h_m, spec.h_total, spec.i_omega):
            rows.append([w, lam, hn, hm, ht, i])
    elif cfg.command in ("sweep-radius", "total"):
        if cfg.command == "total":
            radii = [cfg.radius]
        else:
            lo, hi, n = cfg.radius_sweep
            radii = np.geomspace(lo, hi, n)
        for R in radii:
            r = total_radiation(material, float(R), cfg.temperature, cfg.env_temperature,
                                _tolerances(cfg), cfg.allow_extrapolation, cfg.workers)
            rows.append([R, r.h_npol, r.h_mpol, r.h_total, r.normalized, r.i_total])
    elif cfg.command == "plate":
        tol = PlateTolerances()
        if cfg.tolerance is not None:
            tol = replace(tol, omega_rtol=cfg.tolerance)
        r = plate_emissivity(material, cfg.temperature, tol, cfg.allow_extrapolation)
        rows.append([r.s_m, r.s_n, r.s_total, r.i_plate])
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(HEADERS[cfg.command])
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse reports usage errors with status 2
        return int(exc.code) if exc.code is not None else EXIT_CONFIG
    try:
        cfg = config_from_args(args)
        if cfg.output and cfg.command != "selfcheck":
            from io import StringIO

            buf = StringIO()
            status = run(cfg, buf)
            with open(cfg.output, "w", newline="") as fh:
                fh.write(buf.getvalue())
            return status
        return run(cfg, sys.stdout)
    except (ConfigError, DomainError, KeyError) as exc:
        print(f"cylrad: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ConvergenceError, TruncationError) as exc:
        achieved = getattr(exc, "achieved", None)
        extra = f" (achieved {achieved:.3g})" if isinstance(achieved, float) else ""
        print(f"cylrad: numerical non-convergence: {exc}{extra}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except OutOfWindowError as exc:
        print(f"cylrad: material window violation: {exc}", file=sys.stderr)
        return EXIT_WINDOW


if __name__ == "__main__":
    sys.exit(main())
