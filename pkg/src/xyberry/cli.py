"""Deterministic command-line front end.

Subcommands produce CSV/JSON data products (criticality maps, phase
surfaces, exponent fits, verification summaries).  Identical configuration
plus seed yields byte-identical artifacts; every artifact is written to a
temporary file and atomically renamed, so a failing run never leaves a
partial file behind.  Failures print machine-readable JSON on stderr and
exit nonzero (2 for usage errors, 1 for runtime errors).

Flags may also be supplied through a JSON config file (``--config``); flags
given explicitly on the command line override file values, and unknown file
keys are rejected.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import __version__
from .errors import XYBerryError
from .lattice import LatticeParams, effective_xy, mott_regime_check
from .model import (
    DEFAULT_CRITICAL_TOL,
    XYParams,
    classify_criticality,
    ground_energy,
)
from .observables import magnetization_analytic, phase_magnetization_identity
from .oracle import (
    LoopDiscretization,
    discrete_loop_phase,
    ed_ground_energy,
    magnetization_ed,
)
from .phases import (
    circular_distance,
    ground_phase,
    phase_surface,
    relative_phase_thermo,
    write_phase_surface_csv,
)
from .scaling import (
    DEFAULT_FIT_WINDOW,
    SweepSpec,
    continuum_min_gap,
    finite_min_gap,
    fit_exponent,
    gap_sweep,
    step_detect,
    write_step_trace_csv,
)

__all__ = ["RunConfig", "parse_config", "execute", "main"]

COMMANDS = ("phase-surface", "gap-map", "verify", "scaling-fit", "step-trace", "lattice-map")

# Verification thresholds: discrete-vs-closed-form loop phase, energy and
# magnetization against the dense oracle, and the phase/magnetization
# identity evaluated on both sides.
VERIFY_PHASE_TOL = 1e-3
VERIFY_ENERGY_TOL = 1e-8
VERIFY_MAGNETIZATION_TOL = 1e-8
VERIFY_IDENTITY_TOL = 1e-10


class UsageError(XYBerryError):
    """Bad flags, bad config file, or inconsistent values."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # raise instead of printing + sys.exit
        raise UsageError(message)


@dataclass
class RunConfig:
    """A fully validated invocation: command, parameters, output, seed."""

    command: str
    parameters: dict = field(default_factory=dict)
    output_path: Optional[str] = None
    seed: int = 0


def parse_range(text: str) -> np.ndarray:
    """Parse ``min:max:step`` into grid values min + i*step.

    Inclusive of min, exclusive of max beyond floating tolerance: the point
    count is floor((max - min)/step + 1e-9), which makes grids reproducible
    regardless of rounding in max - min.
    """
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"range must be min:max:step, got {text!r}")
    try:
        lo, hi, step = (float(p) for p in parts)
    except ValueError as exc:
        raise UsageError(f"non-numeric range component in {text!r}") from exc
    if step <= 0:
        raise UsageError(f"range step must be positive, got {step}")
    if hi < lo:
        raise UsageError(f"range must have max >= min, got {text!r}")
    count = int(math.floor((hi - lo) / step + 1e-9))
    count = max(count, 1)
    return lo + step * np.arange(count)


def _parse_floats(text: str) -> list[float]:
    try:
        return [float(p) for p in text.split(",") if p != ""]
    except ValueError as exc:
        raise UsageError(f"non-numeric list entry in {text!r}") from exc


def _parse_sites(text: str) -> list[int]:
    try:
        ns = [int(p) for p in text.split(",") if p != ""]
    except ValueError as exc:
        raise UsageError(f"non-integer site count in {text!r}") from exc
    for n in ns:
        if n < 4 or n % 2 != 0:
            raise UsageError(
                f"n_sites must be even and >= 4 (momenta pair as (k, -k)), got {n}"
            )
    return ns


_FLAG_SPECS = {
    "phase-surface": {
        "lambda": dict(metavar="MIN:MAX:STEP", help="field grid"),
        "gamma": dict(metavar="MIN:MAX:STEP", help="anisotropy grid"),
        "n": dict(help="chain length for the finite-size phases (default 1000)"),
        "critical-tol": dict(help="manifold membership tolerance (default 1e-9)"),
        "out": dict(help="output CSV path"),
    },
    "gap-map": {
        "lambda": dict(metavar="MIN:MAX:STEP", help="field grid"),
        "gamma": dict(metavar="MIN:MAX:STEP", help="anisotropy grid"),
        "n": dict(help="chain length; omit for the continuum minimum"),
        "critical-tol": dict(help="manifold membership tolerance (default 1e-9)"),
        "out": dict(help="output CSV path"),
    },
    "verify": {
        "n": dict(metavar="N[,N...]", help="even chain lengths (default 4,6)"),
        "steps": dict(help="loop discretization steps (default 2000)"),
        "draws": dict(help="random parameter draws (default 10)"),
        "seed": dict(help="RNG seed for the draws (default 0)"),
        "out": dict(help="summary JSON path (optional; summary always printed)"),
    },
    "scaling-fit": {
        "window": dict(metavar="LO:HI", help="fit window in |g - g_c| (default 1e-3:1e-1)"),
        "samples": dict(help="sweep samples (default 24)"),
        "n": dict(help="chain length; omit for continuum sweeps"),
        "out": dict(help="fit JSON path (optional; JSON always printed)"),
    },
    "step-trace": {
        "gamma": dict(metavar="G[,G...]", help="anisotropy values to trace"),
        "lambda": dict(metavar="MIN:MAX:STEP", help="field grid (default 0:2:0.005)"),
        "out": dict(help="output CSV path"),
    },
    "lattice-map": {
        "input": dict(help="lattice parameters JSON file"),
        "threshold": dict(help="Mott-regime threshold (default 0.1)"),
        "out": dict(help="output JSON path (optional; JSON always printed)"),
    },
}


def _build_parser() -> _Parser:
    parser = _Parser(prog="xyberry", description=__doc__)
    parser.add_argument("--version", action="version", version=f"xyberry {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    for command, flags in _FLAG_SPECS.items():
        p = sub.add_parser(command)
        p.add_argument("--config", default=None, help="JSON file of flag values")
        if command == "scaling-fit":
            p.add_argument("approach", choices=("ising", "xx"), nargs="?", default=None)
        for name, kw in flags.items():
            p.add_argument(f"--{name}", dest=name.replace("-", "_"), default=None, **kw)
    return parser


def _merge_config(args: argparse.Namespace, command: str) -> dict:
    """Fill unset flags from the JSON config file; explicit flags win."""
    values = {k.replace("-", "_"): None for k in _FLAG_SPECS[command]}
    if command == "scaling-fit":
        values["approach"] = None
    for key in values:
        values[key] = getattr(args, key, None)
    if args.config is not None:
        try:
            with open(args.config, encoding="utf-8") as fh:
                file_values = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"unreadable config file {args.config}: {exc}") from exc
        if not isinstance(file_values, dict):
            raise UsageError("config file must hold a JSON object")
        for key, val in file_values.items():
            dest = key.replace("-", "_")
            if dest not in values:
                raise UsageError(f"unknown config key {key!r} for {command}")
            if values[dest] is None:
                values[dest] = str(val) if not isinstance(val, str) else val
    return values


def parse_config(argv=None) -> RunConfig:
    """Parse flags (and optional config file) into a validated RunConfig."""
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        raise UsageError(f"a command is required: one of {', '.join(COMMANDS)}")
    command = args.command
    raw = _merge_config(args, command)

    params: dict = {}
    out = raw.get("out")
    seed = 0
    if command in ("phase-surface", "gap-map"):
        if raw["lambda"] is None or raw["gamma"] is None:
            raise UsageError(f"{command} needs --lambda and --gamma ranges")
        params["lam_values"] = parse_range(raw["lambda"])
        params["gamma_values"] = parse_range(raw["gamma"])
        params["tol"] = (
            DEFAULT_CRITICAL_TOL if raw["critical_tol"] is None else float(raw["critical_tol"])
        )
        if params["tol"] <= 0:
            raise UsageError("critical tolerance must be positive")
        if command == "phase-surface":
            params["n_sites"] = _parse_sites(raw["n"] or "1000")[0]
        else:
            params["n_sites"] = None if raw["n"] is None else _parse_sites(raw["n"])[0]
        if out is None:
            raise UsageError(f"{command} needs --out")
    elif command == "verify":
        params["n_sites"] = _parse_sites(raw["n"] or "4,6")
        params["steps"] = int(raw["steps"] or 2000)
        params["draws"] = int(raw["draws"] or 10)
        if params["steps"] < 8:
            raise UsageError("steps must be >= 8")
        if params["draws"] < 1:
            raise UsageError("draws must be >= 1")
        seed = int(raw["seed"] or 0)
    elif command == "scaling-fit":
        if raw["approach"] is None:
            raise UsageError("scaling-fit needs an approach: ising or xx")
        params["approach"] = raw["approach"]
        window = raw["window"] or f"{DEFAULT_FIT_WINDOW[0]}:{DEFAULT_FIT_WINDOW[1]}"
        parts = window.split(":")
        if len(parts) != 2:
            raise UsageError(f"window must be LO:HI, got {window!r}")
        try:
            params["window"] = (float(parts[0]), float(parts[1]))
        except ValueError as exc:
            raise UsageError(f"non-numeric window {window!r}") from exc
        if not 0 < params["window"][0] < params["window"][1]:
            raise UsageError("window must satisfy 0 < LO < HI")
        params["samples"] = int(raw["samples"] or 24)
        if params["samples"] < 8:
            raise UsageError("samples must be >= 8")
        params["n_sites"] = None if raw["n"] is None else _parse_sites(raw["n"])[0]
    elif command == "step-trace":
        if raw["gamma"] is None:
            raise UsageError("step-trace needs --gamma values")
        params["gammas"] = _parse_floats(raw["gamma"])
        if any(g == 0.0 for g in params["gammas"]):
            raise UsageError("step-trace gamma values must be nonzero (XX line is critical)")
        params["lam_values"] = parse_range(raw["lambda"] or "0:2:0.005")
        if out is None:
            raise UsageError("step-trace needs --out")
    elif command == "lattice-map":
        if raw["input"] is None:
            raise UsageError("lattice-map needs --input JSON")
        params["input"] = raw["input"]
        params["threshold"] = float(raw["threshold"] or 0.1)
        if params["threshold"] <= 0:
            raise UsageError("threshold must be positive")
    return RunConfig(command=command, parameters=params, output_path=out, seed=seed)


def _atomic_write(path: str, text: str):
    tmp = f"{path}.tmp"
    with open(tmp, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _fmt(x: float) -> str:
    return "nan" if math.isnan(x) else format(x, ".12g")


def _run_phase_surface(cfg: RunConfig) -> int:
    p = cfg.parameters
    rows = phase_surface(p["lam_values"], p["gamma_values"], p["n_sites"], p["tol"])
    tmp = f"{cfg.output_path}.tmp"
    write_phase_surface_csv(rows, tmp)
    os.replace(tmp, cfg.output_path)
    flagged = sum(1 for r in rows if r[5] == "critical")
    print(f"wrote {cfg.output_path}: {len(rows)} rows ({flagged} flagged critical)")
    return 0


def _run_gap_map(cfg: RunConfig) -> int:
    p = cfg.parameters
    lines = ["lambda,gamma,min_gap,tag,distance,status"]
    flagged = 0
    for lam in p["lam_values"]:
        for gamma in p["gamma_values"]:
            c = classify_criticality(lam, gamma, p["tol"])
            if p["n_sites"] is None:
                gap = continuum_min_gap(lam, gamma)
            else:
                gap = finite_min_gap(p["n_sites"], lam, gamma)
            status = "ok" if c.tag.value == "NonCritical" else "critical"
            flagged += status == "critical"
            lines.append(
                f"{_fmt(lam)},{_fmt(gamma)},{_fmt(gap)},{c.tag.value},{_fmt(c.distance)},{status}"
            )
    _atomic_write(cfg.output_path, "\n".join(lines) + "\n")
    print(f"wrote {cfg.output_path}: {len(lines) - 1} rows ({flagged} flagged critical)")
    return 0


def draw_noncritical_points(rng, draws: int, margin: float = 0.05):
    """Seeded rejection sampling of lam in [-2,2], gamma in [0.1,1.5]."""
    points = []
    while len(points) < draws:
        lam = rng.uniform(-2.0, 2.0)
        gamma = rng.uniform(0.1, 1.5)
        if classify_criticality(lam, gamma).distance > margin:
            points.append((float(lam), float(gamma)))
    return points


def _run_verify(cfg: RunConfig) -> int:
    p = cfg.parameters
    rng = np.random.default_rng(cfg.seed)
    points = draw_noncritical_points(rng, p["draws"])
    loop = LoopDiscretization(p["steps"])
    summary = {
        "seed": cfg.seed,
        "steps": p["steps"],
        "draws": p["draws"],
        "points": [list(pt) for pt in points],
        "per_n": {},
    }
    worst = {"phase": 0.0, "energy": 0.0, "magnetization": 0.0, "identity": 0.0}
    for n in p["n_sites"]:
        w = {"phase": 0.0, "energy": 0.0, "magnetization": 0.0, "identity": 0.0}
        for lam, gamma in points:
            xp = XYParams(lam=lam, gamma=gamma, n_sites=n)
            analytic = ground_phase(xp)
            discrete = discrete_loop_phase(xp, "ground", loop)
            w["phase"] = max(w["phase"], circular_distance(discrete.wrapped, analytic.wrapped))
            w["energy"] = max(w["energy"], abs(ground_energy(xp) - ed_ground_energy(xp)))
            w["magnetization"] = max(
                w["magnetization"], abs(magnetization_analytic(xp) - magnetization_ed(xp))
            )
            lhs, rhs = phase_magnetization_identity(xp)
            w["identity"] = max(w["identity"], abs(lhs - rhs))
        summary["per_n"][str(n)] = w
        for key in worst:
            worst[key] = max(worst[key], w[key])
    summary["max_discrepancy"] = worst
    tol = {
        "phase": VERIFY_PHASE_TOL,
        "energy": VERIFY_ENERGY_TOL,
        "magnetization": VERIFY_MAGNETIZATION_TOL,
        "identity": VERIFY_IDENTITY_TOL,
    }
    summary["thresholds"] = tol
    ok = all(worst[k] < tol[k] for k in tol)
    summary["pass"] = ok
    text = json.dumps(summary, indent=2, sort_keys=True) + "\n"
    if cfg.output_path:
        _atomic_write(cfg.output_path, text)
    print(text, end="")
    return 0 if ok else 1


def _run_scaling_fit(cfg: RunConfig) -> int:
    p = cfg.parameters
    if p["approach"] == "ising":
        spec = SweepSpec.approach(
            "lambda", 1.0, 1.0, p["window"], p["samples"], side=-1, n_sites=p["n_sites"]
        )
        g_c = 1.0
    else:
        spec = SweepSpec.approach(
            "gamma", 0.5, 0.0, p["window"], p["samples"], side=+1, n_sites=p["n_sites"]
        )
        g_c = 0.0
    fit = fit_exponent(gap_sweep(spec), g_c, p["window"])
    payload = {
        "approach": p["approach"],
        "exponent": fit.exponent,
        "intercept": fit.intercept,
        "r_squared": fit.r_squared,
        "window": list(fit.window),
        "samples": p["samples"],
        "n_sites": p["n_sites"],
    }
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if cfg.output_path:
        _atomic_write(cfg.output_path, text)
    print(text, end="")
    return 0


def _run_step_trace(cfg: RunConfig) -> int:
    p = cfg.parameters
    rows = []
    for gamma in p["gammas"]:
        trace = [relative_phase_thermo(lam, gamma).value for lam in p["lam_values"]]
        rows.append((gamma, step_detect(p["lam_values"], trace)))
    tmp = f"{cfg.output_path}.tmp"
    write_step_trace_csv(rows, tmp)
    os.replace(tmp, cfg.output_path)
    print(f"wrote {cfg.output_path}: {len(rows)} rows")
    return 0


def _run_lattice_map(cfg: RunConfig) -> int:
    p = cfg.parameters
    try:
        with open(p["input"], encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"unreadable input file {p['input']}: {exc}") from exc
    known = {"j_a", "j_b", "j_c", "u_ab", "omega", "delta", "phase"}
    if not isinstance(data, dict) or not set(data) <= known:
        raise UsageError(f"lattice input keys must be a subset of {sorted(known)}")
    lp = LatticeParams(**{k: float(v) for k, v in data.items()})
    eff = effective_xy(lp)
    check = mott_regime_check(lp, p["threshold"])
    payload = {
        "gamma": eff.gamma,
        "lambda": eff.lam,
        "lambda_raw": eff.lam_raw,
        "phi": eff.phi,
        "energy_scale": eff.energy_scale,
        "mott_regime": {"ok": check.ok, "margin": check.margin, "threshold": check.threshold},
    }
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if cfg.output_path:
        _atomic_write(cfg.output_path, text)
    print(text, end="")
    return 0


_RUNNERS = {
    "phase-surface": _run_phase_surface,
    "gap-map": _run_gap_map,
    "verify": _run_verify,
    "scaling-fit": _run_scaling_fit,
    "step-trace": _run_step_trace,
    "lattice-map": _run_lattice_map,
}


def execute(cfg: RunConfig) -> int:
    """Run a validated configuration; returns the process exit status."""
    return _RUNNERS[cfg.command](cfg)


def _error_json(kind: str, message: str):
    print(json.dumps({"error": kind, "message": message}), file=sys.stderr)


def main(argv=None) -> int:
    try:
        cfg = parse_config(argv)
    except UsageError as exc:
        _error_json("usage", str(exc))
        return 2
    try:
        return execute(cfg)
    except UsageError as exc:
        _error_json("usage", str(exc))
        return 2
    except (XYBerryError, ValueError, ArithmeticError) as exc:
        _error_json(type(exc).__name__, str(exc))
        return 1


if __name__ == "__main__":
    sys.exit(main())
