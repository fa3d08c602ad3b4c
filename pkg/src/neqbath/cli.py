"""Command-line front end.

Subcommands
    decoherence     |F(t)| on a time grid, optional dip report
    gp              geometric phase: point, surface, lambda and gamma modes
    mc              Monte Carlo estimate vs the analytic curve
    pdist           phase-distribution snapshots P(x, t)
    reproduce-figure  canned parameter sets for the standard figures

Numbers are written with 17 significant digits so a written CSV reparses
to the exact float that was computed.  Exit codes: 0 success, 2 bad
configuration, 3 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import __version__
from .bath import BathConfig, DeltaLimitError, PhaseDistribution, \
    phase_distribution_eval
from .dephasing import decoherence_factor, find_dip
from .geomphase import gamma_comparison, geometric_phase, gp_lambda_sweep, \
    gp_surface
from .montecarlo import EnsembleConfig, mc_decoherence_factor, \
    to_decoherence_curve
from .numerics import ConvergenceError

__all__ = ["ConfigError", "RunConfig", "main"]

UNDEFINED_NORM = "undefined-normalization"


class ConfigError(Exception):
    """Bad user input: unknown keys, malformed grids, out-of-range values."""


# every key a JSON config file may carry; anything else is rejected so
# typos fail loudly instead of silently running defaults
_ALLOWED_KEYS = {
    "gamma", "cutoff", "diffusion", "phase_lambda", "ohmicity", "omega",
    "profile", "theta0", "grid", "seed", "n_modes", "n_trajectories", "dt",
    "horizon", "times", "nx", "theta0_grid", "gamma_grid", "lambda_grid",
    "mode",
}


@dataclass
class RunConfig:
    """Merged run parameters: defaults, then config file, then flags.

    Defaults are the weak-coupling curve parameters (gamma 0.5, cutoff 1,
    D 0.1, lambda 1, ohmic, linear profile).
    """

    gamma: float = 0.5
    cutoff: float = 1.0
    diffusion: float = 0.1
    phase_lambda: float = 1.0
    ohmicity: int = 1
    omega: float = 1.0
    profile: str = "linear"
    theta0: float = math.pi / 4.0
    grid: tuple = (0.0, 10.0, 0.01)
    seed: int = 1
    n_modes: int = 2000
    n_trajectories: int = 2000
    dt: float = 0.005
    horizon: float = 10.0
    times: tuple = (0.1, 0.5, 1.0, 2.0)
    nx: int = 257
    theta0_grid: tuple = (0.0, math.pi, math.pi / 32.0)
    gamma_grid: tuple = (0.0, 0.5, 0.02)
    lambda_grid: tuple = (0.0, 5.0, 0.25)
    mode: str = "point"

    def bath_config(self) -> BathConfig:
        try:
            return BathConfig(
                gamma=self.gamma, cutoff=self.cutoff, diffusion=self.diffusion,
                phase_lambda=self.phase_lambda, ohmicity=self.ohmicity,
                omega=self.omega, phase_profile=self.profile,
            )
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    def ensemble_config(self) -> EnsembleConfig:
        try:
            return EnsembleConfig(
                n_modes=self.n_modes, n_trajectories=self.n_trajectories,
                seed=self.seed, dt=self.dt, horizon=self.horizon,
            )
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc


def _parse_grid(text: str) -> tuple:
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigError(f"grid must be start:stop:step, got {text!r}")
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError as exc:
        raise ConfigError(f"grid components must be numbers: {text!r}") from exc
    _check_grid((start, stop, step))
    return (start, stop, step)


def _check_grid(grid) -> tuple:
    try:
        start, stop, step = (float(v) for v in grid)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"grid must be three numbers, got {grid!r}") from exc
    if not (math.isfinite(start) and math.isfinite(stop) and math.isfinite(step)):
        raise ConfigError(f"grid values must be finite, got {grid!r}")
    if step <= 0 or stop <= start:
        raise ConfigError(
            f"grid needs stop > start and step > 0, got {grid!r}"
        )
    return (start, stop, step)


def grid_array(grid) -> np.ndarray:
    start, stop, step = _check_grid(grid)
    n = int(math.floor((stop - start) / step + 1e-9)) + 1
    return start + step * np.arange(n)


def _parse_times(text: str) -> tuple:
    try:
        return tuple(float(p) for p in text.split(",") if p.strip() != "")
    except ValueError as exc:
        raise ConfigError(f"times must be comma-separated numbers: {text!r}") from exc


def load_config_file(path: str) -> dict:
    try:
        raw = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config file must hold a JSON object")
    unknown = set(raw) - _ALLOWED_KEYS
    if unknown:
        raise ConfigError(
            f"unknown config keys: {', '.join(sorted(unknown))}; "
            f"allowed: {', '.join(sorted(_ALLOWED_KEYS))}"
        )
    return raw


def build_run_config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig()
    if getattr(args, "config", None):
        file_vals = load_config_file(args.config)
        for key, val in file_vals.items():
            if key in ("grid", "theta0_grid", "gamma_grid", "lambda_grid"):
                val = _check_grid(val)
            elif key == "times":
                if not isinstance(val, (list, tuple)):
                    raise ConfigError("times must be a list of numbers")
                val = tuple(float(v) for v in val)
            elif key in ("ohmicity", "seed", "n_modes", "n_trajectories", "nx"):
                if isinstance(val, bool) or not isinstance(val, int):
                    raise ConfigError(f"{key} must be an integer, got {val!r}")
            elif key in ("profile", "mode"):
                if not isinstance(val, str):
                    raise ConfigError(f"{key} must be a string, got {val!r}")
            else:
                try:
                    val = float(val)
                except (TypeError, ValueError) as exc:
                    raise ConfigError(f"{key} must be a number, got {val!r}") from exc
            setattr(cfg, key, val)
    # flags win over the file
    for key in ("gamma", "cutoff", "diffusion", "phase_lambda", "ohmicity",
                "theta0", "profile", "seed", "n_modes", "n_trajectories",
                "dt", "horizon", "nx", "mode"):
        val = getattr(args, key, None)
        if val is not None:
            setattr(cfg, key, val)
    for key in ("grid", "theta0_grid", "gamma_grid", "lambda_grid"):
        val = getattr(args, key, None)
        if val is not None:
            setattr(cfg, key, _parse_grid(val) if isinstance(val, str) else val)
    if getattr(args, "times", None) is not None:
        cfg.times = _parse_times(args.times)
    if cfg.profile not in ("linear", "quadratic"):
        raise ConfigError(
            f"profile must be 'linear' or 'quadratic' on the command line, "
            f"got {cfg.profile!r}"
        )
    if not (0.0 <= cfg.theta0 <= math.pi):
        raise ConfigError(f"theta0 must lie in [0, pi], got {cfg.theta0}")
    return cfg


def _fmt(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".17g")


def _json_cell(value):
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return int(value)
    v = float(value)
    return v if math.isfinite(v) else None


def write_table(out: Optional[str], columns: Sequence[str], rows,
                comments: Sequence[str] = (), json_mode: bool = False,
                metadata: Optional[dict] = None, extra: Optional[dict] = None):
    """Emit one table as CSV (default) or a JSON document.

    CSV: one header line, 17-significant-digit cells, then any comment
    lines prefixed with '# '.  JSON: metadata + columns + row arrays,
    with non-finite numbers mapped to null.
    """
    if json_mode:
        doc = {
            "metadata": metadata or {},
            "columns": list(columns),
            "rows": [[_json_cell(v) for v in row] for row in rows],
        }
        if comments:
            doc["comments"] = list(comments)
        if extra:
            doc.update(extra)
        text = json.dumps(doc, indent=2, allow_nan=False) + "\n"
    else:
        lines = [",".join(columns)]
        lines.extend(",".join(_fmt(v) for v in row) for row in rows)
        lines.extend(f"# {c}" for c in comments)
        text = "\n".join(lines) + "\n"
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _metadata(cfg: RunConfig, command: str, **extra) -> dict:
    meta = {
        "command": command,
        "version": __version__,
        "gamma": cfg.gamma,
        "cutoff": cfg.cutoff,
        "diffusion": cfg.diffusion,
        "phase_lambda": cfg.phase_lambda,
        "ohmicity": cfg.ohmicity,
        "omega": cfg.omega,
        "profile": cfg.profile,
    }
    meta.update(extra)
    return meta


def cmd_decoherence(args: argparse.Namespace) -> int:
    cfg = build_run_config(args)
    bath = cfg.bath_config()
    times = grid_array(cfg.grid)
    if times[0] < 0:
        raise ConfigError("time grid must start at t >= 0")
    tol = args.tol if args.tol is not None else 1e-10
    if tol <= 0:
        raise ConfigError(f"tol must be positive, got {tol}")
    curve = decoherence_factor(times, bath, tol=tol, method=args.method)
    rows = [(t, v, e, curve.method)
            for t, v, e in zip(curve.times, curve.values, curve.errors)]
    comments = []
    extra = {}
    if args.dip:
        dip = find_dip(curve)
        if dip is None:
            comments.append("dip none")
            extra["dip"] = None
        else:
            comments.append(
                f"dip t={_fmt(dip.time)} F={_fmt(dip.value)} "
                f"prominence={_fmt(dip.prominence)}"
            )
            extra["dip"] = {"t": dip.time, "F": dip.value,
                            "prominence": dip.prominence}
    write_table(args.out, ["t", "F", "err", "method"], rows, comments,
                args.json, _metadata(cfg, "decoherence", grid=list(cfg.grid)),
                extra)
    return 0


def cmd_gp(args: argparse.Namespace) -> int:
    cfg = build_run_config(args)
    bath = cfg.bath_config()
    if cfg.mode == "point":
        res = geometric_phase(bath, cfg.theta0)
        rows = [(cfg.theta0, res.phi_g, res.phi_u, res.delta, res.tol)]
        write_table(args.out, ["theta0", "phi_g", "phi_u", "delta", "err"],
                    rows, (), args.json,
                    _metadata(cfg, "gp", mode="point", theta0=cfg.theta0))
        return 0
    if cfg.mode == "surface":
        th = grid_array(cfg.theta0_grid)
        ga = grid_array(cfg.gamma_grid)
        surf = gp_surface(bath, th, ga)
        rows = []
        for i, t0 in enumerate(surf.theta0):
            for j, g in enumerate(surf.gamma):
                r = surf.ratio[i, j]
                if math.isfinite(r):
                    rows.append((t0, g, r, ""))
                else:
                    rows.append((t0, g, float("nan"), UNDEFINED_NORM))
        write_table(args.out, ["theta0", "gamma", "delta_phi_norm", "note"],
                    rows, (), args.json,
                    _metadata(cfg, "gp", mode="surface",
                              theta0_grid=list(cfg.theta0_grid),
                              gamma_grid=list(cfg.gamma_grid)))
        return 0
    if cfg.mode == "lambda":
        th = grid_array(cfg.theta0_grid)
        lams = grid_array(cfg.lambda_grid)
        sweep = gp_lambda_sweep(bath, th, lams)
        rows = [(t0, lam, sweep.delta_abs[i, j])
                for i, t0 in enumerate(sweep.theta0)
                for j, lam in enumerate(sweep.lam)]
        comments = [
            f"monotone theta0={_fmt(t0)}: "
            + ("yes" if sweep.monotone[i]
               else f"no (max increase {_fmt(sweep.max_increase[i])})")
            for i, t0 in enumerate(sweep.theta0)
        ]
        extra = {"monotone": [bool(b) for b in sweep.monotone],
                 "max_increase": [float(v) for v in sweep.max_increase]}
        write_table(args.out, ["theta0", "lambda", "delta_phi"], rows,
                    comments, args.json,
                    _metadata(cfg, "gp", mode="lambda",
                              theta0_grid=list(cfg.theta0_grid),
                              lambda_grid=list(cfg.lambda_grid)),
                    extra)
        return 0
    if cfg.mode == "gamma":
        ga = grid_array(cfg.gamma_grid)
        _, exact, pred = gamma_comparison(bath, cfg.theta0, ga)
        rows = list(zip(ga, exact, pred))
        write_table(args.out, ["gamma", "phi_g", "phi_g_pred"], rows, (),
                    args.json,
                    _metadata(cfg, "gp", mode="gamma", theta0=cfg.theta0,
                              gamma_grid=list(cfg.gamma_grid)))
        return 0
    raise ConfigError(
        f"gp mode must be point, surface, lambda or gamma, got {cfg.mode!r}"
    )


def cmd_mc(args: argparse.Namespace) -> int:
    cfg = build_run_config(args)
    bath = cfg.bath_config()
    ens = cfg.ensemble_config()
    mc = mc_decoherence_factor(bath, ens, phase_model=args.phase_model)
    mc_curve = to_decoherence_curve(mc)
    analytic = decoherence_factor(mc.times, bath)
    dev = mc_curve.values - analytic.values
    rows = [(t, fm, se, fa, d) for t, fm, se, fa, d in
            zip(mc.times, mc_curve.values, mc_curve.errors,
                analytic.values, dev)]
    max_dev = float(np.max(np.abs(dev)))
    comments = [f"max|F_mc - F_analytic| = {_fmt(max_dev)}"]
    extra = {"max_abs_dev": max_dev}
    write_table(args.out, ["t", "F_mc", "stderr", "F_analytic", "dev"], rows,
                comments, args.json,
                _metadata(cfg, "mc", seed=cfg.seed, n_modes=cfg.n_modes,
                          n_trajectories=cfg.n_trajectories, dt=cfg.dt,
                          horizon=cfg.horizon, phase_model=args.phase_model),
                extra)
    return 0


def cmd_pdist(args: argparse.Namespace) -> int:
    cfg = build_run_config(args)
    if cfg.nx < 2:
        raise ConfigError(f"nx must be >= 2, got {cfg.nx}")
    if not cfg.times:
        raise ConfigError("at least one snapshot time is required")
    dist = PhaseDistribution(diffusion=cfg.diffusion)
    x = np.linspace(-math.pi, math.pi, cfg.nx)
    rows = []
    for t in cfg.times:
        try:
            p = phase_distribution_eval(dist, x, float(t))
        except (DeltaLimitError, ValueError) as exc:
            raise ConfigError(str(exc)) from exc
        rows.extend((t, xi, pi) for xi, pi in zip(x, p))
    write_table(args.out, ["t", "x", "P"], rows, (), args.json,
                _metadata(cfg, "pdist", times=list(cfg.times), nx=cfg.nx))
    return 0


# canned parameter sets for the seven standard figures
_FIG_GRID = (0.0, 10.0, 0.01)


def _figure_jobs(outdir: Path):
    def curve_job(name, gamma, diffusion, ohmicity, profile, grid,
                  with_dip=False):
        cfg = BathConfig(gamma=gamma, cutoff=1.0, diffusion=diffusion,
                         phase_lambda=1.0, ohmicity=ohmicity,
                         phase_profile=profile)
        times = grid_array(grid)
        curve = decoherence_factor(times, cfg)
        rows = [(t, v, e, curve.method) for t, v, e in
                zip(curve.times, curve.values, curve.errors)]
        meta = {"gamma": gamma, "cutoff": 1.0, "diffusion": diffusion,
                "phase_lambda": 1.0, "ohmicity": ohmicity, "profile": profile,
                "grid": list(grid)}
        if with_dip:
            dip = find_dip(curve)
            meta["dip"] = None if dip is None else {
                "t": dip.time, "F": dip.value, "prominence": dip.prominence}
        write_table(str(outdir / f"{name}.csv"), ["t", "F", "err", "method"],
                    rows)
        return name, meta

    def fig1():
        files, meta = [], {"note": "the static-noise Gaussian reference "
                                   "curve of the original figure is a "
                                   "different bath family and is omitted"}
        for n, tag in ((1, "ohmic"), (3, "supraohmic")):
            name, m = curve_job(f"fig1_{tag}", 3.0, 0.5, n, "linear",
                                _FIG_GRID)
            files.append(name)
            meta[tag] = m
        return files, meta

    def fig2():
        files, meta = [], {}
        for n, tag in ((1, "ohmic"), (3, "supraohmic")):
            name, m = curve_job(f"fig2_{tag}", 0.5, 0.1, n, "linear",
                                _FIG_GRID, with_dip=True)
            files.append(name)
            meta[tag] = m
        return files, meta

    def fig3():
        files, meta = [], {}
        # quadratic profile has no closed form; coarser grid keeps the
        # per-point quadrature bill reasonable
        for n, tag in ((1, "ohmic"), (3, "supraohmic")):
            name, m = curve_job(f"fig3_{tag}", 3.0, 0.1, n, "quadratic",
                                (0.0, 10.0, 0.02))
            files.append(name)
            meta[tag] = m
        return files, meta

    def surface_fig(num, ohmicity):
        cfg = BathConfig(gamma=1.0, cutoff=1.0, diffusion=0.1,
                         phase_lambda=1.0, ohmicity=ohmicity)
        th = grid_array((0.0, math.pi, math.pi / 32.0))
        ga = grid_array((0.0, 2.0, 0.1))
        surf = gp_surface(cfg, th, ga)
        rows = []
        for i, t0 in enumerate(surf.theta0):
            for j, g in enumerate(surf.gamma):
                r = surf.ratio[i, j]
                rows.append((t0, g, r if math.isfinite(r) else float("nan"),
                             "" if math.isfinite(r) else UNDEFINED_NORM))
        name = f"fig{num}_surface"
        write_table(str(outdir / f"{name}.csv"),
                    ["theta0", "gamma", "delta_phi_norm", "note"], rows)
        meta = {"cutoff": 1.0, "diffusion": 0.1, "phase_lambda": 1.0,
                "ohmicity": ohmicity,
                "theta0_grid": [0.0, math.pi, math.pi / 32.0],
                "gamma_grid": [0.0, 2.0, 0.1]}
        return [name], meta

    def fig6():
        files = []
        theta0 = math.pi / 4.0
        ga = grid_array((0.0, 0.5, 0.02))
        meta = {"cutoff": 1.0, "diffusion": 1.0, "phase_lambda": 1.0,
                "theta0": theta0, "gamma_grid": [0.0, 0.5, 0.02],
                "note": "initial state not pinned by the caption; "
                        "theta0 = pi/4 chosen and recorded here"}
        for n, tag in ((1, "ohmic"), (3, "supraohmic")):
            cfg = BathConfig(gamma=0.1, cutoff=1.0, diffusion=1.0,
                             phase_lambda=1.0, ohmicity=n)
            _, exact, pred = gamma_comparison(cfg, theta0, ga)
            name = f"fig6_{tag}"
            write_table(str(outdir / f"{name}.csv"),
                        ["gamma", "phi_g", "phi_g_pred"],
                        list(zip(ga, exact, pred)))
            files.append(name)
        return files, meta

    def fig7():
        cfg = BathConfig(gamma=3.0, cutoff=1.0, diffusion=0.1,
                         phase_lambda=1.0, ohmicity=1)
        th = np.array([math.pi / 8.0, math.pi / 4.0, 3.0 * math.pi / 8.0])
        lams = grid_array((0.0, 5.0, 0.25))
        sweep = gp_lambda_sweep(cfg, th, lams)
        rows = [(t0, lam, sweep.delta_abs[i, j])
                for i, t0 in enumerate(sweep.theta0)
                for j, lam in enumerate(sweep.lam)]
        comments = [
            f"monotone theta0={_fmt(t0)}: "
            + ("yes" if sweep.monotone[i]
               else f"no (max increase {_fmt(sweep.max_increase[i])})")
            for i, t0 in enumerate(sweep.theta0)
        ]
        name = "fig7_lambda"
        write_table(str(outdir / f"{name}.csv"),
                    ["theta0", "lambda", "delta_phi"], rows, comments)
        meta = {"gamma": 3.0, "cutoff": 1.0, "diffusion": 0.1, "ohmicity": 1,
                "theta0_values": [float(v) for v in th],
                "lambda_grid": [0.0, 5.0, 0.25],
                "monotone": [bool(b) for b in sweep.monotone],
                "max_increase": [float(v) for v in sweep.max_increase]}
        return [name], meta

    return {
        1: fig1,
        2: fig2,
        3: fig3,
        4: lambda: surface_fig(4, 1),
        5: lambda: surface_fig(5, 3),
        6: fig6,
        7: fig7,
    }


def cmd_reproduce_figure(args: argparse.Namespace) -> int:
    outdir = Path(args.out_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    jobs = _figure_jobs(outdir)
    if args.number not in jobs:
        raise ConfigError(f"figure number must be 1..7, got {args.number}")
    files, meta = jobs[args.number]()
    meta_doc = {"figure": args.number, "version": __version__,
                "files": [f"{f}.csv" for f in files], **meta}
    meta_path = outdir / f"fig{args.number}_metadata.json"
    meta_path.write_text(json.dumps(meta_doc, indent=2) + "\n")
    for f in files:
        print(outdir / f"{f}.csv")
    print(meta_path)
    return 0


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--config", help="JSON config file")
    p.add_argument("--out", help="output path ('-' or omitted: stdout)")
    p.add_argument("--json", action="store_true",
                   help="emit a JSON document instead of CSV")
    p.add_argument("--gamma", type=float)
    p.add_argument("--cutoff", type=float)
    p.add_argument("--diffusion", type=float)
    p.add_argument("--phase-lambda", type=float, dest="phase_lambda")
    p.add_argument("--ohmicity", type=int)
    p.add_argument("--theta0", type=float)
    p.add_argument("--profile", choices=["linear", "quadratic"])
    p.add_argument("--seed", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="neqbath",
        description="decoherence and geometric phase in a random-phase bath",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decoherence", help="|F(t)| over a time grid")
    _add_common(p)
    p.add_argument("--grid", help="time grid start:stop:step")
    p.add_argument("--dip", action="store_true",
                   help="append a dip report for the curve")
    p.add_argument("--method", choices=["closed-form", "quadrature"],
                   help="force the evaluation route")
    p.add_argument("--tol", type=float,
                   help="absolute quadrature tolerance (default 1e-10)")
    p.set_defaults(func=cmd_decoherence)

    p = sub.add_parser("gp", help="geometric phase over one quasi-cycle")
    _add_common(p)
    p.add_argument("--mode", choices=["point", "surface", "lambda", "gamma"])
    p.add_argument("--theta0-grid", dest="theta0_grid",
                   help="initial-state grid start:stop:step")
    p.add_argument("--gamma-grid", dest="gamma_grid",
                   help="coupling grid start:stop:step")
    p.add_argument("--lambda-grid", dest="lambda_grid",
                   help="delay grid start:stop:step")
    p.set_defaults(func=cmd_gp)

    p = sub.add_parser("mc", help="Monte Carlo curve vs analytic")
    _add_common(p)
    p.add_argument("--n-modes", type=int, dest="n_modes")
    p.add_argument("--n-trajectories", type=int, dest="n_trajectories")
    p.add_argument("--dt", type=float)
    p.add_argument("--horizon", type=float)
    p.add_argument("--phase-model", choices=["endpoint", "integral"],
                   default="endpoint", dest="phase_model")
    p.set_defaults(func=cmd_mc)

    p = sub.add_parser("pdist", help="phase distribution snapshots")
    _add_common(p)
    p.add_argument("--times", help="comma-separated snapshot times (t > 0)")
    p.add_argument("--nx", type=int, help="grid points across [-pi, pi]")
    p.set_defaults(func=cmd_pdist)

    p = sub.add_parser("reproduce-figure",
                       help="write the data behind one standard figure")
    p.add_argument("number", type=int, help="figure number, 1..7")
    p.add_argument("--out-dir", default="figures", dest="out_dir")
    p.set_defaults(func=cmd_reproduce_figure)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except ConvergenceError as exc:
        print(f"convergence failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
