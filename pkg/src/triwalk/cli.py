"""Command-line front end.

Every subcommand emits one machine-readable table (CSV or JSON, with a
full configuration echo) and can additionally render the matching figure
to a file with ``--plot``.  Initial spinors given on the command line are
normalized automatically.  Exit codes: 0 success, 1 usage error,
2 domain or resource error.
"""

import argparse
import os
import sys

import numpy as np

from . import __version__, analysis, evolution, spectral, tables, weaklimit
from .algebra import format_spinor, normalize_spinor, parse_spinor
from .analysis import SeriesRecord
from .errors import EnvelopeFitError, WalkError

_CAP_ENV = "TRIWALK_CAP"


class _Parser(argparse.ArgumentParser):
    """argparse, but usage problems exit with code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add_common(sub, psi0_default: str | None = "0,1i,1"):
    if psi0_default is None:
        sub.add_argument("--psi0", action="append",
                         help="initial coin state 'a,b,c' (repeatable; normalized)")
    else:
        sub.add_argument("--psi0", default=psi0_default,
                         help="initial coin state 'a,b,c' (normalized automatically)")
    sub.add_argument("--format", choices=("csv", "json"), default="csv")
    sub.add_argument("--output", default=None, help="output path (default: stdout)")
    sub.add_argument("--plot", default=None, help="render a figure to this file")
    sub.add_argument("--cap", type=int, default=None,
                     help=f"step cap override (also via ${_CAP_ENV})")


def build_parser() -> _Parser:
    parser = _Parser(prog="triwalk", description=__doc__)
    parser.add_argument("--version", action="version", version=f"triwalk {__version__}")
    subs = parser.add_subparsers(dest="subcommand", required=True)

    p = subs.add_parser("evolve", help="PDF of the walk at a fixed time")
    _add_common(p)
    p.add_argument("--t", type=int, required=True, help="number of steps")
    p.add_argument("--spatial-window", type=int, default=None,
                   help="add a moving-average column over this many sites")
    p.set_defaults(func=cmd_evolve)

    p = subs.add_parser("localization", help="stationary PDF against time-averaged simulation")
    _add_common(p, psi0_default=None)
    p.add_argument("--t", type=int, default=2**14, help="evolution horizon")
    p.add_argument("--n-max", type=int, default=8, help="scan sites |n| <= n_max")
    p.add_argument("--window", type=int, default=None,
                   help="trailing averaging window (default: t/2)")
    p.set_defaults(func=cmd_localization)

    p = subs.add_parser("asymptotic", help="stationary-phase PDF against simulation")
    _add_common(p)
    p.add_argument("--t", type=int, default=4096)
    p.add_argument("--guard", type=float, default=1e-3,
                   help="excluded band at the front edge, in units of v")
    p.set_defaults(func=cmd_asymptotic)

    p = subs.add_parser("weak-limit", help="front density, delta weight, normalization")
    _add_common(p)
    p.add_argument("--points", type=int, default=201, help="velocity grid size")
    p.set_defaults(func=cmd_weak_limit)

    p = subs.add_parser("moments", help="closed-form moments against a simulation sweep")
    _add_common(p)
    p.add_argument("--t-values", default="256,512,1024,2048,4096",
                   help="comma-separated sweep times")
    p.set_defaults(func=cmd_moments)

    p = subs.add_parser("convergence", help="time series at one site with envelope fit")
    _add_common(p)
    p.add_argument("--site", type=int, default=0)
    p.add_argument("--t-min", type=int, default=256)
    p.add_argument("--t-max", type=int, default=2**14)
    p.set_defaults(func=cmd_convergence)

    p = subs.add_parser("oracle-check", help="site-space evolution against the spectral oracle")
    _add_common(p, psi0_default=None)
    p.add_argument("--t", type=int, default=512)
    p.add_argument("--samples", type=int, default=None,
                   help="momentum samples (default 2t+2; fewer than 2t+1 aliases)")
    p.add_argument("--trials", type=int, default=5,
                   help="random spinors when no --psi0 is given")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_oracle_check)

    p = subs.add_parser("report", help="run the full desk-scale experiment suite into a directory")
    p.add_argument("--outdir", required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--scale", choices=("quick", "desk"), default="quick",
                   help="quick: seconds; desk: minutes, full reproduction scale")
    p.set_defaults(func=cmd_report)
    return parser


def _cap(args, default: int) -> int:
    if args.cap is not None:
        return args.cap
    env = os.environ.get(_CAP_ENV)
    return int(env) if env else default


def _meta(args, psi=None, **extra) -> dict:
    meta = {"tool": "triwalk", "version": __version__, "subcommand": args.subcommand}
    if psi is not None:
        meta["psi0"] = format_spinor(psi)
    meta.update(extra)
    meta["format"] = args.format
    return meta


def _emit(args, records, meta, plot_fn=None) -> int:
    tables.write_text(tables.render(records, meta, args.format), args.output)
    if getattr(args, "plot", None):
        plot_fn(args.plot)
    return 0


def cmd_evolve(args) -> int:
    psi = parse_spinor(args.psi0, normalize=True)
    cap = _cap(args, evolution.DEFAULT_STEP_CAP)
    slc = evolution.pdf(evolution.evolve(psi, args.t, cap=cap))
    values = {"p": slc.probs}
    meta = _meta(args, psi, t=args.t, cap=cap)
    if args.spatial_window:
        values["p_smoothed"] = evolution.spatial_average(slc, args.spatial_window).probs
        meta["spatial_window"] = args.spatial_window
    rec = SeriesRecord(label=format_spinor(psi), abscissa_name="n",
                       abscissa=slc.sites, values=values, meta=meta)

    def plot(path):
        from . import plots
        plots.plot_pdf(rec, path)

    return _emit(args, [rec], meta, plot)


def cmd_localization(args) -> int:
    if args.psi0:
        spinors = [parse_spinor(s, normalize=True) for s in args.psi0]
    else:
        spinors = list(analysis.ASYMMETRY_DEMO_SPINORS)
    cap = _cap(args, analysis.DEFAULT_SCAN_CAP)
    records = analysis.run_localization_scan(
        spinors, t_max=args.t, n_max=args.n_max, window=args.window, cap=cap
    )
    meta = _meta(args, t=args.t, n_max=args.n_max,
                 window=records[0].meta["window"], window_weights="hann", cap=cap)
    for i, rec in enumerate(records):
        meta[f"better_estimator_{i}"] = f"{rec.label} -> {rec.meta['better_estimator']}"
        meta[f"unitarity_defect_{i}"] = rec.meta["unitarity_defect"]

    def plot(path):
        from . import plots
        plots.plot_localization(records, path)

    return _emit(args, records, meta, plot)


def cmd_asymptotic(args) -> int:
    psi = parse_spinor(args.psi0, normalize=True)
    cap = _cap(args, analysis.DEFAULT_COMPARISON_CAP)
    rec = analysis.run_pdf_comparison(psi, args.t, cap=cap, guard=args.guard)
    meta = _meta(args, psi, t=args.t, guard=args.guard, cap=cap)

    def plot(path):
        from . import plots
        plots.plot_comparison(rec, path)

    return _emit(args, [rec], meta, plot)


def cmd_weak_limit(args) -> int:
    psi = parse_spinor(args.psi0, normalize=True)
    dens = weaklimit.limit_density(psi)
    front = weaklimit.front_moment(psi, order=0)
    residual = dens.delta_weight + front - 1.0
    b = weaklimit.FRONT_SPEED
    v = -b + (np.arange(args.points) + 0.5) * (2.0 * b / args.points)
    rec = SeriesRecord(label=format_spinor(psi), abscissa_name="v",
                       abscissa=v, values={"f": dens.density(v)},
                       meta={"delta_weight": dens.delta_weight})
    meta = _meta(args, psi, points=args.points, delta_weight=dens.delta_weight,
                 front_integral=front, normalization_residual=residual)

    def plot(path):
        from . import plots
        plots.plot_weak_limit(rec, path)

    return _emit(args, [rec], meta, plot)


def cmd_moments(args) -> int:
    psi = parse_spinor(args.psi0, normalize=True)
    cap = _cap(args, analysis.DEFAULT_COMPARISON_CAP)
    t_values = [int(s) for s in args.t_values.split(",") if s.strip()]
    rec = analysis.run_moment_sweep(psi, t_values, cap=cap)
    meta = _meta(args, psi, t_values=args.t_values, cap=cap, **rec.meta)

    def plot(path):
        from . import plots
        plots.plot_moments(rec, path)

    return _emit(args, [rec], meta, plot)


def cmd_convergence(args) -> int:
    psi = parse_spinor(args.psi0, normalize=True)
    cap = _cap(args, analysis.DEFAULT_COMPARISON_CAP)
    rec = analysis.run_convergence(psi, site=args.site, t_min=args.t_min,
                                   t_max=args.t_max, cap=cap)
    meta = _meta(args, psi, site=args.site, t_min=args.t_min, t_max=args.t_max, cap=cap)
    fit = None
    try:
        fit = analysis.fit_envelope(rec)
        meta.update(envelope_exponent=fit.exponent, envelope_intercept=fit.intercept,
                    envelope_r_squared=fit.r_squared, envelope_points=fit.n_points)
    except EnvelopeFitError as exc:
        meta["envelope_error"] = str(exc)

    def plot(path):
        from . import plots
        plots.plot_convergence(rec, path, fit)

    return _emit(args, [rec], meta, plot)


def cmd_oracle_check(args) -> int:
    cap = _cap(args, evolution.DEFAULT_STEP_CAP)
    if args.psi0:
        spinors = [parse_spinor(s, normalize=True) for s in args.psi0]
    else:
        rng = np.random.default_rng(args.seed)
        spinors = [
            normalize_spinor(rng.normal(size=3) + 1j * rng.normal(size=3))
            for _ in range(args.trials)
        ]
    records = []
    worst = 0.0
    for psi in spinors:
        direct = evolution.evolve(psi, args.t, cap=cap)
        oracle = spectral.line_state(psi, args.t, samples=args.samples)
        err = np.abs(direct.amps - oracle.amps).max(axis=1)
        worst = max(worst, float(err.max()))
        records.append(
            SeriesRecord(
                label=format_spinor(psi),
                abscissa_name="n",
                abscissa=direct.sites,
                values={
                    "p_evolution": evolution.pdf(direct).probs,
                    "p_spectral": evolution.pdf(oracle).probs,
                    "amplitude_error": err,
                },
            )
        )
    meta = _meta(args, t=args.t, samples=args.samples or 2 * args.t + 2,
                 trials=len(spinors), seed=args.seed, max_amplitude_error=worst)

    def plot(path):
        from . import plots
        plots.plot_oracle(records[0], path)

    return _emit(args, records, meta, plot)


def cmd_report(args) -> int:
    from . import plots

    os.makedirs(args.outdir, exist_ok=True)
    desk = args.scale == "desk"
    t_cmp = 4096 if desk else 1024
    t_loc = 2**16 if desk else 2**12
    t_conv = 2**14 if desk else 2**12

    def emit(name, records, meta, plot):
        path = os.path.join(args.outdir, f"{name}.{args.format}")
        tables.write_text(tables.render(records, meta, args.format), path)
        plot(os.path.join(args.outdir, f"{name}.png"))
        print(f"wrote {name}.{args.format} and {name}.png", file=sys.stderr)

    base = {"tool": "triwalk", "version": __version__, "scale": args.scale,
            "format": args.format}
    psi = normalize_spinor([0.0, 1.0j, 1.0])

    recs = analysis.run_localization_scan(analysis.ASYMMETRY_DEMO_SPINORS, t_max=t_loc, cap=t_loc)
    emit("localization", recs, dict(base, experiment="localization", t=t_loc),
         lambda p: plots.plot_localization(recs, p))

    rec = analysis.run_pdf_comparison(psi, t_cmp)
    emit("asymptotic", [rec], dict(base, experiment="asymptotic", t=t_cmp,
                                   psi0=rec.label),
         lambda p: plots.plot_comparison(rec, p))

    rec = analysis.run_smoothed_comparison(psi, t_cmp, window=16)
    emit("smoothed", [rec], dict(base, experiment="smoothed", t=t_cmp, window=16,
                                 psi0=rec.label),
         lambda p: plots.plot_comparison_smoothed(rec, p))

    dens = weaklimit.limit_density(psi)
    b = weaklimit.FRONT_SPEED
    v = -b + (np.arange(201) + 0.5) * (2.0 * b / 201)
    rec = SeriesRecord(label=format_spinor(psi), abscissa_name="v", abscissa=v,
                       values={"f": dens.density(v)},
                       meta={"delta_weight": dens.delta_weight})
    emit("weaklimit", [rec],
         dict(base, experiment="weaklimit", psi0=rec.label,
              delta_weight=dens.delta_weight,
              front_integral=weaklimit.front_moment(psi, order=0)),
         lambda p: plots.plot_weak_limit(rec, p))

    rec = analysis.run_moment_sweep(psi, [2**k for k in range(8, 13 if desk else 11)])
    emit("moments", [rec], dict(base, experiment="moments", psi0=rec.label, **rec.meta),
         lambda p: plots.plot_moments(rec, p))

    for name, start, site in (
        ("convergence_generic_n0", [0.0, 1.0j, 1.0], 0),
        ("convergence_special_n0", [1.0, 0.0, -1.0], 0),
        ("convergence_generic_n512", [0.0, 1.0j, 1.0], 512),
    ):
        p0 = normalize_spinor(start)
        t_min = 256 if site == 0 else max(1024, 2 * site)
        rec = analysis.run_convergence(p0, site=site, t_min=t_min, t_max=t_conv, cap=t_conv)
        try:
            fit = analysis.fit_envelope(rec)
            extra = {"envelope_exponent": fit.exponent, "envelope_r_squared": fit.r_squared}
        except EnvelopeFitError as exc:
            fit, extra = None, {"envelope_error": str(exc)}
        emit(name, [rec], dict(base, experiment="convergence", psi0=rec.label,
                               site=site, t_min=t_min, t_max=t_conv, **extra),
             lambda p, rec=rec, fit=fit: plots.plot_convergence(rec, p, fit))
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except WalkError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
