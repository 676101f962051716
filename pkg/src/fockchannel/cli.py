"""Command-line front end: parameter sweeps, figure-data reproduction and
cross-path validation reports, emitting CSV or JSON.

Subcommands
-----------
sweep      purity of one initial state along chosen computational paths
fig1       number states |1>, |2> in baths with r = 0 and r = 1 (mu_inf = 0.5)
fig2       relative purity gain of the 0-1 cat for several bath squeezings
validate   three-way path agreement report over the standard grid
convert    translate between (gamma, N, M) and (mu_inf, r, phi)

The time axis is always dimensionless gamma*t.  Exit codes: 0 success,
2 validation error, 3 numerical-accuracy failure.  Set FOCKCHANNEL_LOG to
debug/info/warning for verbosity.
"""

import argparse
import io
import json
import logging
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .channel import BathSpec, ChannelParams, channel_to_bath
from .charfun import chi_cat01, chi_number, propagate
from .errors import (FockChannelError, NumericalAccuracyError,
                     ValidationError)
from .oracle import IntegratorCtrl, cat01_state, default_dim, evolve, \
    fock_state, purity_of
from .purity import (ALL_PATHS, PATH_CLOSED_FORM, PATH_ORACLE, PATH_QUAD_1D,
                     PATH_QUAD_2D, PuritySeries, purity_2d_with_error,
                     purity_asymptotic, purity_cat01, purity_squeezed,
                     purity_squeezed_with_error, purity_thermal)

LOG = logging.getLogger("fockchannel")

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_ACCURACY = 3

FIG_MU_INF = 0.5
FIG1_ORDERS = (1, 2)
FIG1_SQUEEZINGS = (0.0, 1.0)
FIG2_SQUEEZINGS = (0.1, 0.28, 0.4)


@dataclass
class SweepSpec:
    """One sweep: an initial state, a channel, a time grid and path set."""

    state_kind: str                     # "number" or "cat01"
    n: int
    theta: float
    channel: ChannelParams
    t_max: float
    points: int
    paths: tuple
    dim: int = None
    dt: float = 1e-3
    tail_tol: float = 1e-8
    jobs: int = 1

    def __post_init__(self):
        if self.state_kind not in ("number", "cat01"):
            raise ValidationError(f"unknown state {self.state_kind!r}")
        if not self.paths:
            raise ValidationError("at least one path is required")
        unknown = [p for p in self.paths if p not in ALL_PATHS]
        if unknown:
            raise ValidationError(f"unknown paths: {unknown} (choose from {ALL_PATHS})")
        if self.state_kind == "cat01" and PATH_QUAD_1D in self.paths:
            raise ValidationError(
                "quadrature_1d covers number states only; cat01 purity is "
                "available through closed_form, quadrature_2d and oracle")
        if (self.state_kind == "number" and PATH_CLOSED_FORM in self.paths
                and abs(self.channel.M) > 0):
            raise ValidationError(
                "closed_form covers thermal channels (M = 0) only; use "
                "quadrature_1d for phase-sensitive baths")
        if not (math.isfinite(self.t_max) and self.t_max > 0):
            raise ValidationError(f"t_max must be > 0, got {self.t_max}")
        if self.points < 2:
            raise ValidationError("points must be >= 2")

    def times(self):
        return np.linspace(0.0, self.t_max, self.points)

    def payload(self):
        return {
            "state_kind": self.state_kind, "n": self.n, "theta": self.theta,
            "gamma": self.channel.gamma, "N": self.channel.N,
            "M_re": self.channel.M.real, "M_im": self.channel.M.imag,
            "times": [float(t) for t in self.times()],
        }


def _payload_channel(payload):
    return ChannelParams(gamma=payload["gamma"], N=payload["N"],
                         M=complex(payload["M_re"], payload["M_im"]))


def _eval_chunk(payload, path, lo, hi):
    """Worker task: purity of one path on times[lo:hi] (picklable args)."""
    ch = _payload_channel(payload)
    times = payload["times"][lo:hi]
    kind, n, theta = payload["state_kind"], payload["n"], payload["theta"]
    vals, errs = [], []
    if path == PATH_CLOSED_FORM:
        bath = channel_to_bath(ch.N, ch.M)
        for gt in times:
            if kind == "number":
                vals.append(purity_thermal(n, ch.N, gt))
            else:
                vals.append(purity_cat01(bath, theta, gt))
            errs.append(0.0)
    elif path == PATH_QUAD_1D:
        for gt in times:
            v, e = purity_squeezed_with_error(n, ch.N, abs(ch.M), gt)
            vals.append(v)
            errs.append(e)
    elif path == PATH_QUAD_2D:
        chi0 = chi_number(n) if kind == "number" else chi_cat01(theta)
        for gt in times:
            v, e = purity_2d_with_error(propagate(chi0, ch, gt / ch.gamma))
            vals.append(v)
            errs.append(e)
    else:
        raise ValidationError(f"unsupported chunked path {path!r}")
    return path, lo, vals, errs


def run_sweep(spec):
    """Compute a PuritySeries for the sweep; deterministic for a fixed spec."""
    times = spec.times()
    payload = spec.payload()
    series = PuritySeries(times=times, channel=spec.channel,
                          initial_state=(f"number n={spec.n}"
                                         if spec.state_kind == "number"
                                         else f"cat01 theta={spec.theta:.6g}"))
    chunked_paths = [p for p in spec.paths if p != PATH_ORACLE]

    results = {}
    if chunked_paths:
        tasks = []
        chunk = max(1, len(times) // max(1, 4 * spec.jobs))
        for path in chunked_paths:
            for lo in range(0, len(times), chunk):
                tasks.append((path, lo, min(lo + chunk, len(times))))
        if spec.jobs > 1:
            LOG.info("dispatching %d chunks to %d workers", len(tasks), spec.jobs)
            with ProcessPoolExecutor(max_workers=spec.jobs) as pool:
                futs = [pool.submit(_eval_chunk, payload, *t) for t in tasks]
                outs = [f.result() for f in futs]
        else:
            outs = [_eval_chunk(payload, *t) for t in tasks]
        for path, lo, vals, errs in outs:
            dest = results.setdefault(path, ([0.0] * len(times), [0.0] * len(times)))
            dest[0][lo:lo + len(vals)] = vals
            dest[1][lo:lo + len(errs)] = errs

    if PATH_ORACLE in spec.paths:
        LOG.info("oracle evolution over %d snapshot times", len(times))
        bath = channel_to_bath(spec.channel.N, spec.channel.M)
        dim = spec.dim or default_dim(spec.n if spec.state_kind == "number" else 1,
                                      bath.r)
        rho0 = (fock_state(spec.n, dim) if spec.state_kind == "number"
                else cat01_state(spec.theta, dim))
        ctrl = IntegratorCtrl(dt=spec.dt, t_final=float(times[-1]),
                              tail_tol=spec.tail_tol)
        snaps = evolve(rho0, spec.channel.N, spec.channel.M, ctrl,
                       snapshot_times=[float(t) for t in times])
        results[PATH_ORACLE] = ([purity_of(s) for _, s in snaps],
                                [0.0] * len(times))

    for path in spec.paths:
        vals, errs = results[path]
        series.values[path] = np.asarray(vals)
        series.errors[path] = np.asarray(errs)
    series.check_physical()
    return series


# ---------------------------------------------------------------------------
# output helpers

def _fmt(v):
    return f"{v:.17g}"


def _write_text(out_path, text):
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _series_csv(series):
    buf = io.StringIO()
    buf.write("gamma_t,path,purity,err_estimate\n")
    for gt, path, val, err in series.rows():
        buf.write(f"{_fmt(gt)},{path},{_fmt(val)},{_fmt(err)}\n")
    return buf.getvalue()


def _series_json(series):
    doc = {
        "initial_state": series.initial_state,
        "channel": series.channel.to_json_dict(),
        "gamma_t": [float(t) for t in series.times],
        "series": {path: {"purity": [float(v) for v in series.values[path]],
                          "err_estimate": [float(e) for e in series.errors[path]]}
                   for path in series.values},
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _table_csv(header, rows):
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(_fmt(c) if isinstance(c, float) else str(c)
                           for c in row) + "\n")
    return buf.getvalue()


# ---------------------------------------------------------------------------
# argument plumbing

def _add_bath_args(p):
    p.add_argument("--mu-inf", type=float, default=None,
                   help="bath asymptotic purity in (0, 1]")
    p.add_argument("--r", type=float, default=None, help="bath squeezing parameter")
    p.add_argument("--phi", type=float, default=None,
                   help="bath squeezing angle in radians")
    p.add_argument("--N", type=float, default=None, help="bath excitation number")
    p.add_argument("--M-re", type=float, default=None, help="Re M")
    p.add_argument("--M-im", type=float, default=None, help="Im M")
    p.add_argument("--gamma", type=float, default=1.0, help="coupling rate")


def _channel_from_args(args):
    bath_given = any(v is not None for v in (args.mu_inf, args.r, args.phi))
    chan_given = any(v is not None for v in (args.N, args.M_re, args.M_im))
    if bath_given and chan_given:
        raise ValidationError(
            "give either the bath triple (--mu-inf --r --phi) or the channel "
            "triple (--N --M-re --M-im), not both")
    if chan_given:
        if args.N is None:
            raise ValidationError("--N is required with --M-re/--M-im")
        M = complex(args.M_re or 0.0, args.M_im or 0.0)
        return ChannelParams(gamma=args.gamma, N=args.N, M=M)
    if bath_given:
        if args.mu_inf is None:
            raise ValidationError("--mu-inf is required with --r/--phi")
        bath = BathSpec(mu_inf=args.mu_inf, r=args.r or 0.0, phi=args.phi or 0.0)
        return bath.to_channel(args.gamma)
    raise ValidationError("channel parameters are required "
                          "(--mu-inf/--r/--phi or --N/--M-re/--M-im)")


def _add_output_args(p, points_default=200):
    p.add_argument("--out", default=None, help="output file (default: stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--points", type=int, default=points_default)
    p.add_argument("--jobs", type=int, default=1,
                   help="worker processes for sweep points")


def _add_oracle_args(p):
    p.add_argument("--dim", type=int, default=None, help="Fock truncation size")
    p.add_argument("--dt", type=float, default=1e-3,
                   help="integrator step in gamma*t")
    p.add_argument("--tail-tol", type=float, default=1e-8,
                   help="max allowed population in the top 10%% of levels")


# ---------------------------------------------------------------------------
# subcommands

def _cmd_sweep(args):
    channel = _channel_from_args(args)
    if args.state == "cat01":
        kind, n = "cat01", 0
    else:
        try:
            n = int(args.state)
        except ValueError:
            raise ValidationError(
                f"--state must be a Fock order or 'cat01', got {args.state!r}")
        kind = "number"
    spec = SweepSpec(state_kind=kind, n=n, theta=args.theta, channel=channel,
                     t_max=args.t_max, points=args.points,
                     paths=tuple(args.paths.split(",")), dim=args.dim,
                     dt=args.dt, tail_tol=args.tail_tol, jobs=args.jobs)
    series = run_sweep(spec)
    text = _series_csv(series) if args.format == "csv" else _series_json(series)
    _write_text(args.out, text)
    return EXIT_OK


def _cmd_fig1(args):
    times = np.linspace(0.0, args.t_max, args.points)
    rows = []
    for n in FIG1_ORDERS:
        for r in FIG1_SQUEEZINGS:
            bath = BathSpec(mu_inf=FIG_MU_INF, r=r, phi=0.0)
            ch = bath.to_channel()
            LOG.info("fig1 series n=%d r=%g", n, r)
            for t in times:
                rows.append((float(t), n, float(r),
                             purity_squeezed(n, ch.N, abs(ch.M), float(t))))
    if args.format == "json":
        doc = {"mu_inf": FIG_MU_INF,
               "rows": [{"gamma_t": a, "n": b, "r": c, "purity": d}
                        for a, b, c, d in rows]}
        _write_text(args.out, json.dumps(doc, indent=2, sort_keys=True) + "\n")
    else:
        _write_text(args.out, _table_csv(("gamma_t", "n", "r", "purity"), rows))
    return EXIT_OK


def _cmd_fig2(args):
    # grid on (0, t_max]: the ratio at t = 0 is identically zero
    times = np.linspace(0.0, args.t_max, args.points + 1)[1:]
    phi = args.phi or 0.0
    rows = []
    for r in FIG2_SQUEEZINGS:
        bath = BathSpec(mu_inf=FIG_MU_INF, r=r, phi=phi)
        base = BathSpec(mu_inf=FIG_MU_INF, r=0.0, phi=phi)
        # optimal phase locking: the cat phase sits on the bath's squeezed axis
        theta = phi if args.theta is None else args.theta
        for t in times:
            mu_r = purity_cat01(bath, theta, float(t))
            mu_0 = purity_cat01(base, theta, float(t))
            rows.append((float(t), float(r), mu_r, mu_0, (mu_r - mu_0) / mu_0))
    if args.format == "json":
        doc = {"mu_inf": FIG_MU_INF, "theta": args.theta, "phi": phi,
               "rows": [{"gamma_t": a, "r": b, "purity": c, "purity_r0": d,
                         "delta_mu_over_mu": e} for a, b, c, d, e in rows]}
        _write_text(args.out, json.dumps(doc, indent=2, sort_keys=True) + "\n")
    else:
        _write_text(args.out, _table_csv(
            ("gamma_t", "r", "purity", "purity_r0", "delta_mu_over_mu"), rows))
    return EXIT_OK


def _validate_checks(quick, dim, dt, tail_tol):
    """Yield (name, grid_size, max_discrepancy, tolerance) for each check."""
    orders = (0, 1) if quick else (0, 1, 2, 3)
    ns = (0.5,) if quick else (0.1, 0.5, 1.0)
    gts = (0.1, 0.5) if quick else (0.1, 0.5, 1.0, 2.0)

    worst_1d = worst_2d = worst_or = 0.0
    count = 0
    for n in orders:
        for N in ns:
            ch = ChannelParams(gamma=1.0, N=N, M=0j)
            oracle_vals = {}
            if not quick:
                snaps = evolve(fock_state(n, dim or 40), N, 0j,
                               IntegratorCtrl(dt=dt, t_final=max(gts),
                                              tail_tol=tail_tol),
                               snapshot_times=list(gts))
                oracle_vals = {t: purity_of(s) for t, s in snaps}
            for gt in gts:
                cf = purity_thermal(n, N, gt)
                worst_1d = max(worst_1d, abs(cf - purity_squeezed(n, N, 0.0, gt)))
                q2, _ = purity_2d_with_error(propagate(chi_number(n), ch, gt))
                worst_2d = max(worst_2d, abs(cf - q2))
                if oracle_vals:
                    worst_or = max(worst_or, abs(cf - oracle_vals[gt]))
                count += 1
    yield ("thermal closed_form vs quadrature_1d", count, worst_1d, 1e-8)
    yield ("thermal closed_form vs quadrature_2d", count, worst_2d, 1e-6)
    if not quick:
        yield ("thermal closed_form vs oracle", count, worst_or, 1e-4)

    # phase-sensitive baths at fixed asymptotic purity
    rs = (0.5,) if quick else (0.5, 1.0)
    sq_orders = (0, 1) if quick else (0, 1, 2)
    worst_red = worst_sq2d = worst_sqor = 0.0
    count = 0
    for r in rs:
        bath = BathSpec(mu_inf=0.5, r=r, phi=0.0)
        ch = bath.to_channel()
        for n in sq_orders:
            oracle_vals = {}
            if not quick:
                d = dim or default_dim(n, r)
                ttol = max(tail_tol, 1e-4) if r >= 0.8 else tail_tol
                snaps = evolve(fock_state(n, d), ch.N, ch.M,
                               IntegratorCtrl(dt=dt, t_final=max(gts),
                                              tail_tol=ttol),
                               snapshot_times=list(gts))
                oracle_vals = {t: purity_of(s) for t, s in snaps}
            for gt in gts:
                v1 = purity_squeezed(n, ch.N, abs(ch.M), gt)
                q2, _ = purity_2d_with_error(propagate(chi_number(n), ch, gt))
                worst_sq2d = max(worst_sq2d, abs(v1 - q2))
                worst_red = max(worst_red, abs(
                    purity_squeezed(n, ch.N, 0.0, gt) - purity_thermal(n, ch.N, gt)))
                if oracle_vals:
                    worst_sqor = max(worst_sqor, abs(v1 - oracle_vals[gt]))
                count += 1
    yield ("squeezed |M|=0 reduction to thermal", count, worst_red, 1e-10)
    yield ("squeezed quadrature_1d vs quadrature_2d", count, worst_sq2d, 1e-6)
    if not quick:
        yield ("squeezed quadrature_1d vs oracle", count, worst_sqor, 1e-4)

    # cat closed form against the independent routes (the discrepancy report)
    cat_rs = (0.28,) if quick else (0.0, 0.28)
    cat_gts = (0.5,) if quick else (0.25, 0.5, 1.0)
    worst_c2d = worst_cor = 0.0
    count = 0
    for r in cat_rs:
        bath = BathSpec(mu_inf=0.5, r=r, phi=0.0)
        ch = bath.to_channel()
        for theta in (bath.phi, bath.phi + math.pi / 4):
            if not quick:
                d = dim or default_dim(1, r)
                snaps = evolve(cat01_state(theta, d), ch.N, ch.M,
                               IntegratorCtrl(dt=dt, t_final=max(cat_gts),
                                              tail_tol=tail_tol),
                               snapshot_times=list(cat_gts))
                oracle_vals = {t: purity_of(s) for t, s in snaps}
            for gt in cat_gts:
                cf = purity_cat01(bath, theta, gt)
                q2, _ = purity_2d_with_error(propagate(chi_cat01(theta), ch, gt))
                worst_c2d = max(worst_c2d, abs(cf - q2))
                if not quick:
                    worst_cor = max(worst_cor, abs(cf - oracle_vals[gt]))
                count += 1
    yield ("cat01 closed_form vs quadrature_2d", count, worst_c2d, 1e-6)
    if not quick:
        yield ("cat01 closed_form vs oracle", count, worst_cor, 1e-4)

    # asymptotics
    worst_asym = 0.0
    count = 0
    for N, absM in ((0.1, 0.0), (1.0, 0.0), (1.0430806052966786, 1.1752011936438014)):
        target = purity_asymptotic(N, absM)
        worst_asym = max(worst_asym, abs(purity_squeezed(0, N, absM, 20.0) - target))
        count += 1
    yield ("gamma_t=20 quadrature_1d vs asymptotic purity", count, worst_asym, 1e-3)


def _cmd_validate(args):
    rows = []
    failed = False
    for name, npts, worst, tol in _validate_checks(args.quick, args.dim,
                                                   args.dt, args.tail_tol):
        status = "PASS" if worst <= tol else "FAIL"
        failed = failed or status == "FAIL"
        rows.append((name, npts, worst, tol, status))
        LOG.info("validate: %s -> %s", name, status)
    width = max(len(r[0]) for r in rows)
    lines = [f"{'check':<{width}}  points  max_discrepancy  tolerance  status"]
    for name, npts, worst, tol, status in rows:
        lines.append(f"{name:<{width}}  {npts:>6d}  {worst:>15.3e}  {tol:>9.0e}  {status}")
    report = "\n".join(lines) + "\n"
    if args.out:
        _write_text(args.out, _table_csv(
            ("check", "points", "max_discrepancy", "tolerance", "status"),
            rows))
        sys.stdout.write(report)
    else:
        sys.stdout.write(report)
    if failed:
        raise NumericalAccuracyError("validation discrepancies exceed tolerance")
    return EXIT_OK


def _cmd_convert(args):
    channel = _channel_from_args(args)
    bath = channel_to_bath(channel.N, channel.M)
    doc = {"channel": channel.to_json_dict(), "bath": bath.to_json_dict()}
    _write_text(args.out, json.dumps(doc, indent=2, sort_keys=True) + "\n")
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="fockchannel",
        description="Purity of Fock states and 0-1 cats in Gaussian noisy channels")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="purity series for one state and channel")
    p.add_argument("--state", required=True,
                   help="Fock order (integer) or 'cat01'")
    p.add_argument("--theta", type=float, default=0.0,
                   help="cat superposition phase (radians)")
    _add_bath_args(p)
    p.add_argument("--t-max", type=float, default=2.0, help="grid end in gamma*t")
    p.add_argument("--paths", default="closed_form",
                   help=f"comma list from {','.join(ALL_PATHS)}")
    _add_output_args(p)
    _add_oracle_args(p)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("fig1", help="number-state purity curves at mu_inf=0.5")
    p.add_argument("--t-max", type=float, default=1.0)
    _add_output_args(p)
    p.set_defaults(func=_cmd_fig1)

    p = sub.add_parser("fig2", help="relative cat purity gain vs bath squeezing")
    p.add_argument("--t-max", type=float, default=1.0)
    p.add_argument("--theta", type=float, default=None,
                   help="cat phase (default: optimal locking to the bath angle)")
    p.add_argument("--phi", type=float, default=None, help="bath angle (default 0)")
    _add_output_args(p)
    p.set_defaults(func=_cmd_fig2)

    p = sub.add_parser("validate", help="cross-path agreement report")
    p.add_argument("--quick", action="store_true",
                   help="reduced grid without oracle runs")
    p.add_argument("--out", default=None, help="also write the table as CSV")
    _add_oracle_args(p)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("convert", help="print both channel parametrizations")
    _add_bath_args(p)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_convert)
    return parser


def main(argv=None):
    level = os.environ.get("FOCKCHANNEL_LOG", "warning").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING),
                        format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except NumericalAccuracyError as exc:
        print(f"numerical accuracy failure: {exc}", file=sys.stderr)
        return EXIT_ACCURACY
    except FockChannelError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
