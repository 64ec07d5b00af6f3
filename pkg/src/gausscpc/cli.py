"""
Command-line interface.

Exit status: 0 success, 1 usage or parse error, 2 unphysical channel,
3 zero-noise channel where a finite value was requested.
"""
import argparse
import csv
import io
import json
import sys

import numpy as np

from . import capacity, channel, photostats
from .errors import ChannelError, ZeroNoiseChannel

EXIT_OK, EXIT_USAGE, EXIT_UNPHYSICAL, EXIT_ZERO_NOISE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def fmt(value):
    if capacity.is_infinite(value):
        return "inf"
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    return f"{float(value):.12g}"


# -- configuration

def _load_file(path):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise UsageError(f"{path}: top level must be a JSON object")
    return data


def _channel_record(args, config):
    """Channel record from flags, falling back to the config file."""
    for flag, build in (
            ("matrices", lambda v: {"matrices": {"X": v[:4], "Y": v[4:]}}),
            ("fiducial", lambda v: {"fiducial": {"eta": v[0], "y": v[1], "s": v[2]}}),
            ("output_noise", lambda v: {"output_noise": {"eta": v[0], "n_b": v[1],
                                                         "omega_max": v[2]}}),
            ("pure_loss", lambda v: {"pure_loss": {"tau": v}}),
            ("thermal_loss", lambda v: {"thermal_loss": {"tau": v[0], "nth": v[1]}}),
            ("amplifier", lambda v: {"amplifier": {"gain": v[0], "nth": v[1]}})):
        value = getattr(args, flag, None)
        if value is not None:
            return build(value)
    if "channel" in config:
        return config["channel"]
    known = {"matrices", "fiducial", "output_noise", "pure_loss",
             "thermal_loss", "amplifier"}
    rec = {k: v for k, v in config.items() if k in known}
    if rec:
        return rec
    raise UsageError("no channel given: use --channel FILE or a preset flag "
                     "such as --thermal-loss TAU NTH")


def load_channel(args):
    config = _load_file(args.channel) if getattr(args, "channel", None) else {}
    rec = _channel_record(args, config)
    try:
        ch = channel.channel_from_spec(rec)
    except ChannelError:
        raise
    except (ValueError, TypeError, KeyError) as exc:
        raise UsageError(f"channel spec: {exc}") from exc
    return ch, config


def _setting(args, config, name, default):
    value = getattr(args, name, None)
    if value is not None:
        return value
    return config.get("sweep", {}).get(name, default)


# -- output

def _emit(args, rows, header=None):
    """Write key/value rows (text) or a header + rows table (csv)."""
    buf = io.StringIO()
    if header is None:
        if args.format == "csv":
            w = csv.writer(buf, lineterminator="\n")
            w.writerow([k for k, _ in rows])
            w.writerow([fmt(v) for _, v in rows])
        else:
            width = max(len(k) for k, _ in rows)
            for k, v in rows:
                buf.write(f"{k:<{width}}  {fmt(v)}\n")
    else:
        if args.format == "csv":
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(header)
            for row in rows:
                w.writerow([fmt(v) for v in row])
        else:
            cells = [header] + [[fmt(v) for v in row] for row in rows]
            widths = [max(len(c[i]) for c in cells) for i in range(len(header))]
            for c in cells:
                buf.write("  ".join(x.rjust(wd) for x, wd in zip(c, widths)) + "\n")
    out = getattr(args, "output", None)
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())


def _summary(ch):
    f = channel.fiducial_decompose(ch)
    noise = channel.output_noise(f)
    return f, noise, capacity.quantum_cpc_bound(noise, f.eta)


# -- subcommands

def cmd_validate(args):
    try:
        ch, _ = load_channel(args)
        f, noise, bound = _summary(ch)
    except ChannelError as exc:
        _emit(args, [("physical", "no"), ("violation", type(exc).__name__),
                     ("detail", str(exc))])
        return EXIT_UNPHYSICAL
    _emit(args, [("physical", "yes"), ("eta", f.eta), ("y", f.y), ("s", f.s),
                 ("n_b", noise.n_b), ("omega_max", noise.omega_max),
                 ("quantum_bound", bound)])
    return EXIT_OK


def cmd_decompose(args):
    ch, _ = load_channel(args)
    f = channel.fiducial_decompose(ch)
    M = f.M.ravel()
    _emit(args, [("eta", f.eta), ("y", f.y), ("s", f.s), ("theta", f.theta),
                 ("M11", M[0]), ("M12", M[1]), ("M21", M[2]), ("M22", M[3])])
    return EXIT_OK


def cmd_bound(args):
    ch, _ = load_channel(args)
    f, noise, bound = _summary(ch)
    over = bound if capacity.is_infinite(bound) else bound / abs(f.eta)
    _emit(args, [("n_b", noise.n_b), ("omega_max", noise.omega_max),
                 ("quantum_bound", bound), ("quantum_bound_over_eta", over)])
    return EXIT_OK


def _positive_ns(args):
    if args.n_s is None or not args.n_s > 0:
        raise UsageError("--n-s must be positive")
    return args.n_s


def cmd_dist(args):
    eps_tail = args.eps_tail
    if args.gamma2 is not None:
        if args.n_b is None:
            raise UsageError("--gamma2 requires --n-b")
        gamma2, n_b = args.gamma2, args.n_b
    else:
        ch, config = load_channel(args)
        eps_tail = _setting(args, config, "eps_tail", photostats.DEFAULT_EPS_TAIL)
        f = channel.fiducial_decompose(ch)
        if args.n_s is None or args.n_s < 0:
            raise UsageError("--n-s must be nonnegative")
        gamma2 = channel.gamma_displacement(f, args.n_s)
        n_b = channel.output_noise(f).n_b
    if gamma2 < 0 or n_b < 0:
        raise UsageError("gamma2 and n_b must be nonnegative")
    d = photostats.photon_distribution(gamma2, n_b, eps_tail or photostats.DEFAULT_EPS_TAIL)
    rows = [(k, p) for k, p in enumerate(d.probs)]
    _emit(args, rows, header=["k", "p"])
    return EXIT_OK


def cmd_point(args):
    n_s = _positive_ns(args)
    ch, config = load_channel(args)
    eps = _setting(args, config, "eps", 0.1)
    eps_tail = _setting(args, config, "eps_tail", photostats.DEFAULT_EPS_TAIL)
    f, noise, bound = _summary(ch)
    if args.scheme == "pnr":
        res = capacity.pnr_cpc(n_s, f, eps_tail)
    else:
        gamma2 = channel.gamma_displacement(f, n_s)
        k_th = args.k_th if args.k_th is not None else capacity.default_threshold(gamma2, eps)
        res = capacity.threshold_cpc(n_s, k_th, f, eps_tail)
    eta = abs(f.eta)
    _emit(args, [("scheme", res.scheme.value), ("n_s", res.n_s), ("gamma2", res.gamma2),
                 ("k_th", res.k_th), ("value", res.value),
                 ("value_over_eta", res.value / eta),
                 ("cross_entropy_term", res.cross_entropy_term),
                 ("entropy_term", res.entropy_term),
                 ("quantum_bound", bound), ("quantum_bound_over_eta", bound / eta)])
    return EXIT_OK


def cmd_mi(args):
    n_s = _positive_ns(args)
    ch, config = load_channel(args)
    eps_tail = _setting(args, config, "eps_tail", photostats.DEFAULT_EPS_TAIL)
    try:
        params = capacity.OOKParams(args.lam, n_s)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    f = channel.fiducial_decompose(ch)
    I, pie = capacity.ook_mutual_information(params, f, eps_tail)
    _emit(args, [("lambda", params.lam), ("n_s", n_s), ("n_a", params.n_a),
                 ("mutual_information", I), ("pie", pie)])
    return EXIT_OK


SWEEP_HEADER = ["eta_ns", "cpc_pnr_over_eta", "cpc_threshold_over_eta", "k_th",
                "quantum_bound_over_eta"]


def sweep_rows(f, grid, schemes, eps, eps_tail):
    """One row per output cost ``|eta| n_s`` in ``grid``, in grid order."""
    noise = channel.output_noise(f)
    if noise.n_b == 0:
        raise ZeroNoiseChannel("sweep needs a channel with n_b > 0")
    eta = abs(f.eta)
    bound = capacity.quantum_cpc_bound(noise, f.eta) / eta
    rows = []
    for eta_ns in grid:
        n_s = eta_ns / eta
        pnr = thr = k_th = None
        if "pnr" in schemes:
            pnr = capacity.pnr_cpc(n_s, f, eps_tail).value / eta
        if "threshold" in schemes:
            k_th = capacity.default_threshold(channel.gamma_displacement(f, n_s), eps)
            thr = capacity.threshold_cpc(n_s, k_th, f, eps_tail).value / eta
        rows.append([float(eta_ns), pnr, thr, k_th, bound])
    return rows


def cmd_sweep(args):
    ch, config = load_channel(args)
    lo = float(_setting(args, config, "min", 0.1))
    hi = float(_setting(args, config, "max", 1e4))
    points = int(_setting(args, config, "points", 41))
    schemes = _setting(args, config, "schemes", "pnr,threshold")
    if isinstance(schemes, str):
        schemes = [s.strip() for s in schemes.split(",") if s.strip()]
    eps = float(_setting(args, config, "eps", 0.1))
    eps_tail = float(_setting(args, config, "eps_tail", photostats.DEFAULT_EPS_TAIL))
    if args.output is None and config.get("sweep", {}).get("output"):
        args.output = config["sweep"]["output"]
    if not 0 < lo < hi:
        raise UsageError("sweep grid needs 0 < min < max")
    if points < 2:
        raise UsageError("sweep grid needs at least 2 points")
    if not 0 < eps < 1:
        raise UsageError("--eps must lie in (0, 1)")
    bad = set(schemes) - {"pnr", "threshold"}
    if bad or not schemes:
        raise UsageError(f"unknown schemes {sorted(bad)}; choose from pnr, threshold")
    f = channel.fiducial_decompose(ch)
    grid = np.geomspace(lo, hi, points)
    _emit(args, sweep_rows(f, grid, schemes, eps, eps_tail), header=SWEEP_HEADER)
    return EXIT_OK


def build_parser():
    parser = _Parser(prog="gausscpc",
                     description="Capacity per unit cost of on-off keying over "
                                 "single-mode Gaussian channels.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    common = _Parser(add_help=False)
    g = common.add_argument_group("channel")
    g.add_argument("--channel", metavar="FILE", help="JSON channel spec or config file")
    g.add_argument("--matrices", nargs=8, type=float, metavar="V",
                   help="X then Y, each row-major 2x2")
    g.add_argument("--fiducial", nargs=3, type=float, metavar=("ETA", "Y", "S"))
    g.add_argument("--output-noise", nargs=3, type=float, metavar=("ETA", "NB", "OMEGA"))
    g.add_argument("--pure-loss", type=float, metavar="TAU")
    g.add_argument("--thermal-loss", nargs=2, type=float, metavar=("TAU", "NTH"))
    g.add_argument("--amplifier", nargs=2, type=float, metavar=("GAIN", "NTH"))
    common.add_argument("--eps", type=float, default=None, help="threshold margin (default 0.1)")
    common.add_argument("--eps-tail", type=float, default=None,
                        help="truncation tolerance (default 1e-15)")
    common.add_argument("--format", choices=["csv", "text"], default=None)
    common.add_argument("--output", metavar="PATH")

    def add(name, func, fmt_default, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=func, default_format=fmt_default)
        return p

    add("validate", cmd_validate, "text", "check physicality and report parameters")
    add("decompose", cmd_decompose, "text", "fiducial decomposition")
    add("bound", cmd_bound, "text", "ultimate quantum CPC")
    p = add("dist", cmd_dist, "csv", "photocount distribution as k,p(k)")
    p.add_argument("--n-s", type=float)
    p.add_argument("--gamma2", type=float)
    p.add_argument("--n-b", type=float)
    p = add("point", cmd_point, "text", "CPC at a single signal cost")
    p.add_argument("--n-s", type=float, required=True)
    p.add_argument("--scheme", choices=["pnr", "threshold"], default="pnr")
    p.add_argument("--k-th", type=int)
    p = add("mi", cmd_mi, "text", "OOK mutual information at finite lambda")
    p.add_argument("--n-s", type=float, required=True)
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p = add("sweep", cmd_sweep, "csv", "CPC against output cost |eta| n_s")
    p.add_argument("--min", type=float)
    p.add_argument("--max", type=float)
    p.add_argument("--points", type=int)
    p.add_argument("--schemes", help="comma-separated subset of pnr,threshold")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = args.default_format
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"gausscpc {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ChannelError as exc:
        print(f"gausscpc {args.command}: unphysical channel ({type(exc).__name__}): {exc}",
              file=sys.stderr)
        return EXIT_UNPHYSICAL
    except ZeroNoiseChannel as exc:
        print(f"gausscpc {args.command}: {exc}", file=sys.stderr)
        return EXIT_ZERO_NOISE


if __name__ == "__main__":
    sys.exit(main())
