"""Command line front end: ``beaconloc sweep|point|plot``."""

import argparse
import logging
import sys
from dataclasses import replace


from . import config
from .channel import NoiseModel
from .exceptions import AllTrialsDegenerate, BeaconLocError, ConfigError
from .montecarlo import empirical_eps, point_rng, sweep
from .plotting import read_csv, render_svg, write_csv
from .propagation import theoretical_error_at

log = logging.getLogger("beaconloc")


def _add_source(p, required=True):
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--config", help="configuration file (INI)")
    g.add_argument("--preset", choices=config.PRESETS, help="bundled configuration")


def _add_overrides(p):
    p.add_argument("--trials", type=int, help="Monte Carlo trials per point")
    p.add_argument("--seed", type=int, help="base random seed")
    p.add_argument("--noise", choices=("on", "off"), help="disable noise with 'off'")


def build_parser():
    parser = argparse.ArgumentParser(prog="beaconloc", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="theory and Monte Carlo e_ps over the LED grid")
    _add_source(p)
    _add_overrides(p)
    p.add_argument("--out", required=True, help="output CSV path")
    p.add_argument("--step", type=float, help="grid step (m)")
    p.add_argument("--workers", type=int, help="worker processes")

    p = sub.add_parser("point", help="error report for a single LED position")
    _add_source(p)
    _add_overrides(p)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--y", type=float, required=True)

    p = sub.add_parser("plot", help="render a sweep CSV as an SVG heatmap")
    _add_source(p, required=False)
    p.add_argument("--in", dest="inp", required=True, help="sweep CSV")
    p.add_argument("--out", required=True, help="output SVG path")
    return parser


def _load(args):
    if args.preset:
        scene, spec = config.load_preset(args.preset)
    else:
        scene, spec = config.load_config(args.config)
    if getattr(args, "noise", None) == "off":
        scene = scene.with_noise(NoiseModel.silent())
    changes = {"scene": scene}
    for attr, field in (("trials", "trials_per_point"), ("seed", "seed"),
                        ("step", "step"), ("workers", "workers")):
        value = getattr(args, attr, None)
        if value is not None:
            changes[field] = value
    return scene, replace(spec, **changes)


def _matrix(m, indent="  "):
    return "\n".join(indent + " ".join(f"{v: .6e}" for v in row) for row in m)


def cmd_sweep(args):
    _, spec = _load(args)
    result = sweep(spec)
    try:
        with open(args.out, "w", newline="") as fh:
            write_csv(result, fh)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return 1
    if result.failed:
        for rec in result.failed:
            print(f"error: point ({rec.x:g}, {rec.y:g}): {rec.error}", file=sys.stderr)
        return 1
    return 0


def cmd_point(args):
    scene, spec = _load(args)
    lx, ly, _ = scene.room
    if not (0 <= args.x <= lx and 0 <= args.y <= ly):
        print(f"error: ({args.x}, {args.y}) is outside the room", file=sys.stderr)
        return 2
    led = scene.led_at(args.x, args.y)
    try:
        report = theoretical_error_at(scene, led)
        mc, se, bad = empirical_eps(scene, led, spec.trials_per_point, point_rng(spec.seed, 0))
    except (BeaconLocError, AllTrialsDegenerate) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"led_m: {led[0]:g} {led[1]:g} {led[2]:g}")
    print(f"e_ps_theory_m: {report.e_ps:.6e}")
    print(f"e_ps_mc_m: {mc:.6e}")
    print(f"mc_stderr_m: {se:.6e}")
    print(f"trials: {spec.trials_per_point}")
    print(f"degenerate_trials: {bad}")
    print("error_covariance_m2:")
    print(_matrix(report.covariance))
    for k, cov in enumerate(report.head_covariances, start=1):
        print(f"incidence_covariance_head{k}:")
        print(_matrix(cov))
    return 0


def cmd_plot(args):
    try:
        cols = read_csv(args.inp)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    estimators = ()
    if args.preset or args.config:
        scene, _ = _load(args)
        estimators = [tuple(e.position[:2]) for e in scene.estimators]
    try:
        render_svg(cols, args.out, estimators)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return 1
    return 0


COMMANDS = {"sweep": cmd_sweep, "point": cmd_point, "plot": cmd_plot}


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
