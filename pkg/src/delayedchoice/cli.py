"""Command-line interface.

Every report prints human-readable lines followed by ``key=value`` lines
(no spaces around ``=``) for scripts.

Exit codes: 0 success, 2 configuration/usage error, 3 I/O error,
4 analysis infeasible.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import logging
import re
import sys
from typing import Optional, Sequence

from .analysis import (
    InfeasibleError,
    MeasuredParameters,
    UndefinedBoundError,
    bayes_lower_bounds,
    classify_theory,
    exclusion_region,
)
from .config import load_config
from .eventlog import EventLogError, read_event_log, write_event_log
from .experiment import RunConfig, run_experiment
from .models import ConfigError
from .qrng import estimate_predictability
from .stats import EstimationError, estimate_alpha, estimate_visibility_fit, estimate_visibility_minmax, tally
from .timing import experiment_timeline

log = logging.getLogger("delayedchoice")

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_INFEASIBLE = 0, 2, 3, 4

_KV = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)=(\S*)$")


class Report:
    def __init__(self, out=None):
        self.out = out or sys.stdout
        self.keys: dict[str, str] = {}

    def say(self, text: str = "") -> None:
        print(text, file=self.out)

    def kv(self, key: str, value) -> None:
        if key in self.keys:
            raise KeyError(f"duplicate report key {key}")
        if isinstance(value, float):
            value = f"{value:.10f}"
        self.keys[key] = str(value)

    def flush(self) -> None:
        for k, v in self.keys.items():
            print(f"{k}={v}", file=self.out)


def parse_report(text: str) -> dict[str, str]:
    """Collect the machine-readable ``key=value`` lines of a report."""
    found: dict[str, str] = {}
    for line in text.splitlines():
        m = _KV.match(line.strip())
        if m:
            if m.group(1) in found:
                raise ValueError(f"duplicate key {m.group(1)}")
            found[m.group(1)] = m.group(2)
    return found


def _bounds_lines(rep: Report, bounds) -> None:
    rep.say(f"P(closed | wave)    >= {bounds.p_c_given_w_min:.6f}")
    rep.say(f"P(open | particle)  >= {bounds.p_o_given_p_min:.6f}")
    rep.say(f"symmetric guess     >= {bounds.symmetric_guess_min:.6f}")
    rep.kv("p_c_given_w_min", bounds.p_c_given_w_min)
    rep.kv("p_o_given_p_min", bounds.p_o_given_p_min)
    rep.kv("symmetric_guess_min", bounds.symmetric_guess_min)


def cmd_simulate(args, rep: Report) -> int:
    run = load_config(args.config)
    if args.seed is not None:
        run = dataclasses.replace(run, seed=args.seed)
    records = run_experiment(run, workers=args.workers)
    with open(args.out, "w", newline="") as fh:
        write_event_log(records, fh)
    n_closed = sum(r.config.value == "C" for r in records)
    rep.say(f"simulated {len(records)} pulses ({run.mode.value} model, seed {run.seed})")
    rep.say(f"closed {n_closed}, open {len(records) - n_closed}; log written to {args.out}")
    rep.kv("pulses", len(records))
    rep.kv("seed", run.seed)
    return EXIT_OK


def _write_fringe_csv(path, bins) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["phase_rad", "gates", "counts1", "rate1"])
        for b in bins:
            w.writerow([f"{b.phase:.9f}", b.gates, b.counts1, repr(b.rate)])


def cmd_analyze(args, rep: Report) -> int:
    with open(args.input, newline="") as fh:
        records = read_event_log(fh)
    summary, bins = tally(records)
    alpha = estimate_alpha(summary)
    estimator = estimate_visibility_minmax if args.method == "minmax" else estimate_visibility_fit
    vis = estimator(bins)
    m = MeasuredParameters(vis.value, alpha.value, vis.stderr, alpha.stderr)
    verdict = classify_theory(m, args.sigmas, args.qrng_predictability)

    rep.say(f"open gates {summary.gates}: singles {summary.singles1}/{summary.singles2}, "
            f"coincidences {summary.coincidences}")
    rep.say(f"closed gates {sum(b.gates for b in bins)} over {len(bins)} phases")
    rep.say(f"visibility V      {vis.value:.4f} +/- {vis.stderr:.4f} ({vis.method.value}, raw {vis.raw_value:.4f})")
    rep.say(f"anticorrelation a {alpha.value:.4f} +/- {alpha.stderr:.4f}")
    rep.say(f"verdict: {verdict.verdict.value} at {args.sigmas:g} sigma")
    for line in verdict.notes.splitlines():
        rep.say("  " + line)
    rep.kv("V", vis.value)
    rep.kv("V_err", vis.stderr)
    rep.kv("V_raw", vis.raw_value)
    rep.kv("alpha", alpha.value)
    rep.kv("alpha_err", alpha.stderr)
    if verdict.bounds is not None:
        rep.kv("p_c_given_w_min", verdict.bounds.p_c_given_w_min)
        rep.kv("p_o_given_p_min", verdict.bounds.p_o_given_p_min)
        rep.kv("symmetric_guess_min", verdict.bounds.symmetric_guess_min)
    rep.kv("verdict", verdict.verdict.value)

    if args.fringe_out:
        _write_fringe_csv(args.fringe_out, bins)
        rep.say(f"fringe data written to {args.fringe_out}")
    if args.figure:
        from .plotting import plot_fringe

        plot_fringe(bins, vis, args.figure)
        rep.say(f"fringe figure written to {args.figure}")
    return EXIT_OK


def cmd_bounds(args, rep: Report) -> int:
    m = MeasuredParameters(args.v, args.alpha)
    bounds = bayes_lower_bounds(m)
    rep.say(f"V = {m.V:g}, alpha = {m.alpha:g}")
    _bounds_lines(rep, bounds)
    return EXIT_OK


def cmd_causality(args, rep: Report) -> int:
    geom = load_config(args.config).geometry if args.config else RunConfig().geometry
    tl = experiment_timeline(geom, args.margin_ns)
    for ev in tl.events:
        rep.say(f"{ev.label:<18} x = {ev.position_m:8.3f} m   t = {ev.time_ns:8.2f} ns")
    a, b = tl.critical_pair
    speed = tl.required_speed_c
    rep.say(f"critical pair: {a.label} -> {b.label}")
    rep.say(f"required influence speed = {speed:.2f} c")
    rep.say(f"spacelike separated: {'yes' if tl.spacelike else 'no'}")
    rep.say("note: the event pair is reconstructed as arm length against switching time")
    rep.kv("required_speed_c", speed)
    rep.kv("spacelike", int(tl.spacelike))
    return EXIT_OK


def cmd_region(args, rep: Report) -> int:
    grid = exclusion_region(args.n)
    with open(args.out, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["V", "alpha", "compatible", "kind"])
        for p in grid.points:
            w.writerow([repr(p.V), repr(p.alpha), int(p.compatible), "grid"])
        e = grid.experiment
        w.writerow([repr(e.V), repr(e.alpha), int(e.compatible), "experiment"])
    rep.say(f"{args.n}x{args.n} grid: {grid.n_compatible} of {len(grid.points)} points "
            "compatible with a no-leakage particle-or-wave theory")
    rep.kv("grid_points", len(grid.points))
    rep.kv("compatible_points", grid.n_compatible)
    if args.figure:
        from .plotting import plot_region

        plot_region(grid, args.figure)
        rep.say(f"region figure written to {args.figure}")
    return EXIT_OK


def cmd_predictability(args, rep: Report) -> int:
    with open(args.input, newline="") as fh:
        records = read_event_log(fh)
    est = estimate_predictability([r.config for r in records])
    rep.say(f"model-defined predictability {est.value:.4f} over {est.n} choices "
            f"(best predictor: {est.best_predictor.value})")
    rep.kv("qrng_predictability", est.value)
    rep.kv("best_predictor", est.best_predictor.value)
    rep.kv("n", est.n)
    return EXIT_OK


def _probability(text: str) -> float:
    value = float(text)
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"{text} is not a probability")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="delayedchoice", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="run the Monte Carlo and write an event log")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("analyze", help="estimate V and alpha from a log and classify")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--sigmas", type=float, default=3.0)
    p.add_argument("--qrng-predictability", type=_probability)
    p.add_argument("--method", choices=("fit", "minmax"), default="fit")
    p.add_argument("--fringe-out", help="write per-phase counts as CSV")
    p.add_argument("--figure", help="render the fringe and its fit to this image file")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("bounds", help="Bayes lower bounds for given V and alpha")
    p.add_argument("--v", type=float, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("causality", help="timeline and required influence speed")
    p.add_argument("--config")
    p.add_argument("--margin-ns", type=float, default=0.0)
    p.set_defaults(func=cmd_causality)

    p = sub.add_parser("region", help="V-alpha compatibility grid")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--figure", help="render the grid to this image file")
    p.set_defaults(func=cmd_region)

    p = sub.add_parser("predictability", help="predictability of the logged choices")
    p.add_argument("--in", dest="input", required=True)
    p.set_defaults(func=cmd_predictability)
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    rep = Report(out)
    try:
        code = args.func(args, rep)
    except (ConfigError, ValueError) as exc:
        if isinstance(exc, (UndefinedBoundError, InfeasibleError, EstimationError)):
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_INFEASIBLE
        if isinstance(exc, EventLogError):
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_IO
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    rep.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
