"""Command-line interface: ``isingnet build|solve|factor|decomp``.

Exit codes: 0 success or factored, 1 I/O failure, 2 usage or malformed input,
3 infeasible, 4 budget exhausted, 5 enumeration cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import config
from .exceptions import EnumerationCapError, SerializationError
from .experiment import DEFAULT_FAMILY, CampaignSpec, run_campaign, trend_report, write_campaign
from .gates import and_gate, full_multiplier
from .io import dumps_net, load_net
from .knuth import FactorStatus, KnuthDims, build_knuth, factor
from .solver import FigureStrategy
from .spins import ground_energy_and_states

EXIT_OK = 0
EXIT_IO = 1
EXIT_USAGE = 2
EXIT_INFEASIBLE = 3
EXIT_BUDGET = 4
EXIT_CAP = 5

STRATEGY_ALIASES = {"random_half": "random_half", "random": "random_half",
                    "unsat": "unsat_multiplier", "unsat_multiplier": "unsat_multiplier"}


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {text}")
    return value


def _non_negative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative, got {text}")
    return value


def _dims_list(text: str) -> list[KnuthDims]:
    try:
        return [KnuthDims.parse(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad dimensions {text!r}: expected e.g. 1x1,2x2") from exc


def _fraction(text: str) -> float:
    value = float(text)
    if not 0 < value <= 1:
        raise argparse.ArgumentTypeError("fraction must lie in (0, 1]")
    return value


def _confidence(text: str) -> float:
    value = float(text)
    if not 0 < value < 1:
        raise argparse.ArgumentTypeError("confidence must lie in (0, 1)")
    return value


def cmd_build(args) -> int:
    if args.kind == "knuth":
        if args.n is None or args.m is None:
            args.parser.error("build knuth needs the dimensions N M")
        knet = build_knuth(KnuthDims(args.n, args.m))
        net, banner = knet.net, f"expected ground energy: {knet.dims.ground_energy}"
    elif args.n is not None:
        args.parser.error(f"build {args.kind} takes no dimensions")
    elif args.kind == "and":
        net, banner = and_gate(), None
    else:
        net, banner = full_multiplier(), None
    text = dumps_net(net) + "\n"
    report = sys.stderr if args.out == "-" else sys.stdout
    if args.out == "-":
        sys.stdout.write(text)
    else:
        Path(args.out).write_text(text)
    print(f"vertices: {len(net)}", file=report)
    if banner:
        print(banner, file=report)
    return EXIT_OK


def cmd_solve(args) -> int:
    net = load_net(args.net)
    e0, states = ground_energy_and_states(net)
    print(f"E0={e0}, {len(states)} states")
    order = net.order
    print("vertices: " + " ".join(order))
    listing = sorted("".join(str(b) for b in s.bits(order)) for s in states)
    for row in listing[: args.limit]:
        print(row)
    if len(listing) > args.limit:
        print(f"... {len(listing) - args.limit} more")
    return EXIT_OK


def cmd_factor(args) -> int:
    n, m = args.n, args.m
    if args.dims is not None:
        n, m = args.dims.n, args.dims.m
    if n is None or m is None:
        args.parser.error("give the factor sizes with --n/--m or --dims NxM")
    dims = KnuthDims(n, m)
    if not 0 <= args.N < 1 << (n + m):
        args.parser.error(f"{args.N} does not fit in {n + m} bits")
    outcome = factor(args.N, dims, backend=args.backend, budget=args.budget, seed=args.seed)
    if args.json:
        print(json.dumps(outcome.to_json()))
    bound = dims.ground_energy
    if outcome.status is FactorStatus.FACTORED:
        pairs = ", ".join(f"{r} x {g}" for r, g in sorted(outcome.factor_pairs))
        print(f"factored: {pairs}")
        print(f"energy: {outcome.achieved_energy}")
        return EXIT_OK
    if outcome.status is FactorStatus.INFEASIBLE:
        print(f"infeasible (energy {outcome.achieved_energy} > {bound})")
        return EXIT_INFEASIBLE
    print(f"budget exhausted (best energy {outcome.achieved_energy} > {bound} "
          f"after {args.budget} updates)")
    return EXIT_BUDGET


def cmd_decomp(args) -> int:
    settings = config.get()
    spec = CampaignSpec(
        net_family=tuple(args.dims),
        trials_per_net=args.trials,
        strategy=FigureStrategy(STRATEGY_ALIASES[args.strategy], args.fraction),
        max_updates=args.max_updates,
        master_seed=args.seed,
        bootstrap_resamples=args.resamples,
        confidence=args.confidence if args.confidence is not None else settings.default_confidence,
        product_target=args.product,
        n_jobs=args.jobs,
    )
    summaries = run_campaign(spec)
    out_dir = args.out_dir if args.out_dir is not None else Path(settings.output_dir) / "decomp"
    paths = write_campaign(spec, summaries, out_dir, args.scale)
    print(f"{'net':>7} {'size':>5} {'median':>8} {'ci_low':>9} {'ci_high':>9} {'sample':>7} {'fail':>6}")
    for s in summaries:
        if s.error is not None:
            print(f"{s.label:>7} {s.net_size:>5}  error: {s.error}")
            continue
        cells = [s.median_updates, s.ci_low, s.ci_high, s.sample_median]
        text = ["nan" if math.isnan(x) else f"{x:.2f}" for x in cells]
        print(f"{s.label:>7} {s.net_size:>5} {text[0]:>8} {text[1]:>9} {text[2]:>9} {text[3]:>7} "
              f"{s.failures:>6}")
    trend = trend_report(summaries)
    print("second differences of log(median) vs size:     "
          + ", ".join(f"{v:.4g}" for v in trend["semilog"]))
    print("second differences of log(median) vs log(size): "
          + ", ".join(f"{v:.4g}" for v in trend["loglog"]))
    for key, path in paths.items():
        print(f"{key}: {path}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="isingnet", description=__doc__.splitlines()[0])
    parser.add_argument("--config", help=f"settings JSON (default: ${config.ENV_VAR})")
    parser.add_argument("--cap", type=_positive, help="override the enumeration cap")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="write a net as JSON")
    p.add_argument("kind", choices=["and", "multiplier", "knuth"])
    p.add_argument("n", nargs="?", type=_positive)
    p.add_argument("m", nargs="?", type=_positive)
    p.add_argument("-o", "--out", default="-", help="output path ('-' for stdout)")
    p.set_defaults(func=cmd_build, parser=p)

    p = sub.add_parser("solve", help="exact ground energy and ground states of a net file")
    p.add_argument("net")
    p.add_argument("--mode", choices=["exact"], default="exact")
    p.add_argument("--limit", type=_non_negative, default=32, help="maximum states listed")
    p.set_defaults(func=cmd_solve, parser=p)

    p = sub.add_parser("factor", help="factor N with a Knuth net")
    p.add_argument("N", type=_non_negative)
    p.add_argument("--n", type=_positive, help="bits of the first factor r")
    p.add_argument("--m", type=_positive, help="bits of the second factor g")
    p.add_argument("--dims", type=KnuthDims.parse, help="NxM, same as --n N --m M")
    p.add_argument("--backend", choices=["exact", "local"], default="exact")
    p.add_argument("--budget", type=_positive, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true", help="also print the outcome as JSON")
    p.set_defaults(func=cmd_factor, parser=p)

    p = sub.add_parser("decomp", help="measure local-update decomposability")
    p.add_argument("--dims", type=_dims_list, default=list(DEFAULT_FAMILY))
    p.add_argument("--trials", type=_positive, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--strategy", choices=sorted(STRATEGY_ALIASES), default="random_half")
    p.add_argument("--fraction", type=_fraction, default=0.5)
    p.add_argument("--max-updates", type=_non_negative, default=10_000)
    p.add_argument("--resamples", type=int, default=1000)
    p.add_argument("--confidence", type=_confidence)
    p.add_argument("--product", type=_non_negative, help="clamp the product bits to this value")
    p.add_argument("--scale", choices=["semilog", "loglog"], default="semilog")
    p.add_argument("--jobs", type=_positive, default=1)
    p.add_argument("--out-dir", type=Path)
    p.set_defaults(func=cmd_decomp, parser=p)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config.update(config.load(args.config))
        if args.cap is not None:
            config.update(enumeration_cap=args.cap)
        return args.func(args)
    except EnumerationCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (SerializationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
