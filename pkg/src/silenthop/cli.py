"""Command-line front end: closed-form numbers, sweeps, traces, and figures."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import analysis
from .bits import bits_from_hex, random_bits
from .channel import ChannelConfig
from .ecc import EccConfig
from .errors import InfeasibleOracleError, ParameterError
from .simulate import (ExperimentConfig, exhaustive_oracle, monte_carlo, read_csv,
                       render_trace_text, split_rng, trace, write_csv)


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2))


def _cmd_theory(args) -> int:
    _emit({
        "jam_prob": args.pa,
        "codeword_length": args.n,
        "message_length": args.lm,
        "codeword_delivery_prob": analysis.codeword_delivery_prob(args.pa, args.n),
        "message_delivery_prob": analysis.message_delivery_prob(args.pa, args.n, args.lm),
        "message_delivery_lower_bound": analysis.message_delivery_lower_bound(args.pa, args.n, args.lm),
        "message_delivery_prob_exact": analysis.message_delivery_prob_exact(args.pa, args.n, args.lm),
    })
    return 0


def _cmd_bound(args) -> int:
    if args.n is not None:
        _emit({
            "epsilon": args.epsilon,
            "message_length": args.lm,
            "codeword_length": args.n,
            "max_jamming_resiliency": analysis.max_jamming_resiliency(args.epsilon, args.lm, args.n),
        })
    else:
        _emit({
            "epsilon": args.epsilon,
            "message_length": args.lm,
            "jam_prob": args.pa,
            "required_codeword_length": analysis.required_codeword_length(args.pa, args.epsilon, args.lm),
            "required_codeword_length_real": analysis.required_codeword_length_real(args.pa, args.epsilon, args.lm),
        })
    return 0


def _cmd_simulate(args) -> int:
    config = ExperimentConfig.from_file(args.config)

    def progress(point):
        print(f"A={point.jammed_count:4d} n={point.codeword_length:3d} "
              f"L_m={point.message_length:4d} rate={point.delivery_rate:.4f} "
              f"theory={point.theory:.4f}")

    points = monte_carlo(config, progress=progress)
    write_csv(points, config.output_path)
    print(f"wrote {len(points)} points to {config.output_path}")
    if args.plot:
        from .report import render_sweep_figure
        figure_path = str(Path(config.output_path).with_suffix(".png"))
        render_sweep_figure(points, figure_path)
        print(f"wrote figure to {figure_path}")
    return 0


def _cmd_trace(args) -> int:
    channel = ChannelConfig(frequency_count=args.freqs, proactive_jammed_count=args.jammed)
    message = random_bits(split_rng(args.seed, "trace-message"), args.lm)
    log = trace(message, args.seed, channel, EccConfig(args.n))
    if args.json:
        _emit(log)
    else:
        sys.stdout.write(render_trace_text(log))
    return 0


def _cmd_oracle(args) -> int:
    message = bits_from_hex(args.message)
    prob = exhaustive_oracle(args.freqs, args.jammed, args.n, message.size, message)
    _emit({
        "frequency_count": args.freqs,
        "jammed_count": args.jammed,
        "codeword_length": args.n,
        "message_length": int(message.size),
        "message": args.message,
        "delivery_prob": prob,
    })
    return 0


def _cmd_plot(args) -> int:
    from .report import render_sweep_figure
    points = read_csv(args.csv)
    out = args.out or str(Path(args.csv).with_suffix(".png"))
    render_sweep_figure(points, out)
    print(f"wrote figure to {out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="silenthop",
        description="Jamming-resilient silent-slot communication: analysis and simulation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    theory = sub.add_parser("theory", help="closed-form delivery probabilities as JSON")
    theory.add_argument("--pa", type=float, required=True, help="proactive jamming probability")
    theory.add_argument("--n", type=int, required=True, help="codeword length")
    theory.add_argument("--lm", type=int, required=True, help="message length in bits")
    theory.set_defaults(func=_cmd_theory)

    bound = sub.add_parser("bound", help="jamming resiliency bound or required codeword length")
    bound.add_argument("--epsilon", type=float, required=True, help="target failure probability")
    bound.add_argument("--lm", type=int, required=True, help="message length in bits")
    which = bound.add_mutually_exclusive_group(required=True)
    which.add_argument("--n", type=int, help="codeword length (solve for max jamming probability)")
    which.add_argument("--pa", type=float, help="jamming probability (solve for codeword length)")
    bound.set_defaults(func=_cmd_bound)

    simulate = sub.add_parser("simulate", help="run a Monte Carlo sweep from a config file")
    simulate.add_argument("--config", required=True, help="TOML experiment config")
    simulate.add_argument("--plot", action="store_true",
                          help="also render the sweep figure next to the CSV")
    simulate.set_defaults(func=_cmd_simulate)

    tracer = sub.add_parser("trace", help="log one exchange slot by slot")
    tracer.add_argument("--lm", type=int, required=True, help="message length in bits")
    tracer.add_argument("--n", type=int, required=True, help="codeword length")
    tracer.add_argument("--freqs", type=int, required=True, help="number of frequencies")
    tracer.add_argument("--jammed", type=int, required=True, help="proactively jammed frequencies")
    tracer.add_argument("--seed", type=int, required=True, help="trace seed (unsigned 64-bit)")
    tracer.add_argument("--json", action="store_true", help="emit JSON instead of text")
    tracer.set_defaults(func=_cmd_trace)

    oracle = sub.add_parser("oracle", help="exact delivery probability of a fixed message")
    oracle.add_argument("--freqs", type=int, required=True, help="number of frequencies")
    oracle.add_argument("--jammed", type=int, required=True, help="proactively jammed frequencies")
    oracle.add_argument("--n", type=int, required=True, help="codeword length")
    oracle.add_argument("--message", required=True, help="message as hex, 4 bits per character")
    oracle.set_defaults(func=_cmd_oracle)

    plot = sub.add_parser("plot", help="render a figure from an existing sweep CSV")
    plot.add_argument("--csv", required=True, help="CSV written by the simulate command")
    plot.add_argument("--out", help="output image path (default: CSV name with .png)")
    plot.set_defaults(func=_cmd_plot)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InfeasibleOracleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
