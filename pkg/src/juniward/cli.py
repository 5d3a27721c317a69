"""Command line front end.

Subcommands cover the full pipeline: synthesize a striped cover, compute cost
or block-cost grids under either window alignment, compare the alignments,
simulate an embedding, sweep qualities, and render a grid to PGM. Exit code 0
on success, 1 for validation problems (bad flags, malformed containers,
impossible payloads), 2 for I/O failures. Given identical arguments, input
bytes and seed, every command writes identical output bytes.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .analysis import PATTERNS, compare, quality_sweep, synth_cover
from .container import (
    ContainerError,
    read_container,
    read_grid_tsv,
    write_container,
    write_csv,
    write_grid,
)
from .costmap import CostParams, WindowMode, block_costs, compute_costmap
from .embed import simulate, solve_lambda

DEFAULT_SIGMA = 2.0 ** -6


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _add_mode(p):
    p.add_argument("--mode", choices=["original", "fixed"], default="fixed",
                   help="residual window alignment (default fixed)")


def _add_sigma(p):
    p.add_argument("--sigma", type=float, default=DEFAULT_SIGMA,
                   help="residual stabilizer (default 2**-6)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="juniward", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("costmap", help="per-coefficient embedding costs as TSV")
    p.add_argument("--input", required=True)
    _add_mode(p)
    _add_sigma(p)
    p.add_argument("--output", required=True)

    p = sub.add_parser("blockcost", help="per-block window costs as TSV")
    p.add_argument("--input", required=True)
    _add_mode(p)
    _add_sigma(p)
    p.add_argument("--output", required=True)

    p = sub.add_parser("compare", help="both alignments side by side into a directory")
    p.add_argument("--input", required=True)
    p.add_argument("--payload", type=float, required=True,
                   help="bits per nonzero AC coefficient")
    _add_sigma(p)
    p.add_argument("--out-dir", required=True)

    p = sub.add_parser("embed", help="simulate an embedding and write the stego container")
    p.add_argument("--input", required=True)
    _add_mode(p)
    _add_sigma(p)
    p.add_argument("--payload", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", required=True)

    p = sub.add_parser("synth", help="synthesize a striped test cover")
    p.add_argument("--pattern", choices=list(PATTERNS), required=True)
    p.add_argument("--width", type=int, required=True)
    p.add_argument("--height", type=int, required=True)
    p.add_argument("--quality", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--amplitude", type=float, default=255.0,
                   help="peak-to-peak noise amplitude of textured stripes")
    p.add_argument("--output", required=True)

    p = sub.add_parser("sweep", help="block-cost statistics across qualities")
    p.add_argument("--pattern", choices=list(PATTERNS), required=True)
    p.add_argument("--qualities", required=True,
                   help="comma-separated integers, e.g. 30,75,95")
    p.add_argument("--width", type=int, default=200)
    p.add_argument("--height", type=int, default=40)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--amplitude", type=float, default=32.0)
    _add_sigma(p)
    p.add_argument("--output", required=True)

    p = sub.add_parser("render", help="render a TSV grid to a PGM image")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)

    return parser


def _params(args) -> CostParams:
    return CostParams(sigma=args.sigma)


def _cmd_costmap(args) -> int:
    c = read_container(args.input)
    cm = compute_costmap(c, WindowMode(args.mode), _params(args))
    write_grid(cm.rho, args.output, "tsv")
    return 0


def _cmd_blockcost(args) -> int:
    c = read_container(args.input)
    write_grid(block_costs(c, WindowMode(args.mode), _params(args)), args.output, "tsv")
    return 0


def _cmd_compare(args) -> int:
    c = read_container(args.input)
    report = compare(c, _params(args), args.payload)
    os.makedirs(args.out_dir, exist_ok=True)
    join = lambda name: os.path.join(args.out_dir, name)
    write_grid(report.block_orig, join("block_orig.tsv"), "tsv")
    write_grid(report.block_fixed, join("block_fixed.tsv"), "tsv")
    write_grid(report.block_diff, join("block_diff.tsv"), "tsv")
    write_csv(report.scatter_blocks, join("scatter_blocks.csv"), ("original", "fixed"))
    write_csv(report.scatter_probs, join("scatter_probs.csv"), ("original", "fixed"))
    with open(join("summary.json"), "w", encoding="ascii") as f:
        f.write(json.dumps(report.summary, sort_keys=True, indent=2) + "\n")
    return 0


def _cmd_embed(args) -> int:
    c = read_container(args.input)
    cm = compute_costmap(c, WindowMode(args.mode), _params(args))
    pm = solve_lambda(cm, args.payload, _params(args))
    write_container(simulate(pm, c, args.seed), args.output)
    return 0


def _cmd_synth(args) -> int:
    c = synth_cover(args.pattern, args.height, args.width, args.quality,
                    args.seed, args.amplitude)
    write_container(c, args.output)
    return 0


def _cmd_sweep(args) -> int:
    try:
        qualities = [int(x) for x in args.qualities.split(",")]
    except ValueError:
        raise ValueError(
            f"--qualities must be comma-separated integers, got {args.qualities!r}"
        ) from None
    rows = quality_sweep(args.pattern, qualities, args.height, args.width,
                         args.seed, args.amplitude, _params(args))
    write_csv(rows, args.output,
              ("quality", "mean_block_cost_fixed", "mean_abs_block_diff"))
    return 0


def _cmd_render(args) -> int:
    write_grid(read_grid_tsv(args.input), args.output, "pgm")
    return 0


_COMMANDS = {
    "costmap": _cmd_costmap,
    "blockcost": _cmd_blockcost,
    "compare": _cmd_compare,
    "embed": _cmd_embed,
    "synth": _cmd_synth,
    "sweep": _cmd_sweep,
    "render": _cmd_render,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 1
    try:
        return _COMMANDS[args.command](args)
    except (ContainerError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
