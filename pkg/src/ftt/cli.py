"""Command line entry point: ``ftt bench``, ``ftt contract`` and ``ftt slope``."""

from __future__ import annotations

import argparse
import logging
import sys

from ftt.bench import (
    CsvSink,
    ExperimentConfig,
    crossover,
    fit_slope,
    read_csv,
    run_experiment,
    sparsity_grid,
)
from ftt.contract import contract_pair
from ftt.errors import FttError
from ftt.textio import read_sparse, write_sparse

EXIT_VALIDATION = 2


def _shape(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(s) for s in text.replace(",", " ").split())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad shape {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ftt", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bench", help="time the sparse kernel across a sparsity grid")
    b.add_argument("--experiment", choices=["matmul", "mpo", "pepo", "custom"], required=True)
    b.add_argument("--subscripts")
    b.add_argument("--shape-a", type=_shape, help='e.g. "12,12,12,12"')
    b.add_argument("--shape-b", type=_shape)
    b.add_argument("--sparsity-from", type=float, default=0.5)
    b.add_argument("--sparsity-to", type=float, default=1e-3)
    b.add_argument("--grid-points", type=int, default=8)
    b.add_argument("--seeds", type=int, default=3)
    b.add_argument("--seed", type=int, default=0, help="base seed")
    b.add_argument("--dense-control", action="store_true")
    b.add_argument("--oracle-check", action="store_true")
    b.add_argument("--sweep-one-side", action="store_true",
                   help="hold operand b fully dense (stored sparse)")
    b.add_argument("--out", required=True)

    c = sub.add_parser("contract", help="contract two .sten tensors")
    c.add_argument("--spec", required=True)
    c.add_argument("--a", required=True)
    c.add_argument("--b", required=True)
    c.add_argument("--out", required=True)

    s = sub.add_parser("slope", help="fit log-log slopes of a bench CSV")
    s.add_argument("--in", dest="infile", required=True)
    s.add_argument("--column", default="time_sparse_s")
    return parser


def _bench(args) -> int:
    cfg = ExperimentConfig(
        experiment=args.experiment,
        sparsity_grid=sparsity_grid(args.sparsity_from, args.sparsity_to, args.grid_points),
        subscripts=args.subscripts,
        shape_a=args.shape_a,
        shape_b=args.shape_b,
        seeds=args.seeds,
        include_dense_control=args.dense_control,
        oracle_check=args.oracle_check,
        sweep_one_side=args.sweep_one_side,
        base_seed=args.seed,
    )
    with open(args.out, "w", newline="", encoding="utf-8") as fh:
        run_experiment(cfg, on_row=CsvSink(fh))
    return 0


def _contract(args) -> int:
    a = read_sparse(args.a)
    b = read_sparse(args.b)
    write_sparse(contract_pair(a, b, args.spec), args.out)
    return 0


def _slope(args) -> int:
    rows = read_csv(args.infile)
    print(f"slope {args.column}: {fit_slope(rows, y=args.column):.4f}")
    cross = crossover(rows)
    if cross is not None:
        print(f"crossover sparsity: {cross:.6g}")
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    handler = {"bench": _bench, "contract": _contract, "slope": _slope}[args.command]
    try:
        return handler(args)
    except FttError as exc:
        print(f"ftt: error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"ftt: error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except KeyboardInterrupt:
        return 130


if __name__ == "__main__":
    sys.exit(main())
