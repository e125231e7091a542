"""Command line interface.

Exit codes are part of the contract:

* 0 success
* 1 unreadable or malformed input (file or JSON schema problems)
* 2 validation violations (well-formed input, ill-formed ADT)
* 3 shape or ordering refusals (bottom-up on a DAG, order file not
  defense-first)
* 4 enumeration cap exceeded without ``--force``
"""

from __future__ import annotations

import argparse
import re
import sys
from pathlib import Path

from .bdd import (
    OrderingError,
    bdd_bu,
    check_order,
    compile_adt,
    defense_first_order,
    load_order,
)
from .bench import aggregate_medians, run_suite, write_medians_csv, write_records_csv
from .bu import TreeShapeError, bu_pareto
from .gen import GenConfig, random_aadt
from .model import Aadt, AdtFormatError, load_aadt, serialize_aadt
from .naive import EnumerationCapError, naive_pareto
from .semiring import front_to_csv, front_to_json

EXIT_OK = 0
EXIT_FORMAT = 1
EXIT_INVALID = 2
EXIT_SHAPE = 3
EXIT_CAP = 4


def _err(message: str) -> None:
    print(message, file=sys.stderr)


def _load_valid(path: str) -> Aadt | int:
    """Load and validate; on failure report and return an exit code."""
    aadt = load_aadt(path)
    problems = aadt.validate()
    if problems:
        for p in problems:
            _err(p)
        return EXIT_INVALID
    return aadt


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def cmd_validate(args) -> int:
    aadt = load_aadt(args.file)
    problems = aadt.validate()
    if problems:
        for p in problems:
            _err(p)
        return EXIT_INVALID
    print("valid")
    return EXIT_OK


def cmd_analyze(args) -> int:
    got = _load_valid(args.file)
    if isinstance(got, int):
        return got
    aadt = got

    if args.algo == "naive":
        front = naive_pareto(aadt, force=args.force)
    elif args.algo == "bu":
        front = bu_pareto(aadt)
    else:
        if args.order is not None:
            order = load_order(args.order)
            check_order(aadt.adt, order, defense_first=True)
        else:
            order = defense_first_order(aadt.adt)
        mgr, ref = compile_adt(aadt.adt, order)
        front = bdd_bu(aadt, mgr, ref)
        _err(f"bdd nodes: {mgr.node_count(ref)}")

    _err(f"front size: {len(front)}")
    if args.format == "csv":
        _emit(front_to_csv(front), args.out)
    else:
        _emit(front_to_json(front) + "\n", args.out)
    return EXIT_OK


def cmd_gen(args) -> int:
    cfg = GenConfig(node_count=args.nodes, seed=args.seed, shape=args.shape)
    _emit(serialize_aadt(random_aadt(cfg)), args.out)
    return EXIT_OK


def cmd_bdd_dump(args) -> int:
    got = _load_valid(args.file)
    if isinstance(got, int):
        return got
    aadt = got
    if args.order is not None:
        order = load_order(args.order)
        check_order(aadt.adt, order, defense_first=True)
    else:
        order = defense_first_order(aadt.adt)
    mgr, ref = compile_adt(aadt.adt, order)
    _err(f"bdd nodes: {mgr.node_count(ref)}")
    _emit(mgr.to_dot(ref), args.dot)
    return EXIT_OK


def _parse_sizes(text: str) -> list[int]:
    m = re.fullmatch(r"(\d+)\.\.(\d+):(\d+)", text)
    if m is None:
        raise AdtFormatError(f"--sizes must look like LO..HI:STEP, got {text!r}")
    lo, hi, step = (int(g) for g in m.groups())
    if lo < 1 or hi < lo or step < 1:
        raise AdtFormatError(f"--sizes range {text!r} is empty or invalid")
    return list(range(lo, hi + 1, step))


def cmd_bench(args) -> int:
    algorithms = [a.strip() for a in args.algos.split(",") if a.strip()]
    records = run_suite(
        _parse_sizes(args.sizes), args.per_size, args.seed, args.timeout, algorithms
    )
    if args.out is None:
        import csv as _csv

        w = _csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(
            ["instance", "nodes", "shape", "algo", "seconds", "front_size", "bdd_nodes", "timed_out"]
        )
        for r in records:
            w.writerow(
                [
                    r.instance,
                    r.nodes,
                    r.shape,
                    r.algo,
                    r.seconds,
                    "" if r.front_size is None else r.front_size,
                    "" if r.bdd_nodes is None else r.bdd_nodes,
                    "true" if r.timed_out else "false",
                ]
            )
        return EXIT_OK
    write_records_csv(records, args.out)
    medians_path = Path(args.out).with_suffix(".medians.csv")
    write_medians_csv(aggregate_medians(records), medians_path)
    _err(f"wrote {args.out} and {medians_path}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="adtpareto",
        description="Pareto front analysis of attack-defense trees.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a JSON ADT against the model constraints")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("analyze", help="compute the Pareto front of an attributed ADT")
    p.add_argument("file")
    p.add_argument("--algo", required=True, choices=("naive", "bu", "bdd"))
    p.add_argument("--order", help="variable order file (bdd only), one step id per line")
    p.add_argument("--format", default="csv", choices=("csv", "json"))
    p.add_argument("--force", action="store_true", help="override the enumeration cap")
    p.add_argument("--out", help="output file (default: stdout)")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("gen", help="generate a random attributed ADT")
    p.add_argument("--nodes", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--shape", required=True, choices=("tree", "dag"))
    p.add_argument("--out", help="output file (default: stdout)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bdd", help="decision diagram tools")
    bdd_sub = p.add_subparsers(dest="bdd_command", required=True)
    p = bdd_sub.add_parser("dump", help="export the compiled diagram as Graphviz DOT")
    p.add_argument("file")
    p.add_argument("--dot", required=True, help="DOT output file")
    p.add_argument("--order", help="variable order file, one step id per line")
    p.set_defaults(func=cmd_bdd_dump)

    p = sub.add_parser("bench", help="benchmark the algorithms on generated instances")
    p.add_argument("--sizes", required=True, help="node counts as LO..HI:STEP")
    p.add_argument("--per-size", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--timeout", type=float, default=60.0)
    p.add_argument("--algos", required=True, help="comma list from naive,bu,bdd")
    p.add_argument("--out", help="records CSV; medians go to *.medians.csv")
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "order", None) is not None and getattr(args, "algo", "bdd") != "bdd":
        _err("error: --order only applies to --algo bdd")
        return EXIT_FORMAT
    try:
        return args.func(args)
    except OSError as e:
        _err(f"error: {e}")
        return EXIT_FORMAT
    except AdtFormatError as e:
        _err(f"error: {e}")
        return EXIT_FORMAT
    except (TreeShapeError, OrderingError) as e:
        _err(f"error: {e}")
        return EXIT_SHAPE
    except EnumerationCapError as e:
        _err(f"error: {e}")
        _err("hint: pass --force to analyze anyway")
        return EXIT_CAP
    except ValueError as e:
        # Bad argument values that argparse cannot see (unknown bench
        # algorithm, impossible generator configuration, ...).
        _err(f"error: {e}")
        return EXIT_FORMAT


if __name__ == "__main__":
    sys.exit(main())
