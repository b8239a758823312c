"""Command-line front end.

Exit codes for `solve`: 0 yes, 1 no, 2 unknown, 3 error.  `recognize`
exits 0 when the graph is in the class and 1 when it is not.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .errors import ClassViolation
from .harness import (
    ALGORITHMS,
    GENERATOR_CLASSES,
    bench,
    bench_text,
    check_class,
    dispatch,
    generate,
    run_algorithm,
    write_corpus_instance,
)
from .io import format_graph, format_witness, read_graph, write_graph, write_witness
from .recognizers import find_p4_hitting_set, find_vi_set, twin_partition
from .reductions import (
    MODE_CLUSTER,
    MODE_LINEAR_FOREST,
    build_3sat21_witness,
    build_x3c_witness,
    parse_3partition,
    parse_3sat21,
    parse_x3c,
    reduce_3partition,
    reduce_3sat21,
    reduce_x3c,
    solve_3sat21,
    solve_x3c,
)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="subiso",
        description="Subgraph isomorphism on classes excluding a fixed linear forest",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    ps = sub.add_parser("solve", help="decide whether the pattern embeds in the host")
    ps.add_argument("--host", required=True)
    ps.add_argument("--pattern", required=True)
    ps.add_argument("--algo", default="auto", choices=("auto",) + ALGORITHMS)
    ps.add_argument("--param", type=int, default=None, help="parameter k where needed")
    ps.add_argument(
        "--forbidden",
        default=None,
        help='excluded forest as path sizes, e.g. "5,4,3" (drives --algo auto)',
    )
    ps.add_argument("--seed", type=int, default=None)
    ps.add_argument("--repeats", type=int, default=8)
    ps.add_argument("--budget", type=int, default=None)
    ps.add_argument("--oracle-fallback", action="store_true")
    ps.add_argument("--json", action="store_true")
    ps.add_argument("--witness-out", default=None, help="write a found witness here")

    pr = sub.add_parser("recognize", help="test class membership")
    pr.add_argument("--graph", required=True)
    pr.add_argument("--class", dest="cls", required=True, choices=GENERATOR_CLASSES)
    pr.add_argument("--param", type=int, default=None)
    pr.add_argument("--json", action="store_true")

    pd = sub.add_parser("reduce", help="generate a hardness-reduction instance")
    pd.add_argument("--from", dest="source", required=True,
                    choices=("3partition", "x3c", "3sat21"))
    pd.add_argument("--input", required=True)
    pd.add_argument("--out-host", required=True)
    pd.add_argument("--out-pattern", required=True)
    pd.add_argument("--witness", default=None,
                    help="solve the source instance and write an embedding witness")
    pd.add_argument("--mode", default=MODE_LINEAR_FOREST,
                    choices=(MODE_LINEAR_FOREST, MODE_CLUSTER),
                    help="3-partition host shape")

    pg = sub.add_parser("gen", help="sample instances inside a class")
    pg.add_argument("--class", dest="cls", required=True, choices=GENERATOR_CLASSES)
    pg.add_argument("--size", type=int, required=True)
    pg.add_argument("--seed", type=int, required=True)
    pg.add_argument("--param", type=int, default=None)
    pg.add_argument("--planted", action="store_true")
    pg.add_argument("--out-host", default=None)
    pg.add_argument("--out-pattern", default=None)
    pg.add_argument("--out-dir", default=None, help="write a corpus here instead")
    pg.add_argument("--count", type=int, default=1)

    pb = sub.add_parser("bench", help="run algorithms over a corpus directory")
    pb.add_argument("--corpus", required=True)
    pb.add_argument("--algos", required=True,
                    help='comma list, parameters after a colon: "p4free,vi:4"')
    pb.add_argument("--seed", type=int, default=0)
    pb.add_argument("--repeats", type=int, default=8)
    pb.add_argument("--budget", type=int, default=None)
    pb.add_argument("--json", action="store_true")
    return parser


def _cmd_solve(args) -> int:
    g = read_graph(args.host)
    q = read_graph(args.pattern)
    if args.algo == "auto":
        if args.forbidden is None:
            print("--algo auto needs --forbidden", file=sys.stderr)
            return 3
        forbidden = [int(t) for t in args.forbidden.replace(",", " ").split()]
        result = dispatch(
            g,
            q,
            forbidden,
            seed=args.seed,
            repeats=args.repeats,
            budget=args.budget,
            oracle_fallback=args.oracle_fallback,
        )
    else:
        result = run_algorithm(
            args.algo,
            g,
            q,
            param=args.param,
            seed=args.seed,
            repeats=args.repeats,
            budget=args.budget,
        )
    if args.json:
        print(json.dumps(result.to_json_dict(), sort_keys=True, indent=2))
    else:
        print(f"answer: {result.answer}")
        print(f"algorithm: {result.algorithm}")
        if result.note:
            print(f"note: {result.note}")
        if result.embedding is not None:
            sys.stdout.write(format_witness(result.embedding))
    if result.embedding is not None and args.witness_out:
        write_witness(args.witness_out, result.embedding)
    return {"yes": 0, "no": 1, "unknown": 2}[result.answer]


def _cmd_recognize(args) -> int:
    g = read_graph(args.graph)
    member = check_class(g, args.cls, args.param)
    certificate: list[int] | None = None
    detail: dict = {}
    if args.cls == "vi" and member:
        found = find_vi_set(g, args.param if args.param is not None else 3)
        certificate = [v + 1 for v in found]
    elif args.cls == "hitting" and member:
        found = find_p4_hitting_set(g, args.param if args.param is not None else 3)
        certificate = [v + 1 for v in found]
    elif args.cls == "nd":
        detail["width"] = twin_partition(g).width
    if args.json:
        out = {"class": args.cls, "param": args.param, "member": member}
        if certificate is not None:
            out["certificate"] = certificate
        out.update(detail)
        print(json.dumps(out, sort_keys=True, indent=2))
    else:
        print(f"{args.cls}: {'yes' if member else 'no'}")
        if certificate:
            print("separator: " + " ".join(str(v) for v in certificate))
        if "width" in detail:
            print(f"twin classes: {detail['width']}")
    return 0 if member else 1


def _cmd_reduce(args) -> int:
    with open(args.input, "r", encoding="utf-8") as fh:
        text = fh.read()
    if args.source == "3partition":
        inst = parse_3partition(text)
        host, pattern = reduce_3partition(inst, args.mode)
        if args.witness:
            print("witness construction is not supported for 3partition",
                  file=sys.stderr)
            return 3
        witness = None
    elif args.source == "x3c":
        inst = parse_x3c(text)
        host, pattern = reduce_x3c(inst)
        witness = None
        if args.witness:
            cover = solve_x3c(inst)
            if cover is not None:
                witness = build_x3c_witness(inst, cover)
    else:
        f = parse_3sat21(text)
        host, pattern = reduce_3sat21(f)
        witness = None
        if args.witness:
            assignment = solve_3sat21(f)
            if assignment is not None:
                witness = build_3sat21_witness(f, assignment)
    write_graph(args.out_host, host, comment=f"host from {args.source}")
    write_graph(args.out_pattern, pattern, comment=f"pattern from {args.source}")
    print(f"host: {host.n} vertices, {host.m} edges -> {args.out_host}")
    print(f"pattern: {pattern.n} vertices, {pattern.m} edges -> {args.out_pattern}")
    if args.witness:
        if witness is None:
            print("source instance has no solution; witness not written")
            return 1
        write_witness(args.witness, witness)
        print(f"witness -> {args.witness}")
    return 0


def _cmd_gen(args) -> int:
    rng = np.random.default_rng(args.seed)
    if args.out_dir:
        for i in range(args.count):
            host, pattern, expected = generate(
                args.cls, args.size, rng, planted=args.planted, param=args.param
            )
            name = f"{args.cls}-{args.size}-{args.seed}-{i:04d}"
            meta = {
                "class": args.cls,
                "param": args.param,
                "planted": args.planted,
                "expected": expected,
                "seed": args.seed,
                "index": i,
            }
            write_corpus_instance(args.out_dir, name, host, pattern, meta)
        print(f"wrote {args.count} instances to {args.out_dir}")
        return 0
    host, pattern, _ = generate(
        args.cls, args.size, rng, planted=args.planted, param=args.param
    )
    if args.out_host:
        write_graph(args.out_host, host)
    if args.out_pattern:
        write_graph(args.out_pattern, pattern)
    if not args.out_host and not args.out_pattern:
        sys.stdout.write(format_graph(host, comment="host"))
        sys.stdout.write(format_graph(pattern, comment="pattern"))
    return 0


def _cmd_bench(args) -> int:
    specs = [s for s in args.algos.split(",") if s]
    report = bench(
        args.corpus,
        specs,
        seed=args.seed,
        repeats=args.repeats,
        budget=args.budget,
    )
    if args.json:
        print(json.dumps(report, sort_keys=True, indent=2))
    else:
        sys.stdout.write(bench_text(report))
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses exit code 2, which solve reserves for "unknown"
        code = exc.code if isinstance(exc.code, int) else 0
        return 0 if code == 0 else 3
    handlers = {
        "solve": _cmd_solve,
        "recognize": _cmd_recognize,
        "reduce": _cmd_reduce,
        "gen": _cmd_gen,
        "bench": _cmd_bench,
    }
    try:
        return handlers[args.command](args)
    except ClassViolation as exc:
        print(f"class violation: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
