"""Command line interface.

Exit codes: 0 success, 1 comparison mismatch or partial benchmark failure,
2 parse or validation error, 3 permutation/oracle cap exceeded, 4 generation
failure.  The AMOCOUNT_PSI_CAP environment variable sets the default
permutation cap; --psi-cap overrides it.
"""

from __future__ import annotations

import argparse
import os
import sys
import time

from . import __version__
from .bench import make_instance, run_bench, run_pair_comparison
from .counting import DEFAULT_PERMUTATION_CAP, PermutationCapError, count_session
from .generators import GenConfig, GenerationError, gen_background, random_chordal_with_stats
from .instancefile import (
    InstanceDocument,
    InstanceFormatError,
    default_labels,
    load_instance,
    save_instance,
)
from .mec import (
    BackgroundKnowledge,
    InvalidInstanceError,
    MecInstance,
    PartiallyDirectedGraph,
    max_clique_knowledge,
    validate,
)
from .oracle import DEFAULT_ORACLE_CAP, OracleCapError, enumerate_amos

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INVALID = 2
EXIT_CAP = 3
EXIT_GENERATION = 4

PSI_CAP_ENV = "AMOCOUNT_PSI_CAP"


def _default_psi_cap() -> int:
    raw = os.environ.get(PSI_CAP_ENV)
    if raw is None:
        return DEFAULT_PERMUTATION_CAP
    try:
        return int(raw)
    except ValueError:
        print(f"warning: ignoring non-integer {PSI_CAP_ENV}={raw!r}", file=sys.stderr)
        return DEFAULT_PERMUTATION_CAP


def _int_list(raw: str) -> list[int]:
    return [int(x) for x in raw.split(",") if x.strip()]


def _print_stats(result, elapsed_ms):
    stats = result.stats
    err = sys.stderr
    print(f"time: {elapsed_ms:.3f} ms", file=err)
    print(f"count digits: {len(str(result.count))}", file=err)
    print(f"components: {len(stats.components)}", file=err)
    for c in stats.components:
        print(
            f"  vertices={c.vertices} cliques={c.maximal_cliques}"
            f" subproblems={c.distinct_subproblems}"
            f" (bound {2 * c.maximal_cliques - 1})",
            file=err,
        )
    print(f"lbfs sweeps: {stats.lbfs_calls}", file=err)
    print(f"clique permutation counts: {stats.phi_chain_evaluations}", file=err)
    print(f"prefix-free counts: {stats.phi_empty_evaluations}", file=err)
    print(f"consistency counts: {stats.psi_evaluations}", file=err)
    print(f"memo hits: {stats.memo_hits}", file=err)


def cmd_count(args) -> int:
    doc = load_instance(args.instance)
    t0 = time.perf_counter()
    result = count_session(doc.instance, psi_cap=args.psi_cap)
    elapsed = (time.perf_counter() - t0) * 1000.0
    print(result.count)
    if args.stats:
        _print_stats(result, elapsed)
    return EXIT_OK


def cmd_validate(args) -> int:
    doc = load_instance(args.instance)
    violations = validate(doc.instance)
    if violations:
        for v in violations:
            print(v, file=sys.stderr)
        return EXIT_INVALID
    print("ok")
    return EXIT_OK


def cmd_oracle(args) -> int:
    doc = load_instance(args.instance)
    amos = enumerate_amos(doc.instance.graph, doc.instance.knowledge, cap=args.oracle_cap)
    print(len(amos))
    if args.compare:
        engine = count_session(doc.instance, psi_cap=args.psi_cap).count
        if engine != len(amos):
            print(f"mismatch: engine={engine} oracle={len(amos)}", file=sys.stderr)
            return EXIT_MISMATCH
        print("engine agrees", file=sys.stderr)
    return EXIT_OK


def cmd_gen(args) -> int:
    g, info = random_chordal_with_stats(GenConfig(n=args.n, seed=args.seed))
    if args.k is not None:
        knowledge = gen_background(g, args.k, args.seed + 1)
    else:
        knowledge = BackgroundKnowledge.empty()
    graph = PartiallyDirectedGraph(args.n, g.edges(), ())
    instance = MecInstance(graph, knowledge)
    doc = InstanceDocument(
        labels=default_labels(args.n),
        instance=instance,
        metadata={
            "generator": "random-chordal",
            "seed": args.seed,
            "p": info["p"],
            "k": args.k,
            "clique_knowledge": max_clique_knowledge(instance),
            "engine_version": __version__,
        },
    )
    if args.out:
        save_instance(doc, args.out)
        print(args.out)
    else:
        from .instancefile import serialize_instance

        sys.stdout.write(serialize_instance(doc))
    return EXIT_OK


def cmd_bench(args) -> int:
    log = (lambda msg: print(msg, file=sys.stderr)) if args.verbose else None
    if args.table1:
        rows, failures = run_pair_comparison(
            _int_list(args.n_list),
            _int_list(args.k_list),
            args.pairs,
            args.seed,
            args.out,
            psi_cap=args.psi_cap,
            log=log,
        )
        print(f"{len(rows)} comparison rows -> {args.out}")
    else:
        records, _, failures = run_bench(
            _int_list(args.n_list),
            _int_list(args.k_list),
            args.reps,
            args.seed,
            args.out,
            psi_cap=args.psi_cap,
            log=log,
        )
        print(f"{len(records)} runs -> {args.out}")
    for f in failures:
        print(f"failed: {f}", file=sys.stderr)
    return EXIT_MISMATCH if failures else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="amocount",
        description="Exact counting of Markov-equivalent DAGs under directed background knowledge.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    cap_kwargs = dict(type=int, default=_default_psi_cap(), metavar="N")

    p = sub.add_parser("count", help="count an instance file exactly")
    p.add_argument("instance")
    p.add_argument("--stats", action="store_true", help="print session statistics to stderr")
    p.add_argument("--psi-cap", **cap_kwargs)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("validate", help="check an instance file")
    p.add_argument("instance")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("oracle", help="brute-force count a small instance")
    p.add_argument("instance")
    p.add_argument("--compare", action="store_true", help="also run the engine and compare")
    p.add_argument("--oracle-cap", type=int, default=DEFAULT_ORACLE_CAP, metavar="N")
    p.add_argument("--psi-cap", **cap_kwargs)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", help="generate a seeded instance file")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=None, help="clique knowledge target (omit for none)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="time seeded instances and write CSV")
    p.add_argument("--n-list", default="50,100,150,200,250,300", metavar="N1,N2,...")
    p.add_argument("--k-list", default="3,4,5,6,7", metavar="K1,K2,...")
    p.add_argument("--reps", type=int, default=3)
    p.add_argument("--pairs", type=int, default=10, help="rows in --table1 mode")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--table1", action="store_true", help="base-vs-grown knowledge comparison mode")
    p.add_argument("--psi-cap", **cap_kwargs)
    p.add_argument("--verbose", action="store_true")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InstanceFormatError, InvalidInstanceError, FileNotFoundError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID
    except (PermutationCapError, OracleCapError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CAP
    except GenerationError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_GENERATION


if __name__ == "__main__":
    sys.exit(main())
