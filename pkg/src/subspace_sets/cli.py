"""Command-line interface.

Subcommands: ``sts`` (sentence-similarity evaluation), ``retrieve`` (set
expansion evaluation), ``gen-setops`` (derived union/intersection datasets)
and ``algebra`` (subspace set operations on files).

Exit codes are a stable contract: 0 success, 2 usage error, 3 data or parse
error, 4 numerical failure.
"""

from __future__ import annotations

import argparse
import sys

from . import retrieval
from .algebra import (
    DEFAULT_ALPHA,
    complement,
    intersection,
    read_subspace,
    read_vectors,
    soft_membership,
    span,
    union,
    write_subspace,
)
from .embeddings import EmbeddingFormat
from .errors import (
    InvalidCombination,
    NumericalFailure,
    SubspaceSetsError,
)
from .evaluation import SimilarityMethod, run_retrieval, run_sts
from .linalg import RANK_REL_TOL
from .retrieval import ExpansionMethod, SetOp
from .similarity import Weighting

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_NUMERICAL = 4

_WEIGHTING_FLAGS = {"uniform": Weighting.UNIFORM, "l2": Weighting.L2_NORM}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="subspace-sets",
        description="Quantum-logic set operations on word embeddings, "
                    "with sentence-similarity and set-expansion harnesses.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sts = sub.add_parser("sts", help="score sentence pairs and correlate with gold")
    sts.add_argument("--pairs", required=True)
    sts.add_argument("--embeddings", required=True,
                     help="token-embedding file (one sentence per line)")
    sts.add_argument("--method", required=True,
                     choices=[m.value for m in SimilarityMethod])
    sts.add_argument("--metric", default="F", choices=["P", "R", "F"])
    sts.add_argument("--weighting", default="uniform",
                     choices=sorted(_WEIGHTING_FLAGS))
    sts.add_argument("--out", required=True)

    ret = sub.add_parser("retrieve", help="evaluate set expansion over a dataset")
    ret.add_argument("--dataset", required=True)
    ret.add_argument("--embeddings", required=True)
    ret.add_argument("--format", required=True,
                     choices=[f.value for f in EmbeddingFormat])
    ret.add_argument("--method", required=True,
                     choices=[m.value for m in ExpansionMethod])
    ret.add_argument("--k", action="append", type=int, dest="ks",
                     help="recall cutoff; repeatable (default: 100 and 1000)")
    ret.add_argument("--out", required=True)

    gen = sub.add_parser("gen-setops", help="derive union/intersection sets")
    gen.add_argument("--dataset", required=True)
    gen.add_argument("--op", required=True, choices=[o.value for o in SetOp])
    gen.add_argument("--seed", type=int, required=True)
    gen.add_argument("--count", type=int, default=100)
    gen.add_argument("--union-cap", type=int, default=50)
    gen.add_argument("--intersect-min", type=int, default=10)
    gen.add_argument("--out", required=True)

    alg = sub.add_parser("algebra", help="subspace set operations on files")
    alg_sub = alg.add_subparsers(dest="algebra_op", required=True)

    alg_span = alg_sub.add_parser("span", help="span of a vector file")
    alg_span.add_argument("--vectors", required=True)
    alg_span.add_argument("--rel-tol", type=float, default=RANK_REL_TOL)
    alg_span.add_argument("--out", required=True)

    for name, help_text in (("union", "sum space of two subspace files"),
                            ("intersect", "intersection of two subspace files")):
        p = alg_sub.add_parser(name, help=help_text)
        p.add_argument("--a", required=True)
        p.add_argument("--b", required=True)
        if name == "intersect":
            p.add_argument("--alpha", type=float, default=DEFAULT_ALPHA)
        p.add_argument("--out", required=True)

    alg_comp = alg_sub.add_parser("complement", help="orthogonal complement")
    alg_comp.add_argument("--a", required=True)
    alg_comp.add_argument("--out", required=True)

    alg_mem = alg_sub.add_parser("member", help="print soft membership score")
    alg_mem.add_argument("--vector", required=True,
                         help="vector file; the first vector is used")
    alg_mem.add_argument("--subspace", required=True)

    return parser


def _run_algebra(args) -> int:
    if args.algebra_op == "span":
        result = span(read_vectors(args.vectors), rel_tol=args.rel_tol)
        write_subspace(result, args.out)
    elif args.algebra_op == "union":
        result = union(read_subspace(args.a), read_subspace(args.b))
        write_subspace(result, args.out)
    elif args.algebra_op == "intersect":
        result = intersection(read_subspace(args.a), read_subspace(args.b),
                              alpha=args.alpha)
        write_subspace(result, args.out)
    elif args.algebra_op == "complement":
        result = complement(read_subspace(args.a))
        write_subspace(result, args.out)
    elif args.algebra_op == "member":
        vector = read_vectors(args.vector)[0]
        score = soft_membership(vector, read_subspace(args.subspace))
        print(f"{score:.9f}")
    return EXIT_OK


def _dispatch(args) -> int:
    if args.command == "sts":
        report = run_sts(
            args.pairs,
            args.embeddings,
            SimilarityMethod(args.method),
            metric=args.metric,
            weighting=_WEIGHTING_FLAGS[args.weighting],
            out_dir=args.out,
        )
        print(f"spearman_rho\t{report.spearman_rho:.9f}")
        print(f"n_pairs\t{report.n_pairs}")
        return EXIT_OK
    if args.command == "retrieve":
        ks = args.ks if args.ks else [100, 1000]
        rows = run_retrieval(
            args.dataset,
            args.embeddings,
            EmbeddingFormat(args.format),
            ExpansionMethod(args.method),
            ks=ks,
            out_dir=args.out,
        )
        macro = rows[-1]
        recalls = "\t".join(f"{r:.9f}" for r in macro.recalls)
        print(f"{macro.set_name}\t{macro.method}\t{recalls}\t{macro.median:g}")
        return EXIT_OK
    if args.command == "gen-setops":
        sets = retrieval.load_word_sets(args.dataset)
        derived = retrieval.gen_derived_sets(
            sets, SetOp(args.op), seed=args.seed, count=args.count,
            union_cap=args.union_cap, intersect_min=args.intersect_min,
        )
        retrieval.save_word_sets(derived, args.out)
        print(f"wrote {len(derived)} sets to {args.out}")
        return EXIT_OK
    if args.command == "algebra":
        return _run_algebra(args)
    return EXIT_USAGE


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _dispatch(args)
    except InvalidCombination as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericalFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (SubspaceSetsError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
