"""Command-line surface.

Subcommands: ``build`` (manifest to graph file), ``memcmp`` (memory table),
``check-alpha`` (alpha-equivalence verdict), ``stats`` (corpus statistics)
and ``gen`` (synthetic labeled corpus). Exit codes: 0 success, 1 the
check-alpha verdict is DIFFERENT, 2 input error.
"""

from __future__ import annotations

import argparse
import sys

from .canonical import alpha_equivalent
from .encoding import EmptyCorpus
from .genprog import ConfigError, GenConfig, generate_corpus
from .graphs import ASG, ASG_PLUS, VARIANTS
from .lexer import LexError
from .parser import ParseError
from .pipeline import (
    ENCODING_3PROP, ENCODING_CODE, ManifestError, MissingTokenCounts,
    SchemaError, build_corpus, memcmp_table, read_graph_file, stats_block,
)
from .resolver import DuplicateDeclaration

_INPUT_ERRORS = (EmptyCorpus, ManifestError, SchemaError, MissingTokenCounts,
                 ConfigError, LexError, ParseError, DuplicateDeclaration,
                 OSError, ValueError)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="codegraphs",
        description="Build and inspect MiniC code graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    build = sub.add_parser("build", help="build graph records from a manifest")
    build.add_argument("manifest")
    build.add_argument("--variant", required=True, choices=VARIANTS)
    build.add_argument("--normalize", choices=("flat", "bucketed"),
                       default="flat")
    build.add_argument("--keep-literals", action="store_true")
    build.add_argument("--encoding", choices=(ENCODING_3PROP, ENCODING_CODE),
                       default=ENCODING_3PROP)
    build.add_argument("--out", required=True)
    build.add_argument("--report", default=None)
    build.add_argument("--vocab", default=None)

    memcmp = sub.add_parser("memcmp", help="per-sample memory comparison")
    memcmp.add_argument("graphfile")
    memcmp.add_argument("--embed-dim", type=int, default=100)
    memcmp.add_argument("--bytes-per-scalar", type=int, default=4)

    check = sub.add_parser("check-alpha",
                           help="decide alpha-equivalence of two sources")
    check.add_argument("file_a")
    check.add_argument("file_b")
    check.add_argument("--variant", choices=(ASG, ASG_PLUS), default=ASG)
    check.add_argument("--normalize", choices=("flat", "bucketed"),
                       default="flat")

    stats = sub.add_parser("stats", help="corpus statistics")
    stats.add_argument("graphfile")

    gen = sub.add_parser("gen", help="generate a synthetic labeled corpus")
    gen.add_argument("--seed", type=int, required=True)
    gen.add_argument("--count", type=int, required=True)
    gen.add_argument("--flaw-rate", type=float, required=True)
    gen.add_argument("--max-stmts", type=int, default=12)
    gen.add_argument("--rename-salt", type=int, default=0)
    gen.add_argument("--out-dir", required=True)
    return parser


def _cmd_build(args) -> int:
    summary = build_corpus(args.manifest, args.variant, args.out,
                           report=args.report, vocab=args.vocab,
                           normalize=args.normalize,
                           keep_literals=args.keep_literals,
                           encoding=args.encoding)
    print(f"built {summary.built} graphs ({summary.failed} failed) -> {summary.out}")
    if summary.failed:
        print(f"diagnostics -> {summary.report}")
    if summary.built == 0:
        print("error: every sample failed", file=sys.stderr)
        return 2
    return 0


def _cmd_memcmp(args) -> int:
    records = read_graph_file(args.graphfile)
    print(memcmp_table(records, args.embed_dim, args.bytes_per_scalar))
    return 0


def _cmd_check_alpha(args) -> int:
    with open(args.file_a, encoding="utf-8") as fh:
        src_a = fh.read()
    with open(args.file_b, encoding="utf-8") as fh:
        src_b = fh.read()
    same = alpha_equivalent(src_a, src_b, args.variant, args.normalize)
    print("EQUIVALENT" if same else "DIFFERENT")
    return 0 if same else 1


def _cmd_stats(args) -> int:
    print(stats_block(read_graph_file(args.graphfile)))
    return 0


def _cmd_gen(args) -> int:
    cfg = GenConfig(seed=args.seed, sample_count=args.count,
                    flaw_rate=args.flaw_rate, max_stmts=args.max_stmts,
                    rename_salt=args.rename_salt)
    manifest, paths = generate_corpus(cfg, args.out_dir)
    print(f"wrote {len(paths)} samples, manifest -> {manifest}")
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    handler = {
        "build": _cmd_build,
        "memcmp": _cmd_memcmp,
        "check-alpha": _cmd_check_alpha,
        "stats": _cmd_stats,
        "gen": _cmd_gen,
    }[args.command]
    try:
        return handler(args)
    except _INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
