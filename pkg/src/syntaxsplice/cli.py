"""Command-line surface: validate / augment / stats / score.

Exit codes: 0 success, 1 validation or data error, 2 usage error.
Diagnostics go to stderr; data goes to files or stdout. The environment
variable SYNTAXSPLICE_LOG sets the log level.

Flags mirror SampleSpec one-to-one, so a manifest plus a command line fully
determines the output; --seed defaults to 0 and is never time-derived.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from .corpus import SampleSpec, export_dataset, load_corpus, sample_augmented
from .errors import SyntaxspliceError
from .evalkit import score_pairs_tsv
from .stats import constituent_length_histograms, render_report
from .treebank import ConstituentPolicy

log = logging.getLogger("syntaxsplice")


def _bool_flag(value: str) -> bool:
    if value in ("true", "false"):
        return value == "true"
    raise argparse.ArgumentTypeError(f"expected 'true' or 'false', got {value!r}")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="syntaxsplice",
        description="Augment a TTS corpus by label-matched constituent "
                    "substitution with aligned feature splicing.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_policy_flags(p):
        p.add_argument("--min-words", type=int, default=1)
        p.add_argument("--max-words", type=int, default=None)
        p.add_argument("--include-preterminals", type=_bool_flag, default=True,
                       metavar="{true,false}")
        p.add_argument("--labels", default=None,
                       help="comma-separated label allowlist")
        p.add_argument("--normalize-labels", action="store_true",
                       help="strip functional suffixes after '-' or '=' "
                            "when matching labels")

    v = sub.add_parser("validate", help="load a corpus and report diagnostics")
    v.add_argument("--manifest", required=True)
    add_policy_flags(v)

    a = sub.add_parser("augment", help="generate and export augmented examples")
    a.add_argument("--manifest", required=True)
    a.add_argument("--out", required=True)
    a.add_argument("--mode", choices=("random", "exhaustive"), default="random")
    a.add_argument("--count", type=int, default=None,
                   help="number of augmented examples (required in random mode)")
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--dedupe", type=_bool_flag, default=False,
                   metavar="{true,false}")
    a.add_argument("--workers", type=int, default=1)
    add_policy_flags(a)

    s = sub.add_parser("stats", help="constituent-length histograms of an export")
    s.add_argument("--manifest", required=True,
                   help="an output manifest produced by `augment`")
    s.add_argument("--format", choices=("tsv", "json"), default="tsv")

    sc = sub.add_parser("score", help="pooled error rate of ref/hyp pairs")
    sc.add_argument("--pairs", required=True,
                    help="TSV: utterance_id<TAB>reference<TAB>hypothesis")
    return parser


def _policy_from(args) -> ConstituentPolicy:
    allow = None
    if args.labels:
        allow = frozenset(x.strip() for x in args.labels.split(",") if x.strip())
    return ConstituentPolicy(
        include_preterminals=args.include_preterminals,
        min_words=args.min_words,
        max_words=args.max_words,
        label_allowlist=allow,
        normalize_labels=args.normalize_labels,
    )


def _cmd_validate(args) -> int:
    corpus = load_corpus(args.manifest, _policy_from(args))
    n_consts = sum(len(v) for v in corpus.constituents.values())
    print(f"{len(corpus)} records, {n_consts} constituents, "
          f"{len(corpus.label_index)} labels, "
          f"{corpus.universe().size} substitution tuples", file=sys.stderr)
    return 0


def _cmd_augment(args, parser) -> int:
    if args.mode == "random" and args.count is None:
        parser.error("--count is required with --mode random")
    policy = _policy_from(args)
    corpus = load_corpus(args.manifest, policy)
    spec = SampleSpec(
        target_count=args.count or 0,
        seed=args.seed,
        policy=policy,
        dedupe=args.dedupe,
        mode=args.mode,
    )
    stream = sample_augmented(corpus, spec, workers=args.workers)
    report = export_dataset(corpus, stream, args.out)
    log.info("exported %d original + %d augmented rows",
             report.n_original, report.n_augmented)
    print(json.dumps(report.to_dict()))
    return 0


def _cmd_stats(args) -> int:
    def rows():
        with open(args.manifest, encoding="utf-8") as fh:
            for line in fh:
                if line.strip():
                    yield json.loads(line)

    inserted, removed = constituent_length_histograms(rows())
    out = sys.stdout.buffer
    if args.format == "tsv":
        for h in (inserted, removed):
            out.write(f"# {h.kind} (total {h.total})\n".encode())
            out.write(render_report(h, "tsv"))
    else:
        payload = {
            h.kind: json.loads(render_report(h, "json"))
            for h in (inserted, removed)
        }
        out.write(json.dumps(payload, separators=(",", ":")).encode() + b"\n")
    out.flush()
    return 0


def _cmd_score(args) -> int:
    report, n = score_pairs_tsv(args.pairs)
    payload = report.to_dict()
    payload["utterances"] = n
    print(json.dumps(payload))
    return 0


def main(argv=None) -> int:
    logging.basicConfig(
        stream=sys.stderr,
        level=os.environ.get("SYNTAXSPLICE_LOG", "WARNING").upper(),
    )
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        if args.command == "validate":
            return _cmd_validate(args)
        if args.command == "augment":
            return _cmd_augment(args, parser)
        if args.command == "stats":
            return _cmd_stats(args)
        if args.command == "score":
            return _cmd_score(args)
    except SystemExit as exc:  # parser.error inside a subcommand
        return exc.code if isinstance(exc.code, int) else 2
    except SyntaxspliceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    raise AssertionError("unreachable")


def entrypoint():
    sys.exit(main())
